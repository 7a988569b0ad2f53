#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "wpmix/mixture.hpp"

namespace wpmix {

// Normalization for concomitants of top order statistics: threshold is the
// (1 - 1/n)-quantile b of the first-coordinate marginal, center = rho * b,
// scale = (1 - rho^p)^(1/p) * b / (b * w(b))^(1/p) with w the radial
// scaling function (Gumbel regime only).
struct NormalizingConstants {
    double threshold = 0.0;
    double scale = 0.0;
    double center = 0.0;
};

NormalizingConstants normalizing_constants(const BivariateModel& model,
                                           std::size_t n);

// Indices of the k largest xs, descending; on ties the later index wins,
// equivalent to a stable ascending sort read from the top.
std::vector<std::size_t> top_order_indices(const std::vector<double>& xs,
                                           std::size_t k);

// y-partners of the k largest xs, descending by x-rank.
std::vector<double> concomitant_extract(const std::vector<double>& xs,
                                        const std::vector<double>& ys,
                                        std::size_t k);

// Limit law of a normalized concomitant: sign q2 times a magnitude whose
// p-th power is Gamma(alpha, rate 1/p).
double eta_limit_cdf(double alpha, double p, double q2, double x);

// Limit law of the rank-th largest value under Gumbel normalization,
// exp(-t) * sum_{j<rank} t^j / j! with t = e^-x.
double orderstat_limit_cdf(std::size_t rank, double x);

struct ConcomitantExperiment {
    BivariateModel model;
    std::size_t n = 0;     // pairs per replication
    std::size_t k = 1;     // top order statistics tracked
    std::size_t reps = 1;
    std::uint64_t seed = 0;
};

struct ConcomitantRun {
    NormalizingConstants norm;
    // eta[pos][rep]: normalized concomitant of the (pos+1)-th largest x
    std::vector<std::vector<double>> eta;
    std::vector<double> eta_max;     // per rep, max over the k positions
    std::vector<double> x_top_norm;  // per rep, w(b)(x_max - b)
    // x_order[pos][rep]: raw top-k first coordinates, kept for regeneration
    std::vector<std::vector<double>> x_order;
};

ConcomitantRun run_concomitant_experiment(const ConcomitantExperiment& exp);

// Redraws each concomitant from the exact conditional law given the observed
// top-k first coordinates; same normalization as the direct run.
std::vector<std::vector<double>> regenerate_concomitants(
    const ConcomitantExperiment& exp, const ConcomitantRun& run);

double pearson_correlation(const std::vector<double>& a,
                           const std::vector<double>& b);

}  // namespace wpmix
