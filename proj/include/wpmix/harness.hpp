#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "wpmix/conditional.hpp"
#include "wpmix/laws.hpp"
#include "wpmix/limits.hpp"
#include "wpmix/quadrature.hpp"

namespace wpmix {

struct GofReport {
    std::string statistic;
    double value = 0.0;
    std::size_t size = 0;  // sample count or grid size
    double threshold = 0.0;
    bool pass = false;
};

GofReport make_report(std::string statistic, double value, std::size_t size,
                      double threshold);

// Right-continuous empirical distribution function.
class Ecdf {
public:
    explicit Ecdf(std::vector<double> xs);  // sorts its copy

    double operator()(double x) const;
    const std::vector<double>& sorted() const { return xs_; }

private:
    std::vector<double> xs_;
};

// D = sup over sample points of max(|F_hat(x) - F(x)|, |F_hat(x^-) - F(x)|).
double ks_distance(const std::vector<double>& xs,
                   const std::function<double(double)>& cdf);

double ks_distance_two_sample(const std::vector<double>& a,
                              const std::vector<double>& b);

double sup_gap_on_grid(const std::vector<double>& grid,
                       const std::function<double(double)>& f,
                       const std::function<double(double)>& g);

// n quantiles of `quantile` at probabilities equally spaced in [lo, hi].
std::vector<double> quantile_grid(const std::function<double(double)>& quantile,
                                  std::size_t n = 200, double lo = 0.001,
                                  double hi = 0.999);

// One level of a conditional-law-to-limit-law comparison: the conditional
// law at tau, rescaled by `scale`, against the limit cdf.
struct SweepPoint {
    double level = 0.0;  // schedule label (tau or a_n)
    double tau = 0.0;
    double scale = 0.0;
};

struct SweepRow {
    double level = 0.0, tau = 0.0, scale = 0.0, gap = 0.0;
};

// Per point: sup over a quantile grid of the limit law of
// |cond_cdf(z / scale) - limit_cdf(z)|.
std::vector<SweepRow> convergence_sweep(const RadialLaw& radial,
                                        const MixingLaw& mixing, double p,
                                        const std::vector<SweepPoint>& points,
                                        const LimitLaw& limit,
                                        QuadOptions opt = {},
                                        std::size_t grid_n = 200);

// Asymptotic ratio checks for the tail integrals behind the limit theorems.
// Each returns LHS/RHS where the two sides agree in the stated limit.

// Frechet regime: integral_{uz}^inf g(uy/r) r^-1 dF(r) over
// (gamma/u) sf(u) integral_z^inf g(y/r) r^(-gamma-2) dr.
double lemma1a_ratio(const RadialLaw& radial, const MixingLaw& mixing, double y,
                     double z, double u, QuadOptions opt = {});

// Weibull regime (endpoint 1): integral_{1-u(z-y)}^1 g((1-uz)/x) x^beta dF(x)
// over gamma sf(1-u) g(1-u) integral_0^{z-y} (z-t)^(alpha-1) t^(gamma-1) dt.
double lemma1b_ratio(const RadialLaw& radial, const MixingLaw& mixing, double y,
                     double z, double beta, double u, QuadOptions opt = {});

// Gumbel regime: vanish = (u w(u))^beta sf(mu u)/sf(u), and the ratio of
// integral_{u+z/w(u)}^{x_F} g(u/x) x^beta dF(x) to
// sf(u) g(1 - 1/(u w(u))) u^beta integral_z^inf s^(alpha-1) e^-s ds.
struct Lemma1cResult {
    double vanish = 0.0;
    double ratio = 0.0;
};

Lemma1cResult lemma1c_checks(const RadialLaw& radial, const MixingLaw& mixing,
                             double beta, double mu, double z, double u,
                             QuadOptions opt = {});

}  // namespace wpmix
