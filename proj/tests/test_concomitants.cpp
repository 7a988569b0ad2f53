#include <doctest.h>

#include <cmath>
#include <vector>

#include "wpmix/concomitants.hpp"
#include "wpmix/errors.hpp"
#include "wpmix/harness.hpp"
#include "wpmix/laws.hpp"
#include "wpmix/mixture.hpp"

using namespace wpmix;

namespace {

BivariateModel gauss_model(double rho) {
    // R W_p is exactly standard half-normal here, so X is standard normal
    return make_bivariate_model(rho, 2.0, 0.5, 0.5,
                                kotz3_radial(1.0, 0.0, 0.5, 2.0),
                                power_beta_mixing(2.0, 0.5, 0.5));
}

}  // namespace

TEST_SUITE("concomitants") {

TEST_CASE("top order selection") {
    const std::vector<double> xs{10.0, 30.0, 20.0};
    const std::vector<double> ys{100.0, 300.0, 200.0};
    auto idx = top_order_indices(xs, 2);
    REQUIRE(idx.size() == 2);
    CHECK(idx[0] == 1);
    CHECK(idx[1] == 2);
    auto top = concomitant_extract(xs, ys, 2);
    REQUIRE(top.size() == 2);
    CHECK(top[0] == 300.0);
    CHECK(top[1] == 200.0);
    CHECK(concomitant_extract(xs, ys, 1) == std::vector<double>{300.0});
    // ties resolve to the later index
    auto tie = top_order_indices({5.0, 5.0}, 1);
    CHECK(tie[0] == 1);
    CHECK_THROWS_AS(top_order_indices(xs, 0), ConfigError);
    CHECK_THROWS_AS(top_order_indices(xs, 3), ConfigError);
}

TEST_CASE("normalizing constants") {
    auto norm = normalizing_constants(gauss_model(0.0), 10000);
    CHECK(norm.center == 0.0);
    CHECK(norm.scale > 0.0);

    // threshold is the (1 - 1/n) marginal quantile, increasing in n
    auto lo = normalizing_constants(gauss_model(0.5), 1000);
    auto hi = normalizing_constants(gauss_model(0.5), 100000);
    CHECK(hi.threshold > lo.threshold);
    CHECK(lo.center == doctest::Approx(0.5 * lo.threshold).epsilon(1e-12));

    CHECK_THROWS_AS(normalizing_constants(gauss_model(0.5), 1), ConfigError);
}

TEST_CASE("gaussian case matches the classical normalization") {
    // w(s) = s for the half-normal radial, so the scale is exactly
    // sqrt(1 - rho^2) and the center is rho * Phi^-1(1 - 1/n)
    const double rho = 0.5;
    double prev = 0.0;
    for (double n : {1e4, 1e6, 1e8}) {
        auto norm = normalizing_constants(gauss_model(rho), std::size_t(n));
        CHECK(norm.scale ==
              doctest::Approx(std::sqrt(1.0 - rho * rho)).epsilon(1e-9));
        const double ratio =
            norm.center / (rho * std::sqrt(2.0 * std::log(n)));
        CHECK(ratio > prev);  // climbs toward 1 from below
        CHECK(ratio < 1.0);
        prev = ratio;
    }
    CHECK(prev > 0.9);
}

TEST_CASE("limit law of a normalized concomitant") {
    CHECK(eta_limit_cdf(1.0, 2.0, 0.5, 0.0) == doctest::Approx(0.5));
    // symmetric signs make the law symmetric
    for (double x : {0.3, 1.0, 2.5}) {
        CHECK(eta_limit_cdf(1.5, 2.0, 0.5, x) +
                  eta_limit_cdf(1.5, 2.0, 0.5, -x) ==
              doctest::Approx(1.0).epsilon(1e-10));
    }
    // alpha=1, p=1: magnitude ~ Exp(1)
    CHECK(eta_limit_cdf(1.0, 1.0, 0.5, 1.0) ==
          doctest::Approx(1.0 - 0.5 * std::exp(-1.0)).epsilon(1e-10));
    CHECK(eta_limit_cdf(1.0, 2.0, 0.5, 1.0) ==
          doctest::Approx(1.0 - 0.5 * std::exp(-0.5)).epsilon(1e-10));
    // all-positive signs put no mass below zero
    CHECK(eta_limit_cdf(1.0, 1.0, 1.0, -0.5) == 0.0);
    CHECK(eta_limit_cdf(1.0, 1.0, 1.0, 1.0) ==
          doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-10));
    CHECK_THROWS_AS(eta_limit_cdf(0.0, 1.0, 0.5, 1.0), ConfigError);
}

TEST_CASE("limit law of the top order statistics") {
    CHECK(orderstat_limit_cdf(1, 0.0) == doctest::Approx(std::exp(-1.0)));
    CHECK(orderstat_limit_cdf(2, 0.0) == doctest::Approx(2.0 * std::exp(-1.0)));
    double prev = 0.0;
    for (int i = -3; i <= 6; ++i) {
        const double v = orderstat_limit_cdf(1, double(i));
        CHECK(v > prev);
        prev = v;
    }
    // lower ranks sit stochastically higher
    CHECK(orderstat_limit_cdf(2, 0.7) > orderstat_limit_cdf(1, 0.7));
    CHECK_THROWS_AS(orderstat_limit_cdf(0, 0.0), ConfigError);
}

TEST_CASE("regime guard") {
    auto model = make_bivariate_model(0.5, 1.0, 0.5, 0.5,
                                      kotz3_radial(1, 0, 1, 1),
                                      beta_mixing(1.0, 1.0));
    ConcomitantExperiment exp;
    exp.model = model;
    exp.n = 100;
    exp.k = 1;
    exp.reps = 2;
    exp.seed = 5;
    CHECK_THROWS_AS(run_concomitant_experiment(exp), ConfigError);
    exp.model.rho = 0.0;  // p = 1 is fine without coupling
    CHECK_NOTHROW(run_concomitant_experiment(exp));
}

TEST_CASE("single position runs track the maximum") {
    ConcomitantExperiment exp;
    exp.model = gauss_model(0.4);
    exp.n = 500;
    exp.k = 1;
    exp.reps = 50;
    exp.seed = 9;
    auto run = run_concomitant_experiment(exp);
    REQUIRE(run.eta.size() == 1);
    CHECK(run.eta_max == run.eta[0]);
    CHECK(run.x_top_norm.size() == 50);
    REQUIRE(run.x_order.size() == 1);
    // raw top coordinates sit above the threshold most of the time; at
    // minimum they are finite and ordered consistently with the eta rows
    for (std::size_t rep = 0; rep < 50; ++rep)
        CHECK(std::isfinite(run.x_order[0][rep]));
}

TEST_CASE("redrawn concomitants match the direct ones") {
    // the concomitant of a top order statistic, given its x, follows the
    // exact conditional law; regeneration from that law must match in
    // distribution position by position
    ConcomitantExperiment exp;
    exp.model = make_bivariate_model(0.5, 2.0, 0.5, 0.5,
                                     kotz3_radial(1.0, 0.0, 0.5, 8.0),
                                     beta_mixing(1.0, 1.0));
    exp.n = 10000;
    exp.k = 2;
    exp.reps = 5000;
    exp.seed = 11;
    auto run = run_concomitant_experiment(exp);
    auto regen = regenerate_concomitants(exp, run);
    REQUIRE(regen.size() == 2);
    for (std::size_t pos = 0; pos < 2; ++pos) {
        const double ks = ks_distance_two_sample(run.eta[pos], regen[pos]);
        CHECK(ks < 0.035);
    }
}

TEST_CASE("top coordinate decouples from its concomitant") {
    // rho = 0: the concomitant is independent of the order statistic, and
    // the normalized maximum follows the top order-statistic limit
    ConcomitantExperiment exp;
    exp.model = make_bivariate_model(0.0, 2.0, 0.5, 0.5,
                                     kotz3_radial(1.0, 0.0, 0.5, 4.0),
                                     beta_mixing(1.0, 1.0));
    exp.n = 100000;
    exp.k = 1;
    exp.reps = 2500;
    exp.seed = 13;
    auto run = run_concomitant_experiment(exp);
    CHECK(std::fabs(pearson_correlation(run.x_top_norm, run.eta[0])) < 0.05);
    const double ks = ks_distance(
        run.x_top_norm, [](double x) { return orderstat_limit_cdf(1, x); });
    CHECK(ks < 0.05);
}

TEST_CASE("correlation helper") {
    CHECK(pearson_correlation({1.0, 2.0, 3.0}, {2.0, 4.0, 6.0}) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pearson_correlation({1.0, 2.0, 3.0}, {3.0, 2.0, 1.0}) ==
          doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(std::fabs(pearson_correlation({1.0, 2.0, 3.0, 4.0},
                                        {1.0, -1.0, -1.0, 1.0})) < 1e-12);
    CHECK_THROWS_AS(pearson_correlation({1.0}, {2.0}), ConfigError);
}

}  // TEST_SUITE
