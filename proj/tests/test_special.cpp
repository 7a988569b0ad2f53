#include <doctest.h>

#include <cmath>
#include <initializer_list>

#include "wpmix/special.hpp"

using namespace wpmix;

TEST_SUITE("special") {

TEST_CASE("regularized gamma against closed forms") {
    // shape 1 collapses to the exponential distribution
    for (double x : {0.1, 0.5, 1.0, 3.0, 10.0})
        CHECK(reg_gamma_p(1.0, x) == doctest::Approx(1.0 - std::exp(-x)).epsilon(1e-12));
    // shape 1/2 is the error function
    for (double x : {0.2, 1.0, 2.5})
        CHECK(reg_gamma_p(0.5, x) == doctest::Approx(std::erf(std::sqrt(x))).epsilon(1e-12));
    // complementary pair
    for (double a : {0.3, 1.0, 4.5})
        for (double x : {0.2, 1.7, 9.0})
            CHECK(reg_gamma_p(a, x) + reg_gamma_q(a, x) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("regularized beta against closed forms") {
    for (double x : {0.1, 0.45, 0.9}) {
        CHECK(reg_beta(1.0, 1.0, x) == doctest::Approx(x).epsilon(1e-12));
        // I_x(1, b) = 1 - (1-x)^b
        CHECK(reg_beta(1.0, 3.0, x) ==
              doctest::Approx(1.0 - std::pow(1.0 - x, 3.0)).epsilon(1e-12));
        // arcsine law
        CHECK(reg_beta(0.5, 0.5, x) ==
              doctest::Approx(2.0 / 3.14159265358979323846 * std::asin(std::sqrt(x)))
                  .epsilon(1e-10));
    }
    CHECK(reg_beta(2.0, 2.0, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("log beta") {
    CHECK(log_beta(2.0, 3.0) == doctest::Approx(std::log(1.0 / 12.0)).epsilon(1e-12));
    CHECK(log_beta(0.5, 0.5) == doctest::Approx(std::log(3.14159265358979323846)).epsilon(1e-12));
}

TEST_CASE("cdf and quantile round trips") {
    for (double p : {0.001, 0.05, 0.3, 0.7, 0.95, 0.999}) {
        CHECK(gamma_cdf(2.0, 0.5, gamma_quantile(2.0, 0.5, p)) ==
              doctest::Approx(p).epsilon(1e-9));
        CHECK(gamma_cdf(0.3, 2.0, gamma_quantile(0.3, 2.0, p)) ==
              doctest::Approx(p).epsilon(1e-9));
        CHECK(beta_cdf(1.5, 2.5, beta_quantile(1.5, 2.5, p)) ==
              doctest::Approx(p).epsilon(1e-9));
    }
    // rate scaling: Gamma(1, rate) is Exp(rate)
    CHECK(gamma_cdf(1.0, 2.0, 0.7) == doctest::Approx(1.0 - std::exp(-1.4)).epsilon(1e-12));
}

TEST_CASE("normal cdf reference values") {
    CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(normal_cdf(1.0) == doctest::Approx(0.8413447460685429).epsilon(1e-12));
    CHECK(normal_cdf(-1.0) == doctest::Approx(1.0 - 0.8413447460685429).epsilon(1e-12));
    CHECK(normal_cdf(4.0) == doctest::Approx(0.9999683287581669).epsilon(1e-12));
}

TEST_CASE("clamp01") {
    CHECK(clamp01(-0.5) == 0.0);
    CHECK(clamp01(0.25) == 0.25);
    CHECK(clamp01(1.5) == 1.0);
}

}  // TEST_SUITE
