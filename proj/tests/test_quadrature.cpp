#include <doctest.h>

#include <cmath>

#include "wpmix/errors.hpp"
#include "wpmix/quadrature.hpp"

using namespace wpmix;

TEST_SUITE("quadrature") {

TEST_CASE("polynomials are exact") {
    auto r = integrate([](double x) { return x * x; }, 0.0, 1.0);
    CHECK(r.value == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    r = integrate([](double x) { return 3.0 * x * x - 2.0 * x + 5.0; }, -1.0, 2.0);
    CHECK(r.value == doctest::Approx(21.0).epsilon(1e-14));
}

TEST_CASE("oscillatory integrand") {
    auto r = integrate([](double x) { return std::sin(x); }, 0.0,
                       2.0 * 3.14159265358979323846);
    CHECK(std::fabs(r.value) < 1e-12);
    r = integrate([](double x) { return std::sin(10.0 * x); }, 0.0, 1.0);
    CHECK(r.value == doctest::Approx((1.0 - std::cos(10.0)) / 10.0).epsilon(1e-12));
}

TEST_CASE("integrable endpoint singularity") {
    auto r = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-7));
    r = integrate([](double x) { return std::log(x); }, 0.0, 1.0);
    CHECK(r.value == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("half line") {
    auto r = integrate_to_inf([](double x) { return std::exp(-x); }, 0.0);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-10));
    r = integrate_to_inf([](double x) { return std::exp(-x * x); }, 0.0);
    CHECK(r.value == doctest::Approx(std::sqrt(3.14159265358979323846) / 2.0).epsilon(1e-10));
    // shifted lower endpoint
    r = integrate_to_inf([](double x) { return std::exp(-(x - 2.0)); }, 2.0);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-10));
    // heavy tail
    r = integrate_to_inf([](double x) { return 1.0 / (x * x); }, 1.0);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("error estimate brackets the truth") {
    auto r = integrate([](double x) { return std::exp(x); }, 0.0, 1.0);
    CHECK(std::fabs(r.value - (std::exp(1.0) - 1.0)) <= r.error + 1e-15);
    CHECK(r.intervals >= 1);
}

TEST_CASE("interval budget exhaustion throws") {
    QuadOptions opt;
    opt.rel_tol = 1e-13;
    opt.max_intervals = 3;
    // genuinely hard at three intervals
    CHECK_THROWS_AS(
        integrate([](double x) { return std::sin(200.0 * x) / std::sqrt(x); }, 0.0,
                  1.0, opt),
        NumericError);
}

}  // TEST_SUITE
