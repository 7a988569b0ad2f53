#include <doctest.h>

#include <cmath>
#include <vector>

#include "wpmix/concomitants.hpp"
#include "wpmix/errors.hpp"
#include "wpmix/geometry.hpp"
#include "wpmix/harness.hpp"
#include "wpmix/mixture.hpp"
#include "wpmix/random.hpp"

using namespace wpmix;

namespace {

WpMixtureModel identity_model(std::size_t d, std::vector<std::size_t> I,
                              double p, double q_i, double q_j) {
    return make_mixture_model(make_partition(d, std::move(I)), p,
                              Matrix::identity(d), kotz3_radial(1, 0, 1, 1),
                              beta_mixing(1.0, 1.5), q_i, q_j);
}

double block_norm(const MixtureBatch& b, const std::vector<std::size_t>& idx,
                  std::size_t s, double q) {
    std::vector<double> v(idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) v[k] = b.x[idx[k]][s];
    return lq_norm(v, q);
}

}  // namespace

TEST_SUITE("mixture") {

TEST_CASE("block norms recombine to the radius") {
    auto model = identity_model(4, {0, 2}, 1.7, 2.0, 1.0);
    RandomStream rng(31, "mix", 0);
    auto batch = sample_mixture(model, 2000, rng, true);
    for (std::size_t s = 0; s < batch.size(); ++s) {
        const double ni = block_norm(batch, model.part.I, s, model.q_i);
        const double nj = block_norm(batch, model.part.J, s, model.q_j);
        const double lhs = std::pow(ni, model.p) + std::pow(nj, model.p);
        const double rhs = std::pow(batch.r[s], model.p);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
        // and the J norm recovers R * W_p
        CHECK(nj == doctest::Approx(batch.r[s] * batch.wp[s]).epsilon(1e-10));
    }
}

TEST_CASE("degenerate mixing pins the I block at zero") {
    auto model = make_mixture_model(make_partition(3, {0, 1}), 2.0,
                                    Matrix::identity(3), kotz3_radial(1, 0, 1, 1),
                                    point_mass_mixing(1.0), 2.0, 2.0);
    RandomStream rng(32, "mix", 0);
    auto batch = sample_mixture(model, 500, rng);
    for (std::size_t s = 0; s < 500; ++s) {
        CHECK(batch.x[0][s] == 0.0);
        CHECK(batch.x[1][s] == 0.0);
        CHECK(batch.x[2][s] != 0.0);
    }
}

TEST_CASE("spherical configuration has a uniform angle") {
    // d=2, m=1, p=2 with W_p^2 ~ Beta(1/2, 1/2) is rotation invariant
    auto model = make_mixture_model(make_partition(2, {0}), 2.0,
                                    Matrix::identity(2),
                                    kotz3_radial(1.0, 0.0, 0.5, 2.0),
                                    power_beta_mixing(2.0, 0.5, 0.5), 2.0, 2.0);
    RandomStream rng(33, "mix", 0);
    auto batch = sample_mixture(model, 100000, rng);
    const double two_pi = 2.0 * 3.14159265358979323846;
    std::vector<double> angles(batch.size());
    for (std::size_t s = 0; s < batch.size(); ++s) {
        double a = std::atan2(batch.x[1][s], batch.x[0][s]);
        if (a < 0) a += two_pi;
        angles[s] = a;
    }
    CHECK(ks_distance(angles, [&](double a) { return a / two_pi; }) < 0.01);
}

TEST_CASE("matrix mixes the blocks") {
    Matrix a = Matrix::identity(2);
    a(0, 1) = 0.5;  // A_IJ nonzero, A_JI zero
    auto model = make_mixture_model(make_partition(2, {0}), 2.0, a,
                                    kotz3_radial(1, 0, 1, 1),
                                    beta_mixing(1.0, 1.5), 2.0, 2.0);
    RandomStream r1(34, "mix", 0), r2(34, "mix", 0);
    auto mixed = sample_mixture(model, 200, r1, true);
    auto plain = sample_mixture(identity_model(2, {0}, 2.0, 2.0, 2.0), 200, r2, true);
    // same streams, same factors: coordinate 0 shifts by 0.5 * S_J
    for (std::size_t s = 0; s < 200; ++s) {
        CHECK(mixed.x[1][s] == doctest::Approx(plain.x[1][s]));
        CHECK(mixed.x[0][s] ==
              doctest::Approx(plain.x[0][s] + 0.5 * plain.x[1][s]).epsilon(1e-12));
    }
}

TEST_CASE("sampling is replayable") {
    auto model = identity_model(3, {1}, 2.0, 2.0, 2.0);
    RandomStream r1(35, "mix", 0), r2(35, "mix", 0);
    auto a = sample_mixture(model, 300, r1, true);
    auto b = sample_mixture(model, 300, r2, true);
    CHECK(a.x == b.x);
    CHECK(a.r == b.r);
    CHECK(a.wp == b.wp);
}

TEST_CASE("block split is independent of the sphere directions") {
    auto model = identity_model(3, {0, 1}, 2.0, 2.0, 2.0);
    RandomStream rng(36, "mix", 0);
    auto batch = sample_mixture(model, 100000, rng, true);
    // relative I-block share vs the sign of the J coordinate
    std::vector<double> share(batch.size()), jsign(batch.size());
    for (std::size_t s = 0; s < batch.size(); ++s) {
        share[s] = block_norm(batch, model.part.I, s, 2.0) / batch.r[s];
        jsign[s] = batch.x[2][s] > 0 ? 1.0 : -1.0;
    }
    CHECK(std::fabs(pearson_correlation(share, jsign)) < 0.02);
}

TEST_CASE("bivariate representation identities") {
    auto radial = kotz3_radial(1.0, 0.0, 1.0, 2.0);
    // rho = 0, all-positive signs: X^p + Y^p reconstructs R^p, R ~ radial
    auto model = make_bivariate_model(0.0, 1.0, 1.0, 1.0, radial,
                                      beta_mixing(1.0, 1.5));
    RandomStream rng(37, "biv", 0);
    auto batch = sample_bivariate(model, 100000, rng);
    std::vector<double> recon(batch.x.size());
    for (std::size_t s = 0; s < recon.size(); ++s) {
        CHECK(batch.x[s] >= 0.0);
        CHECK(batch.y[s] >= 0.0);
        recon[s] = batch.x[s] + batch.y[s];  // p = 1
    }
    CHECK(ks_distance(recon, radial.cdf) < 0.01);

    // general rho: |X|^p + |Y - rho X|^p / (1 - rho^p) = R^p
    auto m2 = make_bivariate_model(0.5, 2.0, 0.5, 0.5, radial,
                                   beta_mixing(1.0, 1.5));
    RandomStream rng2(38, "biv", 0);
    auto b2 = sample_bivariate(m2, 100000, rng2);
    std::vector<double> recon2(b2.x.size());
    for (std::size_t s = 0; s < recon2.size(); ++s) {
        const double res = b2.y[s] - 0.5 * b2.x[s];
        recon2[s] = std::sqrt(b2.x[s] * b2.x[s] + res * res / 0.75);
    }
    CHECK(ks_distance(recon2, radial.cdf) < 0.01);
}

TEST_CASE("positive rho couples the coordinates") {
    auto model = make_bivariate_model(0.5, 2.0, 0.5, 0.5,
                                      kotz3_radial(1, 0, 1, 1),
                                      beta_mixing(1.0, 1.0));
    RandomStream rng(39, "biv", 0);
    auto batch = sample_bivariate(model, 100000, rng);
    CHECK(pearson_correlation(batch.x, batch.y) > 0.05);
}

TEST_CASE("bivariate marginal cdf") {
    auto model = make_bivariate_model(0.3, 2.0, 0.5, 0.5,
                                      kotz3_radial(1, 0, 1, 1),
                                      beta_mixing(1.0, 1.5));
    CHECK(bivariate_marginal_cdf(model, 0.0) == doctest::Approx(0.5).epsilon(1e-9));
    // monotone on a grid
    double prev = 0.0;
    for (int i = -20; i <= 20; ++i) {
        const double v = bivariate_marginal_cdf(model, 0.4 * double(i));
        CHECK(v >= prev - 1e-12);
        CHECK(v <= 1.0);
        prev = v;
    }
    // quantile inverts the cdf
    for (double prob : {0.1, 0.5, 0.9, 0.999}) {
        const double x = bivariate_marginal_quantile(model, prob);
        CHECK(bivariate_marginal_cdf(model, x) == doctest::Approx(prob).epsilon(1e-7));
    }
}

TEST_CASE("marginal cdf matches the empirical law") {
    auto model = make_bivariate_model(0.3, 2.0, 0.5, 0.5,
                                      kotz3_radial(1, 0, 1, 1),
                                      beta_mixing(1.0, 1.5));
    RandomStream rng(40, "biv", 0);
    auto batch = sample_bivariate(model, 1000000, rng);
    const double ks = ks_distance(
        batch.x, [&](double x) { return bivariate_marginal_cdf(model, x); });
    CHECK(ks < 0.005);
}

TEST_CASE("bivariate agrees with the general sampler") {
    // same law built through the d=2 mixture with A = [[1,0],[rho, c]]
    const double rho = 0.4, p = 2.0;
    const double c = std::sqrt(1.0 - rho * rho);
    auto radial = kotz3_radial(1.0, 0.0, 1.0, 2.0);
    auto mixing = beta_mixing(1.0, 1.5);

    auto biv = make_bivariate_model(rho, p, 0.5, 0.5, radial, mixing);
    RandomStream r1(41, "biv", 0);
    auto bb = sample_bivariate(biv, 200000, r1);

    Matrix a(2, 2);
    a(0, 0) = 1.0; a(0, 1) = 0.0;
    a(1, 0) = rho; a(1, 1) = c;
    auto gen = make_mixture_model(make_partition(2, {1}), p, a, radial, mixing,
                                  p, p);
    RandomStream r2(42, "biv", 1);
    auto gb = sample_mixture(gen, 200000, r2);

    auto mean_abs = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double x : v) s += std::fabs(x);
        return s / double(v.size());
    };
    auto var = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double x : v) s += x * x;
        return s / double(v.size());
    };
    // three standard errors at n = 2e5: means ~0.004, second moments ~0.01
    CHECK(mean_abs(bb.x) == doctest::Approx(mean_abs(gb.x[0])).epsilon(0.015));
    CHECK(mean_abs(bb.y) == doctest::Approx(mean_abs(gb.x[1])).epsilon(0.015));
    CHECK(var(bb.x) == doctest::Approx(var(gb.x[0])).epsilon(0.03));
    CHECK(var(bb.y) == doctest::Approx(var(gb.x[1])).epsilon(0.03));
}

TEST_CASE("negative rho needs an integer exponent") {
    auto radial = kotz3_radial(1, 0, 1, 1);
    auto mixing = beta_mixing(1.0, 1.0);
    CHECK_NOTHROW(make_bivariate_model(-0.5, 2.0, 0.5, 0.5, radial, mixing));
    CHECK_THROWS_AS(make_bivariate_model(-0.5, 1.7, 0.5, 0.5, radial, mixing),
                    ConfigError);
    CHECK_THROWS_AS(make_bivariate_model(1.0, 2.0, 0.5, 0.5, radial, mixing),
                    ConfigError);  // |rho| < 1 required
}

}  // TEST_SUITE
