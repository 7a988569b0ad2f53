#include <doctest.h>

#include <cmath>
#include <vector>

#include "wpmix/errors.hpp"
#include "wpmix/geometry.hpp"
#include "wpmix/harness.hpp"
#include "wpmix/linalg.hpp"
#include "wpmix/random.hpp"

using namespace wpmix;

TEST_SUITE("linalg and geometry") {

TEST_CASE("matvec and lu solve") {
    Matrix a(2, 2);
    a(0, 0) = 2.0; a(0, 1) = 1.0;
    a(1, 0) = 1.0; a(1, 1) = 3.0;
    auto y = a.matvec({1.0, 2.0});
    CHECK(y[0] == doctest::Approx(4.0));
    CHECK(y[1] == doctest::Approx(7.0));

    LuSolver lu(a);
    CHECK_FALSE(lu.singular());
    auto x = lu.solve({4.0, 7.0});
    CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(x[1] == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("singular matrix is flagged") {
    Matrix a(2, 2);
    a(0, 0) = 1.0; a(0, 1) = 2.0;
    a(1, 0) = 2.0; a(1, 1) = 4.0;
    LuSolver lu(a);
    CHECK(lu.singular());
}

TEST_CASE("partition complements") {
    auto p = make_partition(2, {0});
    CHECK(p.J == std::vector<std::size_t>{1});
    CHECK(p.I.size() == 1);
    CHECK(p.d == 2);

    auto q = make_partition(4, {0, 2});
    CHECK(q.J == std::vector<std::size_t>{1, 3});

    CHECK_THROWS_AS(make_partition(2, {0, 1}), ConfigError);  // J empty
    CHECK_THROWS_AS(make_partition(2, std::vector<std::size_t>{}), ConfigError);
    CHECK_THROWS_AS(make_partition(2, {0, 0}), ConfigError);  // duplicate
    CHECK_THROWS_AS(make_partition(2, {5}), ConfigError);     // out of range
}

TEST_CASE("lq norms") {
    CHECK(lq_norm({3.0, 4.0}, 2.0) == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(lq_norm({1.0, -1.0}, 1.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(lq_norm({0.0, 0.0, 0.0}, 1.5) == 0.0);

    // absolute homogeneity
    RandomStream rng(5, "norm", 0);
    for (double q : {1.0, 1.5, 2.0, 3.0}) {
        std::vector<double> v{rng.normal(), rng.normal(), rng.normal()};
        for (double c : {-2.5, 0.125, 7.0}) {
            std::vector<double> cv{c * v[0], c * v[1], c * v[2]};
            CHECK(lq_norm(cv, q) ==
                  doctest::Approx(std::fabs(c) * lq_norm(v, q)).epsilon(1e-12));
        }
    }

    // triangle inequality for q >= 1
    for (double q : {1.0, 1.7, 2.0, 4.0}) {
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<double> x{rng.normal(), rng.normal(), rng.normal()};
            std::vector<double> y{rng.normal(), rng.normal(), rng.normal()};
            std::vector<double> s{x[0] + y[0], x[1] + y[1], x[2] + y[2]};
            CHECK(lq_norm(s, q) <= lq_norm(x, q) + lq_norm(y, q) + 1e-12);
        }
    }
}

TEST_CASE("a-norm") {
    CHECK(a_norm(Matrix::identity(2), {2.0, 0.0}, 2.0) == doctest::Approx(2.0));
    Matrix two = Matrix::identity(2);
    two(0, 0) = two(1, 1) = 2.0;
    CHECK(a_norm(two, {2.0, 0.0}, 2.0) == doctest::Approx(1.0));

    Matrix sing(2, 2);
    sing(0, 0) = 1.0; sing(0, 1) = 1.0;
    sing(1, 0) = 1.0; sing(1, 1) = 1.0;
    CHECK_THROWS_AS(a_norm(sing, {1.0, 0.0}, 2.0), NumericError);

    // identity reduces to the plain norm
    CHECK(a_norm(Matrix::identity(3), {1.0, -2.0, 2.0}, 1.0) ==
          doctest::Approx(5.0).epsilon(1e-13));
}

TEST_CASE("sphere sampler basics") {
    SphereSampler one(1, 2.0);
    RandomStream rng(9, "sphere", 0);
    double mean = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const double v = one.sample(rng)[0];
        CHECK((v == 1.0 || v == -1.0));
        mean += v;
    }
    CHECK(std::fabs(mean / n) < 0.02);
}

TEST_CASE("sphere samples have unit norm") {
    RandomStream rng(10, "sphere", 1);
    for (double q : {1.0, 1.5, 2.0, 3.0}) {
        SphereSampler s(3, q);
        for (int i = 0; i < 200; ++i) {
            auto u = s.sample(rng);
            CHECK(lq_norm(u, q) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("euclidean sphere angle is uniform") {
    SphereSampler s(2, 2.0);
    RandomStream rng(11, "sphere", 2);
    const int n = 100000;
    std::vector<double> angles(n);
    const double two_pi = 2.0 * 3.14159265358979323846;
    for (int i = 0; i < n; ++i) {
        auto u = s.sample(rng);
        double a = std::atan2(u[1], u[0]);
        if (a < 0) a += two_pi;
        angles[i] = a;
    }
    const double ks =
        ks_distance(angles, [&](double a) { return a / two_pi; });
    CHECK(ks < 0.01);
}

}  // TEST_SUITE
