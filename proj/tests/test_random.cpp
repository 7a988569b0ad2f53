#include <doctest.h>

#include <cmath>
#include <cstddef>
#include <vector>

#include "wpmix/random.hpp"

using wpmix::RandomStream;

namespace {

struct Moments {
    double mean = 0.0, var = 0.0;
};

template <typename F>
Moments sample_moments(std::size_t n, F&& draw) {
    std::vector<double> xs(n);
    double m = 0.0;
    for (auto& x : xs) {
        x = draw();
        m += x;
    }
    m /= double(n);
    double v = 0.0;
    for (double x : xs) v += (x - m) * (x - m);
    return {m, v / double(n - 1)};
}

}  // namespace

TEST_SUITE("random") {

TEST_CASE("identical keys replay the same sequence") {
    RandomStream a(7, "unit", 3), b(7, "unit", 3);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_double() == b.next_double());
}

TEST_CASE("seed, tag, and index all separate streams") {
    RandomStream base(7, "unit", 3);
    RandomStream seed(8, "unit", 3);
    RandomStream tag(7, "unit2", 3);
    RandomStream index(7, "unit", 4);
    const double x = base.next_double();
    CHECK(x != seed.next_double());
    CHECK(x != tag.next_double());
    CHECK(x != index.next_double());
}

TEST_CASE("derive matches constructing the child directly") {
    RandomStream parent(11, "parent", 0);
    RandomStream child = parent.derive("leaf", 5);
    // deriving again from an equal parent gives the same child stream
    RandomStream child2 = RandomStream(11, "parent", 0).derive("leaf", 5);
    for (int i = 0; i < 100; ++i)
        CHECK(child.next_double() == child2.next_double());
}

TEST_CASE("bulk fill equals repeated single draws") {
    RandomStream a(3, "fill", 0), b(3, "fill", 0);
    std::vector<double> bulk(257);
    a.fill_u01(bulk.data(), bulk.size());
    for (double v : bulk) CHECK(v == b.next_double());
    // and the streams stay in sync afterwards
    CHECK(a.next_double() == b.next_double());
}

TEST_CASE("uniform draws live in the open interval") {
    RandomStream rng(1, "u01", 0);
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.next_double();
        CHECK(u > 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("distribution moments at Monte Carlo scale") {
    const std::size_t n = 200000;
    // tolerances sized at ~5 standard errors
    RandomStream rng(17, "moments", 0);

    auto e = sample_moments(n, [&] { return rng.exponential(); });
    CHECK(std::fabs(e.mean - 1.0) < 0.012);
    CHECK(std::fabs(e.var - 1.0) < 0.05);

    auto z = sample_moments(n, [&] { return rng.normal(); });
    CHECK(std::fabs(z.mean) < 0.012);
    CHECK(std::fabs(z.var - 1.0) < 0.02);

    auto g = sample_moments(n, [&] { return rng.gamma(2.5); });
    CHECK(std::fabs(g.mean - 2.5) < 0.02);
    CHECK(std::fabs(g.var - 2.5) < 0.12);

    auto gs = sample_moments(n, [&] { return rng.gamma(0.4); });  // shape < 1 branch
    CHECK(std::fabs(gs.mean - 0.4) < 0.01);

    auto be = sample_moments(n, [&] { return rng.beta(2.0, 3.0); });
    CHECK(std::fabs(be.mean - 0.4) < 0.005);

    auto u = sample_moments(n, [&] { return rng.uniform(-2.0, 6.0); });
    CHECK(std::fabs(u.mean - 2.0) < 0.03);

    auto s = sample_moments(n, [&] { return double(rng.sign(0.3)); });
    CHECK(std::fabs(s.mean + 0.4) < 0.012);  // 0.3 - 0.7
}

}  // TEST_SUITE
