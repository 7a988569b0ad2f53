#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "kernels_detail.hpp"
#include "wpmix/kernels.hpp"

using namespace wpmix::kernels;

TEST_SUITE("kernels") {

// Published philox4x32-10 vectors: zero, saturated, and pi-digit inputs.
TEST_CASE("philox known answers") {
    auto block = [](std::uint32_t a, std::uint32_t b, std::uint32_t c,
                    std::uint32_t d) { return PhiloxBlock{{a, b, c, d}}; };

    PhiloxBlock r = philox4x32(block(0, 0, 0, 0), PhiloxKey{0, 0});
    CHECK(r.w[0] == 0x6627e8d5u);
    CHECK(r.w[1] == 0xe169c58du);
    CHECK(r.w[2] == 0xbc57ac4cu);
    CHECK(r.w[3] == 0x9b00dbd8u);

    const std::uint32_t ff = 0xffffffffu;
    r = philox4x32(block(ff, ff, ff, ff), PhiloxKey{ff, ff});
    CHECK(r.w[0] == 0x408f276du);
    CHECK(r.w[1] == 0x41c83b0eu);
    CHECK(r.w[2] == 0xa20bc7c6u);
    CHECK(r.w[3] == 0x6d5451fdu);

    r = philox4x32(block(0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u),
                   PhiloxKey{0xa4093822u, 0x299f31d0u});
    CHECK(r.w[0] == 0xd16cfe09u);
    CHECK(r.w[1] == 0x94fdccebu);
    CHECK(r.w[2] == 0x5001e420u);
    CHECK(r.w[3] == 0x24126ea1u);
}

TEST_CASE("u01 conversion stays inside the open unit interval") {
    CHECK(u01_from_bits(0) > 0.0);
    CHECK(u01_from_bits(0) < 1e-15);
    CHECK(u01_from_bits(~std::uint64_t(0)) < 1.0);
    CHECK(u01_from_bits(~std::uint64_t(0)) > 1.0 - 1e-15);
    // monotone in the high bits
    CHECK(u01_from_bits(std::uint64_t(1) << 63) > u01_from_bits(std::uint64_t(1) << 62));
}

// The dispatched batch entry points must agree bit for bit with the scalar
// reference, including the remainder lanes of a vector pass and a counter
// that carries across the 32-bit word boundary.
TEST_CASE("dispatched philox batches match the scalar reference") {
    const PhiloxKey key{0x12345678u, 0x9abcdef0u};
    const std::uint64_t stream = 0x0123456789abcdefull;
    for (std::size_t n : {std::size_t(1), std::size_t(7), std::size_t(64),
                          std::size_t(129)}) {
        for (std::uint64_t b0 : {std::uint64_t(0), std::uint64_t(0xfffffffeull),
                                 std::uint64_t(1) << 40}) {
            std::vector<std::uint32_t> got(4 * n, 0), want(4 * n, 1);
            philox_blocks(key, stream, b0, n, got.data());
            scalar::philox_blocks(key, stream, b0, n, want.data());
            CHECK(got == want);

            std::vector<double> gu(2 * n, -1.0), wu(2 * n, -2.0);
            philox_u01(key, stream, b0, n, gu.data());
            scalar::philox_u01(key, stream, b0, n, wu.data());
            CHECK(gu == wu);
        }
    }
}

TEST_CASE("batch blocks agree with single-block evaluations") {
    const PhiloxKey key{3u, 11u};
    std::vector<std::uint32_t> out(4 * 5);
    philox_blocks(key, 42, 100, 5, out.data());
    for (std::uint64_t i = 0; i < 5; ++i) {
        PhiloxBlock c{{std::uint32_t(100 + i), 0u, 42u, 0u}};
        PhiloxBlock r = philox4x32(c, key);
        for (int w = 0; w < 4; ++w) CHECK(out[4 * i + w] == r.w[w]);
    }
}

TEST_CASE("vector math kernels match plain loops bitwise") {
    std::vector<double> x(101), acc1(101, 0.5), acc2(101, 0.5);
    for (std::size_t i = 0; i < x.size(); ++i)
        x[i] = (i % 2 ? -1.0 : 1.0) * (0.01 * double(i) + 0.001);

    accumulate_abs(acc1.data(), x.data(), x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        acc2[i] += x[i] < 0 ? -x[i] : x[i];
    CHECK(acc1 == acc2);

    acc1.assign(x.size(), 0.25);
    acc2.assign(x.size(), 0.25);
    accumulate_sq(acc1.data(), x.data(), x.size());
    for (std::size_t i = 0; i < x.size(); ++i) acc2[i] += x[i] * x[i];
    CHECK(acc1 == acc2);

    std::vector<double> s1(x.size()), s2(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) s1[i] = s2[i] = 0.1 + 0.02 * double(i);
    sqrt_inplace(s1.data(), s1.size());
    for (double& v : s2) v = std::sqrt(v);
    CHECK(s1 == s2);

    std::vector<double> w(67), o1(67), o2(67);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = double(i) / 67.0;
    sqrt_one_minus_sq(w.data(), w.size(), o1.data());
    for (std::size_t i = 0; i < w.size(); ++i) o2[i] = std::sqrt(1.0 - w[i] * w[i]);
    CHECK(o1 == o2);
}

TEST_CASE("active isa reports a known name") {
    const char* name = isa_name(active_isa());
    CHECK((std::string(name) == "scalar" || std::string(name) == "avx2"));
}

}  // TEST_SUITE
