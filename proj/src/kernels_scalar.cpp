#include "kernels_detail.hpp"

#include <cmath>

namespace wpmix::kernels {

namespace {

inline PhiloxBlock one_round(PhiloxBlock c, PhiloxKey k) {
  const std::uint64_t p0 = std::uint64_t(kPhiloxM0) * c.w[0];
  const std::uint64_t p1 = std::uint64_t(kPhiloxM1) * c.w[2];
  PhiloxBlock r;
  r.w[0] = std::uint32_t(p1 >> 32) ^ c.w[1] ^ k.k0;
  r.w[1] = std::uint32_t(p1);
  r.w[2] = std::uint32_t(p0 >> 32) ^ c.w[3] ^ k.k1;
  r.w[3] = std::uint32_t(p0);
  return r;
}

}  // namespace

PhiloxBlock philox4x32(PhiloxBlock ctr, PhiloxKey key) {
  for (int round = 0; round < 10; ++round) {
    if (round) {
      key.k0 += kPhiloxW0;
      key.k1 += kPhiloxW1;
    }
    ctr = one_round(ctr, key);
  }
  return ctr;
}

namespace scalar {

void philox_blocks(PhiloxKey key, std::uint64_t stream, std::uint64_t block0,
                   std::size_t nblocks, std::uint32_t* out) {
  for (std::size_t i = 0; i < nblocks; ++i) {
    const std::uint64_t b = block0 + i;
    PhiloxBlock c{{std::uint32_t(b), std::uint32_t(b >> 32),
                   std::uint32_t(stream), std::uint32_t(stream >> 32)}};
    const PhiloxBlock r = philox4x32(c, key);
    out[4 * i + 0] = r.w[0];
    out[4 * i + 1] = r.w[1];
    out[4 * i + 2] = r.w[2];
    out[4 * i + 3] = r.w[3];
  }
}

void philox_u01(PhiloxKey key, std::uint64_t stream, std::uint64_t block0,
                std::size_t nblocks, double* out) {
  for (std::size_t i = 0; i < nblocks; ++i) {
    const std::uint64_t b = block0 + i;
    PhiloxBlock c{{std::uint32_t(b), std::uint32_t(b >> 32),
                   std::uint32_t(stream), std::uint32_t(stream >> 32)}};
    const PhiloxBlock r = philox4x32(c, key);
    const std::uint64_t a = std::uint64_t(r.w[1]) << 32 | r.w[0];
    const std::uint64_t d = std::uint64_t(r.w[3]) << 32 | r.w[2];
    out[2 * i + 0] = u01_from_bits(a);
    out[2 * i + 1] = u01_from_bits(d);
  }
}

void accumulate_abs(double* acc, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) acc[i] += x[i] < 0 ? -x[i] : x[i];
}

void accumulate_sq(double* acc, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) acc[i] += x[i] * x[i];
}

void sqrt_inplace(double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] = std::sqrt(x[i]);
}

void sqrt_one_minus_sq(const double* w, std::size_t n, double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::sqrt(1.0 - w[i] * w[i]);
}

}  // namespace scalar
}  // namespace wpmix::kernels
