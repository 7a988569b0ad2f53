#pragma once

#include <bit>
#include <cstdint>
#include <cstddef>

// Batch kernels with a scalar reference path and an AVX2 path chosen at
// runtime. Every kernel is restricted to IEEE-exact operations evaluated in
// a fixed order, so the two paths return bit-identical results; the
// equivalence tests assert exactly that. Output therefore does not depend
// on which ISA the host happens to support.

namespace wpmix::kernels {

enum class Isa { scalar, avx2 };

// Detected at first use; WPMIX_SIMD=scalar|avx2 overrides (avx2 silently
// falls back to scalar on machines without it).
Isa active_isa();
const char* isa_name(Isa isa);

// ---- Philox4x32-10 (Salmon, Moraes, Dror, Shaw; SC'11) ----------------
// Counter word layout: w0,w1 = 64-bit block index, w2,w3 = 64-bit stream id.

struct PhiloxKey {
  std::uint32_t k0, k1;
};

struct PhiloxBlock {
  std::uint32_t w[4];
};

inline constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
inline constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
inline constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;  // golden ratio
inline constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;  // sqrt(3)-1

// Single-block reference, used by the known-answer tests and as the slow path.
PhiloxBlock philox4x32(PhiloxBlock ctr, PhiloxKey key);

// 64 random bits -> double in the open interval (0,1).
// Top 52 bits become the mantissa of a value in [1,2); subtracting
// 1 - 2^-53 keeps both endpoints excluded. Both steps are exact.
inline double u01_from_bits(std::uint64_t w) {
  const double d = std::bit_cast<double>(0x3FF0000000000000ull | (w >> 12));
  return d - (1.0 - 0x1.0p-53);
}

// nblocks consecutive counter values starting at `block0`, each run through
// philox4x32; out receives 4*nblocks words in block order.
void philox_blocks(PhiloxKey key, std::uint64_t stream, std::uint64_t block0,
                   std::size_t nblocks, std::uint32_t* out);

// Fused: same block range, but emit 2 doubles per block via u01_from_bits
// on (w1<<32|w0) and (w3<<32|w2). out receives 2*nblocks doubles.
void philox_u01(PhiloxKey key, std::uint64_t stream, std::uint64_t block0,
                std::size_t nblocks, double* out);

// ---- batch arithmetic --------------------------------------------------

// acc[i] += |x[i]|        (exact)
void accumulate_abs(double* acc, const double* x, std::size_t n);
// acc[i] += x[i]*x[i]     (exact)
void accumulate_sq(double* acc, const double* x, std::size_t n);
// x[i] = sqrt(x[i])       (exact, correctly rounded)
void sqrt_inplace(double* x, std::size_t n);
// out[i] = sqrt(1 - w[i]*w[i]) for w in [-1,1]
void sqrt_one_minus_sq(const double* w, std::size_t n, double* out);

}  // namespace wpmix::kernels
