#include "kernels_detail.hpp"

#if defined(WPMIX_HAVE_AVX2)

#include <immintrin.h>

namespace wpmix::kernels::avx2 {

namespace {

// 8 blocks at a time, lane k of X0..X3 holding word 0..3 of block k.
struct Lanes {
  __m256i x0, x1, x2, x3;
};

// Per-lane 32x32->64 multiply. mul_epu32 covers even 32-bit lanes; odd
// lanes are shifted down and multiplied separately, then lo/hi words are
// re-interleaved with blends.
inline void mul_hilo(__m256i x, __m256i m, __m256i* lo, __m256i* hi) {
  const __m256i even = _mm256_mul_epu32(x, m);
  const __m256i odd = _mm256_mul_epu32(_mm256_srli_epi64(x, 32), m);
  *lo = _mm256_blend_epi32(even, _mm256_slli_epi64(odd, 32), 0xAA);
  *hi = _mm256_blend_epi32(_mm256_srli_epi64(even, 32), odd, 0xAA);
}

inline Lanes one_round(Lanes c, __m256i k0, __m256i k1) {
  const __m256i m0 = _mm256_set1_epi32(int(kPhiloxM0));
  const __m256i m1 = _mm256_set1_epi32(int(kPhiloxM1));
  __m256i lo0, hi0, lo1, hi1;
  mul_hilo(c.x0, m0, &lo0, &hi0);
  mul_hilo(c.x2, m1, &lo1, &hi1);
  Lanes r;
  r.x0 = _mm256_xor_si256(_mm256_xor_si256(hi1, c.x1), k0);
  r.x1 = lo1;
  r.x2 = _mm256_xor_si256(_mm256_xor_si256(hi0, c.x3), k1);
  r.x3 = lo0;
  return r;
}

inline Lanes philox8(std::uint64_t block0, std::uint64_t stream, PhiloxKey key) {
  alignas(32) std::uint32_t blo[8], bhi[8];
  for (int k = 0; k < 8; ++k) {
    const std::uint64_t b = block0 + std::uint64_t(k);
    blo[k] = std::uint32_t(b);
    bhi[k] = std::uint32_t(b >> 32);
  }
  Lanes c{_mm256_load_si256(reinterpret_cast<const __m256i*>(blo)),
          _mm256_load_si256(reinterpret_cast<const __m256i*>(bhi)),
          _mm256_set1_epi32(int(std::uint32_t(stream))),
          _mm256_set1_epi32(int(std::uint32_t(stream >> 32)))};
  std::uint32_t k0 = key.k0, k1 = key.k1;
  for (int round = 0; round < 10; ++round) {
    if (round) {
      k0 += kPhiloxW0;
      k1 += kPhiloxW1;
    }
    c = one_round(c, _mm256_set1_epi32(int(k0)), _mm256_set1_epi32(int(k1)));
  }
  return c;
}

// Lane-major -> block-major: an 8x4 transpose of 32-bit words.
inline void store_blocks(Lanes r, std::uint32_t* out) {
  const __m256i t0 = _mm256_unpacklo_epi32(r.x0, r.x1);  // b0,b1,b4,b5 words 0,1
  const __m256i t1 = _mm256_unpacklo_epi32(r.x2, r.x3);  // b0,b1,b4,b5 words 2,3
  const __m256i t2 = _mm256_unpackhi_epi32(r.x0, r.x1);  // b2,b3,b6,b7 words 0,1
  const __m256i t3 = _mm256_unpackhi_epi32(r.x2, r.x3);  // b2,b3,b6,b7 words 2,3
  const __m256i u0 = _mm256_unpacklo_epi64(t0, t1);      // b0 | b4
  const __m256i u1 = _mm256_unpackhi_epi64(t0, t1);      // b1 | b5
  const __m256i u2 = _mm256_unpacklo_epi64(t2, t3);      // b2 | b6
  const __m256i u3 = _mm256_unpackhi_epi64(t2, t3);      // b3 | b7
  __m128i* o = reinterpret_cast<__m128i*>(out);
  _mm_storeu_si128(o + 0, _mm256_castsi256_si128(u0));
  _mm_storeu_si128(o + 1, _mm256_castsi256_si128(u1));
  _mm_storeu_si128(o + 2, _mm256_castsi256_si128(u2));
  _mm_storeu_si128(o + 3, _mm256_castsi256_si128(u3));
  _mm_storeu_si128(o + 4, _mm256_extracti128_si256(u0, 1));
  _mm_storeu_si128(o + 5, _mm256_extracti128_si256(u1, 1));
  _mm_storeu_si128(o + 6, _mm256_extracti128_si256(u2, 1));
  _mm_storeu_si128(o + 7, _mm256_extracti128_si256(u3, 1));
}

// (w1<<32|w0, w3<<32|w2) per block -> doubles in (0,1), mirroring
// u01_from_bits bit for bit.
inline void store_u01(Lanes r, double* out) {
  const __m256i mant = _mm256_set1_epi64x(0x3FF0000000000000ll);
  const __m256d off = _mm256_set1_pd(1.0 - 0x1.0p-53);
  // u64 a_k = x1[k]<<32 | x0[k]; unpack gives blocks {0,1,4,5} then {2,3,6,7}.
  const __m256i a01 = _mm256_unpacklo_epi32(r.x0, r.x1);
  const __m256i a23 = _mm256_unpackhi_epi32(r.x0, r.x1);
  const __m256i d01 = _mm256_unpacklo_epi32(r.x2, r.x3);
  const __m256i d23 = _mm256_unpackhi_epi32(r.x2, r.x3);
  const auto u01v = [&](__m256i w) {
    const __m256i bits = _mm256_or_si256(_mm256_srli_epi64(w, 12), mant);
    return _mm256_sub_pd(_mm256_castsi256_pd(bits), off);
  };
  const __m256d a_lo = u01v(a01);  // a0 a1 a4 a5
  const __m256d a_hi = u01v(a23);  // a2 a3 a6 a7
  const __m256d d_lo = u01v(d01);  // d0 d1 d4 d5
  const __m256d d_hi = u01v(d23);  // d2 d3 d6 d7
  // Interleave to a0 d0 a1 d1 ... d7.
  const __m256d p0 = _mm256_unpacklo_pd(a_lo, d_lo);  // a0 d0 a4 d4
  const __m256d p1 = _mm256_unpackhi_pd(a_lo, d_lo);  // a1 d1 a5 d5
  const __m256d p2 = _mm256_unpacklo_pd(a_hi, d_hi);  // a2 d2 a6 d6
  const __m256d p3 = _mm256_unpackhi_pd(a_hi, d_hi);  // a3 d3 a7 d7
  _mm256_storeu_pd(out + 0, _mm256_permute2f128_pd(p0, p1, 0x20));
  _mm256_storeu_pd(out + 4, _mm256_permute2f128_pd(p2, p3, 0x20));
  _mm256_storeu_pd(out + 8, _mm256_permute2f128_pd(p0, p1, 0x31));
  _mm256_storeu_pd(out + 12, _mm256_permute2f128_pd(p2, p3, 0x31));
}

}  // namespace

void philox_blocks(PhiloxKey key, std::uint64_t stream, std::uint64_t block0,
                   std::size_t nblocks, std::uint32_t* out) {
  std::size_t i = 0;
  for (; i + 8 <= nblocks; i += 8)
    store_blocks(philox8(block0 + i, stream, key), out + 4 * i);
  if (i < nblocks)
    scalar::philox_blocks(key, stream, block0 + i, nblocks - i, out + 4 * i);
}

void philox_u01(PhiloxKey key, std::uint64_t stream, std::uint64_t block0,
                std::size_t nblocks, double* out) {
  std::size_t i = 0;
  for (; i + 8 <= nblocks; i += 8)
    store_u01(philox8(block0 + i, stream, key), out + 2 * i);
  if (i < nblocks)
    scalar::philox_u01(key, stream, block0 + i, nblocks - i, out + 2 * i);
}

void accumulate_abs(double* acc, const double* x, std::size_t n) {
  const __m256d signmask = _mm256_set1_pd(-0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_andnot_pd(signmask, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(acc + i, _mm256_add_pd(_mm256_loadu_pd(acc + i), v));
  }
  if (i < n) scalar::accumulate_abs(acc + i, x + i, n - i);
}

void accumulate_sq(double* acc, const double* x, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    _mm256_storeu_pd(acc + i,
                     _mm256_add_pd(_mm256_loadu_pd(acc + i), _mm256_mul_pd(v, v)));
  }
  if (i < n) scalar::accumulate_sq(acc + i, x + i, n - i);
}

void sqrt_inplace(double* x, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(x + i, _mm256_sqrt_pd(_mm256_loadu_pd(x + i)));
  if (i < n) scalar::sqrt_inplace(x + i, n - i);
}

void sqrt_one_minus_sq(const double* w, std::size_t n, double* out) {
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(w + i);
    _mm256_storeu_pd(out + i,
                     _mm256_sqrt_pd(_mm256_sub_pd(one, _mm256_mul_pd(v, v))));
  }
  if (i < n) scalar::sqrt_one_minus_sq(w + i, n - i, out + i);
}

}  // namespace wpmix::kernels::avx2

#endif  // WPMIX_HAVE_AVX2
