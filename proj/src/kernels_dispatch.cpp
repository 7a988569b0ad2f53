#include "kernels_detail.hpp"

#include <cstdlib>
#include <cstring>

namespace wpmix::kernels {

namespace {

struct Table {
  Isa isa;
  void (*philox_blocks)(PhiloxKey, std::uint64_t, std::uint64_t, std::size_t,
                        std::uint32_t*);
  void (*philox_u01)(PhiloxKey, std::uint64_t, std::uint64_t, std::size_t,
                     double*);
  void (*accumulate_abs)(double*, const double*, std::size_t);
  void (*accumulate_sq)(double*, const double*, std::size_t);
  void (*sqrt_inplace)(double*, std::size_t);
  void (*sqrt_one_minus_sq)(const double*, std::size_t, double*);
};

constexpr Table kScalar{Isa::scalar,
                        &scalar::philox_blocks,
                        &scalar::philox_u01,
                        &scalar::accumulate_abs,
                        &scalar::accumulate_sq,
                        &scalar::sqrt_inplace,
                        &scalar::sqrt_one_minus_sq};

#if defined(WPMIX_HAVE_AVX2)
constexpr Table kAvx2{Isa::avx2,
                      &avx2::philox_blocks,
                      &avx2::philox_u01,
                      &avx2::accumulate_abs,
                      &avx2::accumulate_sq,
                      &avx2::sqrt_inplace,
                      &avx2::sqrt_one_minus_sq};
#endif

Table select_table() {
  const char* force = std::getenv("WPMIX_SIMD");
  if (force && std::strcmp(force, "scalar") == 0) return kScalar;
#if defined(WPMIX_HAVE_AVX2)
  const bool want_avx2 = !force || std::strcmp(force, "avx2") == 0;
  if (want_avx2 && __builtin_cpu_supports("avx2")) return kAvx2;
#endif
  return kScalar;
}

const Table& table() {
  static const Table t = select_table();
  return t;
}

}  // namespace

Isa active_isa() { return table().isa; }

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::avx2:
      return "avx2";
    default:
      return "scalar";
  }
}

void philox_blocks(PhiloxKey key, std::uint64_t stream, std::uint64_t block0,
                   std::size_t nblocks, std::uint32_t* out) {
  table().philox_blocks(key, stream, block0, nblocks, out);
}

void philox_u01(PhiloxKey key, std::uint64_t stream, std::uint64_t block0,
                std::size_t nblocks, double* out) {
  table().philox_u01(key, stream, block0, nblocks, out);
}

void accumulate_abs(double* acc, const double* x, std::size_t n) {
  table().accumulate_abs(acc, x, n);
}

void accumulate_sq(double* acc, const double* x, std::size_t n) {
  table().accumulate_sq(acc, x, n);
}

void sqrt_inplace(double* x, std::size_t n) { table().sqrt_inplace(x, n); }

void sqrt_one_minus_sq(const double* w, std::size_t n, double* out) {
  table().sqrt_one_minus_sq(w, n, out);
}

}  // namespace wpmix::kernels
