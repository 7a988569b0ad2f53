#pragma once

#include "wpmix/kernels.hpp"

// Per-ISA kernel variants. The dispatcher picks one namespace's set at
// startup; signatures must stay identical across namespaces.

namespace wpmix::kernels::scalar {
void philox_blocks(PhiloxKey key, std::uint64_t stream, std::uint64_t block0,
                   std::size_t nblocks, std::uint32_t* out);
void philox_u01(PhiloxKey key, std::uint64_t stream, std::uint64_t block0,
                std::size_t nblocks, double* out);
void accumulate_abs(double* acc, const double* x, std::size_t n);
void accumulate_sq(double* acc, const double* x, std::size_t n);
void sqrt_inplace(double* x, std::size_t n);
void sqrt_one_minus_sq(const double* w, std::size_t n, double* out);
}  // namespace wpmix::kernels::scalar

#if defined(WPMIX_HAVE_AVX2)
namespace wpmix::kernels::avx2 {
void philox_blocks(PhiloxKey key, std::uint64_t stream, std::uint64_t block0,
                   std::size_t nblocks, std::uint32_t* out);
void philox_u01(PhiloxKey key, std::uint64_t stream, std::uint64_t block0,
                std::size_t nblocks, double* out);
void accumulate_abs(double* acc, const double* x, std::size_t n);
void accumulate_sq(double* acc, const double* x, std::size_t n);
void sqrt_inplace(double* x, std::size_t n);
void sqrt_one_minus_sq(const double* w, std::size_t n, double* out);
}  // namespace wpmix::kernels::avx2
#endif
