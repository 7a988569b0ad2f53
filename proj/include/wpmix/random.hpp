#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "wpmix/kernels.hpp"

namespace wpmix {

// Deterministic random stream: Philox4x32-10 keyed by the run seed, with the
// 128-bit counter split into a 64-bit stream id and a 64-bit block index.
// Streams are addressed by (seed, purpose tag, index); any consumer can
// derive further substreams without perturbing siblings, which is what makes
// output byte-identical regardless of how work is spread over threads.
class RandomStream {
public:
  RandomStream(std::uint64_t seed, std::string_view tag, std::uint64_t index = 0);

  // Child stream keyed relative to this one's identity.
  RandomStream derive(std::string_view tag, std::uint64_t index = 0) const;

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_; }

  // Uniform on the open interval (0,1).
  double next_double();
  // Bulk variant; equivalent to n successive next_double() calls.
  void fill_u01(double* out, std::size_t n);

  std::uint32_t next_u32();

  double exponential();                    // rate 1
  double normal();                         // standard normal, Box-Muller
  double gamma(double shape);              // scale 1, any shape > 0
  double beta(double a, double b);
  double uniform(double lo, double hi);
  int sign(double p_plus = 0.5);           // +1 with probability p_plus, else -1

private:
  RandomStream(std::uint64_t seed, std::uint64_t stream);

  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_;
  kernels::PhiloxKey key_;
  std::uint64_t block_ = 0;

  static constexpr std::size_t kBuf = 256;  // doubles; 128 blocks per refill
  std::array<double, kBuf> buf_;
  std::size_t pos_ = kBuf;

  double spare_normal_ = 0.0;
  bool have_spare_normal_ = false;
};

}  // namespace wpmix
