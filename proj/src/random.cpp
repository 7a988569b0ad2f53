#include "wpmix/random.hpp"

#include <cmath>

#include "wpmix/errors.hpp"

namespace wpmix {

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ull;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ull;

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = kFnvOffset;
  for (unsigned char c : s) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

// Final mixer from splitmix64; spreads tag/index bits over the stream id.
std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t stream_of(std::uint64_t base, std::string_view tag,
                        std::uint64_t index) {
  return mix(base ^ fnv1a(tag) ^ mix(index));
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed),
      stream_(stream),
      key_{std::uint32_t(seed), std::uint32_t(seed >> 32)} {}

RandomStream::RandomStream(std::uint64_t seed, std::string_view tag,
                           std::uint64_t index)
    : RandomStream(seed, stream_of(0, tag, index)) {}

RandomStream RandomStream::derive(std::string_view tag,
                                  std::uint64_t index) const {
  return RandomStream(seed_, stream_of(stream_, tag, index));
}

void RandomStream::refill() {
  kernels::philox_u01(key_, stream_, block_, kBuf / 2, buf_.data());
  block_ += kBuf / 2;
  pos_ = 0;
}

double RandomStream::next_double() {
  if (pos_ == kBuf) refill();
  return buf_[pos_++];
}

void RandomStream::fill_u01(double* out, std::size_t n) {
  std::size_t i = 0;
  // Drain whatever the buffer still holds, then generate straight into out.
  while (i < n && pos_ < kBuf) out[i++] = buf_[pos_++];
  const std::size_t whole = (n - i) / 2;
  if (whole) {
    kernels::philox_u01(key_, stream_, block_, whole, out + i);
    block_ += whole;
    i += 2 * whole;
  }
  while (i < n) out[i++] = next_double();
}

std::uint32_t RandomStream::next_u32() {
  // Rescaling a double keeps one consumption path; 32 bits fit losslessly.
  return std::uint32_t(next_double() * 4294967296.0);
}

double RandomStream::exponential() { return -std::log(next_double()); }

double RandomStream::normal() {
  if (have_spare_normal_) {
    have_spare_normal_ = false;
    return spare_normal_;
  }
  const double u1 = next_double();
  const double u2 = next_double();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 6.283185307179586476925286766559 * u2;
  spare_normal_ = r * std::sin(t);
  have_spare_normal_ = true;
  return r * std::cos(t);
}

double RandomStream::gamma(double shape) {
  if (!(shape > 0.0)) throw ConfigError("gamma shape must be positive");
  // Marsaglia-Tsang squeeze; shapes below 1 are boosted and corrected by
  // a power of an extra uniform.
  if (shape < 1.0) {
    const double g = gamma(shape + 1.0);
    return g * std::pow(next_double(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = next_double();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double RandomStream::beta(double a, double b) {
  const double x = gamma(a);
  const double y = gamma(b);
  return x / (x + y);
}

double RandomStream::uniform(double lo, double hi) {
  return lo + (hi - lo) * next_double();
}

int RandomStream::sign(double p_plus) {
  return next_double() < p_plus ? 1 : -1;
}

}  // namespace wpmix
