#include "wpmix/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "wpmix/errors.hpp"
#include "wpmix/kernels.hpp"

namespace wpmix {

IndexPartition make_partition(std::size_t d, std::vector<std::size_t> I) {
  if (d < 2) throw ConfigError("make_partition: need d >= 2");
  if (I.empty() || I.size() >= d)
    throw ConfigError("make_partition: I must be a nonempty strict subset");
  for (std::size_t k = 0; k < I.size(); ++k) {
    if (I[k] >= d) throw ConfigError("make_partition: index out of range");
    if (k && I[k] <= I[k - 1])
      throw ConfigError("make_partition: I must be strictly increasing");
  }
  IndexPartition p;
  p.d = d;
  p.I = std::move(I);
  std::vector<bool> in_i(d, false);
  for (std::size_t i : p.I) in_i[i] = true;
  for (std::size_t j = 0; j < d; ++j)
    if (!in_i[j]) p.J.push_back(j);
  return p;
}

double lq_norm(const std::vector<double>& x, double q) {
  if (!(q > 0.0)) throw ConfigError("lq_norm: q must be positive");
  if (x.empty()) throw ConfigError("lq_norm: empty vector");
  if (q == 1.0) {
    double s = 0.0;
    for (double v : x) s += std::fabs(v);
    return s;
  }
  if (q == 2.0) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
  }
  double s = 0.0;
  for (double v : x) s += std::pow(std::fabs(v), q);
  return std::pow(s, 1.0 / q);
}

std::vector<double> lq_norm_batch(const std::vector<std::vector<double>>& coords,
                                  double q) {
  if (coords.empty()) throw ConfigError("lq_norm_batch: no coordinates");
  const std::size_t n = coords[0].size();
  for (const auto& c : coords)
    if (c.size() != n) throw ConfigError("lq_norm_batch: ragged block");
  std::vector<double> acc(n, 0.0);
  if (q == 1.0) {
    for (const auto& c : coords) kernels::accumulate_abs(acc.data(), c.data(), n);
    return acc;
  }
  if (q == 2.0) {
    for (const auto& c : coords) kernels::accumulate_sq(acc.data(), c.data(), n);
    kernels::sqrt_inplace(acc.data(), n);
    return acc;
  }
  for (const auto& c : coords)
    for (std::size_t i = 0; i < n; ++i) acc[i] += std::pow(std::fabs(c[i]), q);
  const double inv_q = 1.0 / q;
  for (double& v : acc) v = std::pow(v, inv_q);
  return acc;
}

double a_norm(const Matrix& a_jj, const std::vector<double>& a_j, double q) {
  LuSolver lu(a_jj);
  if (lu.singular() || lu.condition() > 1e12)
    throw ConfigError("a_norm: conditioning block is singular or ill-conditioned");
  return lq_norm(lu.solve(a_j), q);
}

SphereSampler::SphereSampler(std::size_t dim, double q) : dim_(dim), q_(q) {
  if (dim_ == 0) throw ConfigError("SphereSampler: dim must be >= 1");
  if (!(q_ > 0.0)) throw ConfigError("SphereSampler: q must be positive");
}

std::vector<double> SphereSampler::sample(RandomStream& rng) const {
  std::vector<double> y;
  sample(rng, y);
  return y;
}

void SphereSampler::sample(RandomStream& rng, std::vector<double>& y) const {
  y.resize(dim_);
  if (dim_ == 1) {
    y[0] = double(rng.sign());
    return;
  }
  // |y_i|^q ~ Gamma(1/q, 1) with a random sign has density prop. to
  // exp(-|y|^q); normalizing by the Lq norm lands on the cone measure.
  // q = 2 and q = 1 take the classic shortcuts (normals, exponentials).
  if (q_ == 2.0) {
    for (std::size_t i = 0; i < dim_; ++i) y[i] = rng.normal();
  } else if (q_ == 1.0) {
    for (std::size_t i = 0; i < dim_; ++i)
      y[i] = rng.sign() * rng.exponential();
  } else {
    const double inv_q = 1.0 / q_;
    for (std::size_t i = 0; i < dim_; ++i)
      y[i] = rng.sign() * std::pow(rng.gamma(inv_q), inv_q);
  }
  const double norm = lq_norm(y, q_);
  for (double& v : y) v /= norm;
}

}  // namespace wpmix
