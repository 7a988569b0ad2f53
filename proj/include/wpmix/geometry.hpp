#pragma once

#include <cstddef>
#include <vector>

#include "wpmix/linalg.hpp"
#include "wpmix/random.hpp"

namespace wpmix {

// Complementary index blocks of {0,...,d-1}. I is the block reconstructed by
// conditioning; J is the block conditioned on.
struct IndexPartition {
  std::size_t d = 0;
  std::vector<std::size_t> I, J;
};

// Validates 0-based indices: I nonempty, strictly increasing, inside range;
// J is the complement (also nonempty).
IndexPartition make_partition(std::size_t d, std::vector<std::size_t> I);

// Lq "norm" for q > 0: (sum |x_i|^q)^(1/q). For q < 1 this is the usual
// quasinorm; homogeneity still holds, which is all the models need.
double lq_norm(const std::vector<double>& x, double q);

// Batch variant over a coordinate-major block: coords[c][i] is coordinate c
// of sample i. Runs on the dispatched kernels for q in {1,2}.
std::vector<double> lq_norm_batch(const std::vector<std::vector<double>>& coords,
                                  double q);

// ||A_JJ^{-1} a_J||_q with a condition guard (rejects estimates above 1e12).
double a_norm(const Matrix& a_jj, const std::vector<double>& a_j, double q);

// Cone measure on the unit Lq sphere in R^dim: normalize a vector of
// independent symmetric q-exponential coordinates. dim == 1 degenerates to
// a fair +-1 sign. For q = 2 this is the uniform (surface) distribution.
class SphereSampler {
public:
  SphereSampler(std::size_t dim, double q);

  std::size_t dim() const { return dim_; }
  double q() const { return q_; }

  std::vector<double> sample(RandomStream& rng) const;
  void sample(RandomStream& rng, std::vector<double>& out) const;

private:
  std::size_t dim_;
  double q_;
};

}  // namespace wpmix
