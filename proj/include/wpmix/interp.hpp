#pragma once

#include <vector>

namespace wpmix {

// Monotone cubic interpolant (Fritsch-Carlson slopes). Built on strictly
// increasing x with nondecreasing y; evaluation outside the knot range
// clamps to the end values.
class MonotoneCubic {
public:
  MonotoneCubic() = default;
  MonotoneCubic(std::vector<double> x, std::vector<double> y);

  double operator()(double x) const;
  double derivative(double x) const;

  const std::vector<double>& knots_x() const { return x_; }
  const std::vector<double>& knots_y() const { return y_; }

private:
  std::size_t segment(double x) const;

  std::vector<double> x_, y_, slope_;
};

}  // namespace wpmix
