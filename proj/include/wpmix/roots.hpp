#pragma once

#include <functional>

namespace wpmix {

struct RootOptions {
  double xtol = 1e-13;   // relative bracket width
  double ftol = 0.0;     // early-out on |f|; 0 disables
  int max_iter = 200;
};

// Brent's method on a sign-changing bracket [a,b]. Throws NumericError if
// the bracket is invalid or the iteration budget runs out.
double brent(const std::function<double(double)>& f, double a, double b,
             const RootOptions& opt = {});

// Grow [a,b] geometrically to the right until f changes sign (f(a) known to
// have the sign of `fa`). Returns the sign-changing b. Throws NumericError
// after max_grow doublings.
double expand_bracket_up(const std::function<double(double)>& f, double a,
                         double fa, double step, int max_grow = 200);

}  // namespace wpmix
