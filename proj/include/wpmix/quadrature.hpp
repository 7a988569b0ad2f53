#pragma once

#include <functional>
#include <limits>

namespace wpmix {

struct QuadOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;   // floor for integrals near zero
  int max_intervals = 4000;
};

struct QuadResult {
  double value;
  double error;      // estimated absolute error
  int intervals;     // intervals at termination
};

// Globally adaptive 15-point Gauss-Kronrod rule on a finite interval:
// bisect the interval with the largest error estimate until the summed
// error meets max(rel_tol*|I|, abs_tol). Throws NumericError when the
// interval budget is exhausted before that.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadOptions& opt = {});

// Same rule on [a, inf) via the substitution r = a + t/(1-t).
QuadResult integrate_to_inf(const std::function<double(double)>& f, double a,
                            const QuadOptions& opt = {});

}  // namespace wpmix
