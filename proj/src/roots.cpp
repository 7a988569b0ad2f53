#include "wpmix/roots.hpp"

#include <cmath>

#include "wpmix/errors.hpp"

namespace wpmix {

double brent(const std::function<double(double)>& f, double a, double b,
             const RootOptions& opt) {
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (std::isnan(fa) || std::isnan(fb))
    throw NumericError("brent: NaN at bracket endpoint");
  if ((fa > 0) == (fb > 0)) throw NumericError("brent: no sign change in bracket");

  double c = a, fc = fa;
  double d = b - a, e = d;
  for (int it = 0; it < opt.max_iter; ++it) {
    if ((fb > 0) == (fc > 0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::fabs(fc) < std::fabs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol = 2.0 * opt.xtol * std::fabs(b) + 0.5 * opt.xtol;
    const double m = 0.5 * (c - b);
    if (std::fabs(m) <= tol || fb == 0.0 ||
        (opt.ftol > 0.0 && std::fabs(fb) <= opt.ftol))
      return b;
    if (std::fabs(e) < tol || std::fabs(fa) <= std::fabs(fb)) {
      d = e = m;  // bisection
    } else {
      double p, q;
      const double s = fb / fa;
      if (a == c) {  // secant
        p = 2.0 * m * s;
        q = 1.0 - s;
      } else {  // inverse quadratic
        const double qq = fa / fc, r = fb / fc;
        p = s * (2.0 * m * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0) q = -q; else p = -p;
      if (2.0 * p < std::fmin(3.0 * m * q - std::fabs(tol * q), std::fabs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = e = m;
      }
    }
    a = b;
    fa = fb;
    b += std::fabs(d) > tol ? d : (m > 0 ? tol : -tol);
    fb = f(b);
  }
  throw NumericError("brent: iteration limit reached");
}

double expand_bracket_up(const std::function<double(double)>& f, double a,
                         double fa, double step, int max_grow) {
  double b = a + step;
  for (int i = 0; i < max_grow; ++i) {
    const double fb = f(b);
    if (fb == 0.0 || (fa > 0) != (fb > 0)) return b;
    step *= 2.0;
    b += step;
  }
  throw NumericError("expand_bracket_up: no sign change found");
}

}  // namespace wpmix
