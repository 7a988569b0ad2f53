#include "wpmix/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "wpmix/errors.hpp"

namespace wpmix {

namespace {

// 15-point Kronrod extension of 7-point Gauss (QUADPACK dqk15 constants).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
  double a, b;
  double value;
  double error;
};

Piece gk15(const std::function<double(double)>& f, double a, double b) {
  const double h = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  const double fc = f(mid);
  double result_k = kWgk[7] * fc;
  double result_g = kWg[3] * fc;
  double resabs = std::fabs(result_k);
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double f1 = f(mid - dx);
    const double f2 = f(mid + dx);
    result_k += kWgk[j] * (f1 + f2);
    resabs += kWgk[j] * (std::fabs(f1) + std::fabs(f2));
    if (j % 2 == 1) result_g += kWg[j / 2] * (f1 + f2);
  }
  const double value = result_k * h;
  double err = std::fabs((result_k - result_g) * h);
  // QUADPACK's roundoff-aware rescaling of the raw Gauss/Kronrod gap.
  const double scale = std::fabs(resabs * h);
  if (scale > 0.0 && err > 0.0)
    err = scale * std::min(1.0, std::pow(200.0 * err / scale, 1.5));
  if (std::isnan(value))
    throw NumericError("quadrature: integrand returned NaN");
  return {a, b, value, err};
}

struct ByError {
  bool operator()(const Piece& lhs, const Piece& rhs) const {
    return lhs.error < rhs.error;
  }
};

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadOptions& opt) {
  if (a == b) return {0.0, 0.0, 0};
  std::priority_queue<Piece, std::vector<Piece>, ByError> heap;
  heap.push(gk15(f, a, b));
  double total = heap.top().value;
  double err = heap.top().error;
  int n = 1;
  while (err > std::max(opt.abs_tol, opt.rel_tol * std::fabs(total))) {
    if (n >= opt.max_intervals)
      throw NumericError("quadrature: interval budget exhausted");
    const Piece worst = heap.top();
    if (worst.error == 0.0) break;  // nothing left is refinable
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Not splittable at double precision; stop charging its error.
      err -= worst.error;
      Piece spent = worst;
      spent.error = 0.0;
      heap.push(spent);
      continue;
    }
    const Piece left = gk15(f, worst.a, mid);
    const Piece right = gk15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++n;
  }
  return {total, err, n};
}

QuadResult integrate_to_inf(const std::function<double(double)>& f, double a,
                            const QuadOptions& opt) {
  auto g = [&f, a](double t) {
    const double om = 1.0 - t;
    const double r = a + t / om;
    return f(r) / (om * om);
  };
  // The open end at t=1 maps to r=inf; the GK nodes never touch endpoints.
  return integrate(g, 0.0, 1.0, opt);
}

}  // namespace wpmix
