#pragma once

namespace wpmix::oracles {

// Exponential integral E1(x) = integral_x^inf e^-t / t dt for x > 0.
// Series below 1, Lentz continued fraction above; no shared code with the
// adaptive quadrature used by the conditional laws, so the two can
// cross-check each other.
double expint_e1(double x);

}  // namespace wpmix::oracles
