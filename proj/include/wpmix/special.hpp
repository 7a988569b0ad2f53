#pragma once

namespace wpmix {

inline double clamp01(double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); }

// Regularized incomplete gamma P(a,x) = gamma(a,x)/Gamma(a) and its
// complement Q(a,x). Series for x < a+1, continued fraction otherwise;
// absolute accuracy ~1e-14, well inside the 1e-12 the callers assume.
double reg_gamma_p(double a, double x);
double reg_gamma_q(double a, double x);

// Regularized incomplete beta I_x(a,b) via the Lentz continued fraction.
double reg_beta(double a, double b, double x);

double log_beta(double a, double b);

// CDFs and quantiles built on the above. gamma_cdf takes the rate
// convention: density x^{a-1} e^{-rate*x} rate^a / Gamma(a).
double gamma_cdf(double shape, double rate, double x);
double gamma_quantile(double shape, double rate, double p);
double beta_cdf(double a, double b, double x);
double beta_quantile(double a, double b, double p);

double normal_cdf(double x);

}  // namespace wpmix
