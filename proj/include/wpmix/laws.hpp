#pragma once

#include <functional>
#include <string>

#include "wpmix/random.hpp"

namespace wpmix {

enum class Mda { gumbel, weibull, frechet };

// Distribution of the radial factor R > 0. Laws built by the factory
// functions below carry everything the conditional/limit machinery needs:
// exact tail, density, quantile, and the max-domain-of-attraction metadata
// (scaling function w for Gumbel, tail index gamma otherwise).
struct RadialLaw {
  std::string name;
  double lower = 0.0;   // support start u0 (cdf is 0 at or below it)
  double upper = 0.0;   // right endpoint x_F, may be +inf
  std::function<double(double)> cdf, sf, pdf, quantile;
  Mda mda = Mda::gumbel;
  std::function<double(double)> scaling_w;  // Gumbel only
  double tail_gamma = 0.0;                  // Weibull/Frechet index
  // Density behaves like (upper - x)^(upper_density_pow - 1) near a finite
  // right endpoint; quadrature uses this to substitute away the singularity.
  double upper_density_pow = 1.0;
};

// Survival K*u^N*exp(-r*u^delta) from the point u0 where the expression
// reaches 1 (F == 0 below; all mass above). If the expression never reaches
// 1 -- possible for K < 1 or an interior maximum below 1 -- the tail is
// anchored at its admissible maximum and renormalized by a constant, which
// leaves hazard and every MDA ratio untouched. Gumbel with w(s)=r*delta*s^(delta-1).
RadialLaw kotz3_radial(double K, double N, double r, double delta);

// Survival c1*exp(-c2*(xF-u)^-lambda) near the finite endpoint xF, same
// truncation scheme as kotz3. Gumbel with w(s)=c2*lambda*(xF-s)^-(lambda+1).
RadialLaw finite_endpoint_radial(double c1, double c2, double lambda, double xF);

// Exact Pareto: survival lambda*x^-gamma for x >= lambda^(1/gamma). Frechet.
RadialLaw pareto_radial(double lambda, double gamma);

// F(x) = 1-(1-x)^gamma on [0,1]. Weibull with index gamma.
RadialLaw power_endpoint_radial(double gamma);

// Scaling function of a Gumbel-MDA radial law; rejects other laws.
std::function<double(double)> hazard_scaling(const RadialLaw& law);

// Distribution of the mixing factor W_p on (0,1). alpha is the regular
// variation index of the density at 1 (g(1-t) ~ const*t^(alpha-1)); low_pow
// the analogue at 0. The envelope fields witness g(x) <= c*x^pow on (0,1/2].
struct MixingLaw {
  std::string name;
  std::function<double(double)> pdf, cdf;
  std::function<double(RandomStream&)> sample;
  double alpha = 1.0;
  double low_pow = 1.0;
  double envelope_c = 0.0, envelope_pow = 0.0;
  bool degenerate = false;  // point mass; no density, sampling only
  double atom = 1.0;
};

// W_p ~ Beta(a, alpha).
MixingLaw beta_mixing(double a, double alpha);

// W_p^delta ~ Beta(a, b); covers the spherical case (delta=2, a=m/2,
// b=(d-m)/2) and general power transforms. alpha = b.
MixingLaw power_beta_mixing(double delta, double a, double b);

// Degenerate W_p == w0; for sampling-path tests, not conditional laws.
MixingLaw point_mass_mixing(double w0);

}  // namespace wpmix
