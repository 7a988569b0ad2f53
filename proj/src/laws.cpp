#include "wpmix/laws.hpp"

#include <cmath>
#include <limits>

#include "wpmix/errors.hpp"
#include "wpmix/roots.hpp"
#include "wpmix/special.hpp"

namespace wpmix {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

RadialLaw kotz3_radial(double K, double N, double r, double delta) {
  if (!(K > 0.0) || !(r > 0.0) || !(delta > 0.0))
    throw ConfigError("kotz3_radial: need K > 0, r > 0, delta > 0");

  // log phi(u) = ln K + N ln u - r u^delta on the decreasing branch.
  auto log_phi = [=](double u) {
    return std::log(K) + N * std::log(u) - r * std::pow(u, delta);
  };

  // Peak of phi; the usable branch starts there.
  const double peak = N > 0.0 ? std::pow(N / (r * delta), 1.0 / delta) : 0.0;

  double u0, log_c;
  if (N == 0.0) {
    if (K >= 1.0) {
      u0 = std::pow(std::log(K) / r, 1.0 / delta);
      log_c = 0.0;
    } else {
      u0 = 0.0;
      log_c = std::log(K);
    }
  } else if (N < 0.0) {
    // phi falls from +inf at 0+, so it always crosses 1.
    double lo = 1.0;
    while (log_phi(lo) < 0.0) lo *= 0.5;
    const double hi = expand_bracket_up(log_phi, lo, 1.0, std::fmax(lo, 1.0));
    u0 = brent(log_phi, lo, hi);
    log_c = 0.0;
  } else {
    const double at_peak = log_phi(peak);
    if (at_peak >= 0.0) {
      const double hi = expand_bracket_up(log_phi, peak, 1.0, std::fmax(peak, 1.0));
      u0 = brent(log_phi, peak, hi);
      log_c = 0.0;
    } else {
      u0 = peak;
      log_c = at_peak;
    }
  }

  RadialLaw law;
  law.name = "kotz3";
  law.lower = u0;
  law.upper = kInf;
  law.mda = Mda::gumbel;
  law.scaling_w = [=](double s) { return r * delta * std::pow(s, delta - 1.0); };

  auto sf = [=](double u) {
    if (u <= u0) return 1.0;
    return clamp01(std::exp(log_phi(u) - log_c));
  };
  law.sf = sf;
  law.cdf = [sf](double u) { return 1.0 - sf(u); };
  law.pdf = [=](double u) {
    if (u <= u0) return 0.0;
    return sf(u) * (r * delta * std::pow(u, delta - 1.0) - N / u);
  };
  law.quantile = [=](double p) {
    if (!(p >= 0.0 && p < 1.0))
      throw ConfigError("radial quantile: p outside [0,1)");
    if (p == 0.0) return u0;
    const double target = std::log1p(-p) + log_c;  // log of sf * C
    if (N == 0.0)
      return std::pow((std::log(K) - target) / r, 1.0 / delta);
    auto f = [&](double u) { return log_phi(u) - target; };
    const double hi = expand_bracket_up(f, u0, 1.0, std::fmax(u0, 1.0));
    return brent(f, u0, hi);
  };
  return law;
}

RadialLaw finite_endpoint_radial(double c1, double c2, double lambda, double xF) {
  if (!(c1 > 0.0) || !(c2 > 0.0) || !(lambda > 0.0) || !(xF > 0.0))
    throw ConfigError("finite_endpoint_radial: all parameters must be positive");

  auto log_phi = [=](double u) {
    return std::log(c1) - c2 * std::pow(xF - u, -lambda);
  };

  double u0, log_c;
  if (log_phi(0.0) >= 0.0) {
    u0 = xF - std::pow(c2 / std::log(c1), 1.0 / lambda);
    log_c = 0.0;
  } else {
    u0 = 0.0;
    log_c = log_phi(0.0);
  }

  RadialLaw law;
  law.name = "finite_endpoint";
  law.lower = u0;
  law.upper = xF;
  law.mda = Mda::gumbel;
  law.scaling_w = [=](double s) {
    return c2 * lambda * std::pow(xF - s, -lambda - 1.0);
  };

  auto sf = [=](double u) {
    if (u <= u0) return 1.0;
    if (u >= xF) return 0.0;
    return clamp01(std::exp(log_phi(u) - log_c));
  };
  law.sf = sf;
  law.cdf = [sf](double u) { return 1.0 - sf(u); };
  law.pdf = [=](double u) {
    if (u <= u0 || u >= xF) return 0.0;
    // Hazard of this family is exactly the scaling function.
    return sf(u) * c2 * lambda * std::pow(xF - u, -lambda - 1.0);
  };
  law.quantile = [=](double p) {
    if (!(p >= 0.0 && p < 1.0))
      throw ConfigError("radial quantile: p outside [0,1)");
    if (p == 0.0) return u0;
    const double target = std::log(c1) - std::log1p(-p) - log_c;
    return xF - std::pow(c2 / target, 1.0 / lambda);
  };
  return law;
}

RadialLaw pareto_radial(double lambda, double gamma) {
  if (!(lambda > 0.0) || !(gamma > 0.0))
    throw ConfigError("pareto_radial: need lambda > 0, gamma > 0");
  const double x0 = std::pow(lambda, 1.0 / gamma);

  RadialLaw law;
  law.name = "pareto";
  law.lower = x0;
  law.upper = kInf;
  law.mda = Mda::frechet;
  law.tail_gamma = gamma;
  law.sf = [=](double x) {
    return x <= x0 ? 1.0 : lambda * std::pow(x, -gamma);
  };
  law.cdf = [=](double x) {
    return x <= x0 ? 0.0 : 1.0 - lambda * std::pow(x, -gamma);
  };
  law.pdf = [=](double x) {
    return x <= x0 ? 0.0 : lambda * gamma * std::pow(x, -gamma - 1.0);
  };
  law.quantile = [=](double p) {
    if (!(p >= 0.0 && p < 1.0))
      throw ConfigError("radial quantile: p outside [0,1)");
    return std::pow(lambda / (1.0 - p), 1.0 / gamma);
  };
  return law;
}

RadialLaw power_endpoint_radial(double gamma) {
  if (!(gamma > 0.0)) throw ConfigError("power_endpoint_radial: need gamma > 0");

  RadialLaw law;
  law.name = "power_endpoint";
  law.lower = 0.0;
  law.upper = 1.0;
  law.mda = Mda::weibull;
  law.tail_gamma = gamma;
  law.upper_density_pow = gamma;
  law.sf = [=](double x) {
    if (x <= 0.0) return 1.0;
    if (x >= 1.0) return 0.0;
    return std::pow(1.0 - x, gamma);
  };
  law.cdf = [=](double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return 1.0 - std::pow(1.0 - x, gamma);
  };
  law.pdf = [=](double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return gamma * std::pow(1.0 - x, gamma - 1.0);
  };
  law.quantile = [=](double p) {
    if (!(p >= 0.0 && p < 1.0))
      throw ConfigError("radial quantile: p outside [0,1)");
    return 1.0 - std::pow(1.0 - p, 1.0 / gamma);
  };
  return law;
}

std::function<double(double)> hazard_scaling(const RadialLaw& law) {
  if (law.mda != Mda::gumbel || !law.scaling_w)
    throw ConfigError("hazard_scaling: law " + law.name + " is not Gumbel-type");
  return law.scaling_w;
}

MixingLaw beta_mixing(double a, double alpha) {
  if (!(a > 0.0) || !(alpha > 0.0))
    throw ConfigError("beta_mixing: need a > 0, alpha > 0");
  const double log_b = log_beta(a, alpha);

  MixingLaw m;
  m.name = "beta_mixing";
  m.alpha = alpha;
  m.low_pow = a;
  m.pdf = [=](double w) {
    if (w <= 0.0 || w >= 1.0) return 0.0;
    return std::exp((a - 1.0) * std::log(w) + (alpha - 1.0) * std::log1p(-w) -
                    log_b);
  };
  m.cdf = [=](double w) { return reg_beta(a, alpha, clamp01(w)); };
  // Beta(1,b) and Beta(a,1) invert in closed form; one uniform per draw.
  if (a == 1.0) {
    m.sample = [=](RandomStream& rng) {
      return -std::expm1(std::log1p(-rng.next_double()) / alpha);
    };
  } else if (alpha == 1.0) {
    m.sample = [=](RandomStream& rng) {
      return std::pow(rng.next_double(), 1.0 / a);
    };
  } else {
    m.sample = [=](RandomStream& rng) { return rng.beta(a, alpha); };
  }
  m.envelope_pow = a - 1.0;
  m.envelope_c =
      std::exp(-log_b) * (alpha >= 1.0 ? 1.0 : std::pow(0.5, alpha - 1.0));
  return m;
}

MixingLaw power_beta_mixing(double delta, double a, double b) {
  if (!(delta > 0.0) || !(a > 0.0) || !(b > 0.0))
    throw ConfigError("power_beta_mixing: need delta > 0, a > 0, b > 0");
  const double log_bab = log_beta(a, b);

  MixingLaw m;
  m.name = "power_beta_mixing";
  m.alpha = b;
  m.low_pow = delta * a;
  m.pdf = [=](double w) {
    if (w <= 0.0 || w >= 1.0) return 0.0;
    const double wd = std::pow(w, delta);
    return std::exp(std::log(delta) + (delta * a - 1.0) * std::log(w) +
                    (b - 1.0) * std::log1p(-wd) - log_bab);
  };
  m.cdf = [=](double w) { return reg_beta(a, b, std::pow(clamp01(w), delta)); };
  m.sample = [=](RandomStream& rng) {
    return std::pow(rng.beta(a, b), 1.0 / delta);
  };
  m.envelope_pow = delta * a - 1.0;
  const double edge = 1.0 - std::pow(0.5, delta);
  m.envelope_c = delta * std::exp(-log_bab) *
                 (b >= 1.0 ? 1.0 : std::pow(edge, b - 1.0));
  return m;
}

MixingLaw point_mass_mixing(double w0) {
  if (!(w0 > 0.0 && w0 <= 1.0))
    throw ConfigError("point_mass_mixing: need w0 in (0,1]");
  MixingLaw m;
  m.name = "point_mass";
  m.degenerate = true;
  m.atom = w0;
  m.alpha = std::numeric_limits<double>::quiet_NaN();
  m.low_pow = std::numeric_limits<double>::quiet_NaN();
  m.sample = [=](RandomStream&) { return w0; };
  m.cdf = [=](double w) { return w < w0 ? 0.0 : 1.0; };
  m.pdf = [](double) -> double {
    throw ConfigError("point_mass_mixing carries no density");
  };
  return m;
}

}  // namespace wpmix
