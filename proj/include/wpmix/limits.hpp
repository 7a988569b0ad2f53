#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "wpmix/conditional.hpp"
#include "wpmix/geometry.hpp"
#include "wpmix/laws.hpp"
#include "wpmix/linalg.hpp"
#include "wpmix/mixture.hpp"
#include "wpmix/random.hpp"

namespace wpmix {

// Scalar limit law of the normalized conditional radius.
struct LimitLaw {
    std::string name;
    double lower = 0.0;
    double upper = 0.0;  // may be +inf
    std::function<double(double)> cdf, pdf, quantile;
    std::function<double(RandomStream&)> sample;
};

// R^p ~ Gamma(alpha, rate 1/p); support (0, inf).
LimitLaw kotz_limit(double alpha, double p);

// R^p ~ Beta(alpha, gamma); support (0, 1).
LimitLaw weibull_limit(double alpha, double gamma, double p);

// R ~ Q_{M, g, c} with M(s) = 1 - c^gamma s^-gamma on [c, inf): the
// conditional radius law of an exact Pareto radial at level c.
LimitLaw frechet_limit(double c, double gamma, const MixingLaw& mixing, double p);

// Normalizing factors: h = (tau^(1-p) w(tau))^(1/p) for the Gumbel regime,
// h = (p a_n)^(-1/p) for the Weibull regime.
double gumbel_scaling_h(double tau, double w_tau, double p);
double weibull_scaling_h(double a_n, double p);

// One draw of a joint exceedance limit: the normalized I block plus the
// normalized overshoot of the conditioning coordinate.
struct JointLimitSample {
    std::vector<double> xi;
    double e = 0.0;
};

// (A_II R_alpha U_I + E 1_p A_IJ, E) with E ~ Exp(1), 1_p = [p == 1].
// Stream order per draw: R, U_I, E.
class GumbelJointLimit {
public:
    GumbelJointLimit(double alpha, double p, Matrix a_ii,
                     std::vector<double> a_ij, double q_i);
    void sample(RandomStream& rng, JointLimitSample& out) const;

private:
    double alpha_, p_;
    Matrix a_ii_;
    std::vector<double> a_ij_;
    SphereSampler sph_;
};

// (|E|^(1/p) (A_II R U_I - 1_p A_IJ), E) with R^p ~ Beta(alpha, gamma) and
// P(E <= x) = 1 - |x|^(alpha+gamma) on (-1, 0), all independent.
// Stream order per draw: R, U_I, V (the uniform behind E).
class WeibullJointLimit {
public:
    WeibullJointLimit(double alpha, double gamma, double p, Matrix a_ii,
                      std::vector<double> a_ij, double q_i);
    void sample(RandomStream& rng, JointLimitSample& out) const;

private:
    double alpha_, gamma_, p_;
    Matrix a_ii_;
    std::vector<double> a_ij_;
    SphereSampler sph_;
};

// Rejection-conditioned exceedance samples. Both experiments require the
// last coordinate as the conditioning block with A_JJ = 1 and, for
// p in (0,1), A_IJ = 0; violations raise ConfigError.
struct ExceedanceSample {
    std::vector<std::vector<double>> xi;  // coordinate-major, normalized
    std::vector<double> e;                // normalized overshoot
    std::size_t accepted = 0;
    std::size_t proposals = 0;
};

// Keeps X_d > u and emits (h (X_I - u A_IJ), w(u)(X_d - u)) with
// h = (u^(1-p) w(u))^(1/p).
ExceedanceSample gumbel_exceedance(const WpMixtureModel& model, double u,
                                   std::size_t budget, RandomStream& rng,
                                   std::size_t min_accept = 1000);

// Keeps X_d > 1 - a_n (endpoint at 1) and emits
// ((p a_n)^(-1/p) (X_I - A_IJ), (X_d - 1)/a_n).
ExceedanceSample weibull_exceedance(const WpMixtureModel& model, double a_n,
                                    std::size_t budget, RandomStream& rng,
                                    std::size_t min_accept = 1000);

}  // namespace wpmix
