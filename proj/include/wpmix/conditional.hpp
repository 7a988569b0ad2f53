#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "wpmix/geometry.hpp"
#include "wpmix/interp.hpp"
#include "wpmix/laws.hpp"
#include "wpmix/linalg.hpp"
#include "wpmix/mixture.hpp"
#include "wpmix/quadrature.hpp"

namespace wpmix {

// Law of the conditional radial factor R* given the J block sits at A-norm
// tau: the distribution on (0, (x_F^p - tau^p)^(1/p)) with
//   P(R* > z) = T((tau^p + z^p)^(1/p)) / T(tau),
//   T(s) = integral_s^{x_F} g(tau/r) r^{-1} dF(r).
// All integrals run through adaptive quadrature with endpoint substitutions
// chosen from the law metadata, so cdf/sf/pdf are accurate to ~1e-10.
class ConditionalRadiusLaw {
public:
    ConditionalRadiusLaw(RadialLaw radial, MixingLaw mixing, double tau,
                         double p, QuadOptions opt = {});

    double tau() const { return tau_; }
    double p() const { return p_; }
    double upper() const { return z_max_; }  // may be +inf
    double normalizer() const { return den_; }

    double cdf(double z) const;
    double sf(double z) const;   // computed tail-first, relative-accurate
    double pdf(double z) const;
    double quantile(double prob) const;

    // T(s) above; exposed for the asymptotic ratio checks.
    double tail_integral(double s) const;

private:
    RadialLaw radial_;
    MixingLaw mixing_;
    double tau_, p_;
    double den_;
    double z_max_;
    QuadOptions opt_;
};

// Full conditional law of X_I given X_J = a_J for a mixture model with
// A_JI = 0: the random vector A_II R* U_I + A_IJ A_JJ^{-1} a_J.
struct ConditionalDistribution {
    ConditionalRadiusLaw radius;
    Matrix a_ii;                // |I| x |I|
    std::vector<double> shift;  // A_IJ A_JJ^{-1} a_J
    double q_i;
};

ConditionalDistribution make_conditional(const WpMixtureModel& model,
                                         const std::vector<double>& a_j,
                                         QuadOptions opt = {});

// Inverse-cdf sampler for a positive scalar law. Builds a monotone cubic
// through exact cdf knots once, then draws by inverting the interpolant;
// uniforms landing outside the covered cdf range fall back to the exact
// quantile. The sampled distribution is the interpolant itself, which
// matches the exact cdf to interpolation error (knots are exact).
class ScalarLawSampler {
public:
    ScalarLawSampler(std::function<double(double)> cdf,
                     std::function<double(double)> quantile,
                     std::size_t knots = 512);

    double draw(RandomStream& rng) const;
    double invert(double u) const;

private:
    std::function<double(double)> cdf_, quantile_;
    std::vector<double> zs_, us_;
    MonotoneCubic fwd_;
};

// Draws n samples of X_I | X_J = a_J, coordinate-major (per draw: radius
// first, then the I-block direction).
std::vector<std::vector<double>> sample_conditional(
    const ConditionalDistribution& dist, std::size_t n, RandomStream& rng);

// Radii h(x) = ||A_II^{-1} (x - shift)||_{q_I} of conditional samples.
std::vector<double> conditional_radii(const ConditionalDistribution& dist,
                                      const std::vector<std::vector<double>>& x);

// Brute-force check: sample the unconditional mixture and keep draws whose
// J coordinates all land within eps of a_J. Throws InconclusiveOracle when
// fewer than min_accept survive the proposal budget.
struct SlabSample {
    std::vector<std::vector<double>> x_i;   // coordinate-major, I block
    std::size_t accepted = 0;
    std::size_t proposals = 0;
};

SlabSample slab_conditional_oracle(const WpMixtureModel& model,
                                   const std::vector<double>& a_j, double eps,
                                   std::size_t budget, RandomStream& rng,
                                   std::size_t min_accept = 1000);

}  // namespace wpmix
