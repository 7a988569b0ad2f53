#include "wpmix/limits.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <utility>

#include "wpmix/errors.hpp"
#include "wpmix/special.hpp"

namespace wpmix {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_exceedance_shape(const WpMixtureModel& model) {
    const IndexPartition& part = model.part;
    if (part.J.size() != 1 || part.J[0] != part.d - 1)
        throw ConfigError("exceedance: conditioning block must be the last coordinate");
    if (model.a(part.d - 1, part.d - 1) != 1.0)
        throw ConfigError("exceedance: needs A_JJ = 1");
    for (std::size_t c = 0; c + 1 < part.d; ++c)
        if (model.a(part.d - 1, c) != 0.0)
            throw ConfigError("exceedance: needs A_JI = 0");
    if (model.p < 1.0)
        for (std::size_t r = 0; r + 1 < part.d; ++r)
            if (model.a(r, part.d - 1) != 0.0)
                throw ConfigError("exceedance: p < 1 needs A_IJ = 0");
}

}  // namespace

LimitLaw kotz_limit(double alpha, double p) {
    if (!(alpha > 0.0) || !(p > 0.0))
        throw ConfigError("kotz_limit: need alpha > 0, p > 0");
    LimitLaw law;
    law.name = "kotz_gamma";
    law.lower = 0.0;
    law.upper = kInf;
    law.cdf = [=](double z) {
        return z <= 0.0 ? 0.0 : gamma_cdf(alpha, 1.0 / p, std::pow(z, p));
    };
    law.pdf = [=](double z) {
        if (z <= 0.0) return 0.0;
        const double zp = std::pow(z, p);
        return std::exp((alpha * p - 1.0) * std::log(z) - zp / p +
                        (1.0 - alpha) * std::log(p) - std::lgamma(alpha));
    };
    law.quantile = [=](double u) {
        return std::pow(gamma_quantile(alpha, 1.0 / p, u), 1.0 / p);
    };
    law.sample = [=](RandomStream& rng) {
        return std::pow(p * rng.gamma(alpha), 1.0 / p);
    };
    return law;
}

LimitLaw weibull_limit(double alpha, double gamma, double p) {
    if (!(alpha > 0.0) || !(gamma > 0.0) || !(p > 0.0))
        throw ConfigError("weibull_limit: need alpha, gamma, p > 0");
    const double log_bab = log_beta(alpha, gamma);
    LimitLaw law;
    law.name = "weibull_beta";
    law.lower = 0.0;
    law.upper = 1.0;
    law.cdf = [=](double z) { return beta_cdf(alpha, gamma, std::pow(clamp01(z), p)); };
    law.pdf = [=](double z) {
        if (z <= 0.0 || z >= 1.0) return 0.0;
        const double zp = std::pow(z, p);
        return std::exp(std::log(p) + (alpha * p - 1.0) * std::log(z) +
                        (gamma - 1.0) * std::log1p(-zp) - log_bab);
    };
    law.quantile = [=](double u) {
        return std::pow(beta_quantile(alpha, gamma, u), 1.0 / p);
    };
    law.sample = [=](RandomStream& rng) {
        return std::pow(rng.beta(alpha, gamma), 1.0 / p);
    };
    return law;
}

LimitLaw frechet_limit(double c, double gamma, const MixingLaw& mixing, double p) {
    if (!(c > 0.0) || !(gamma > 0.0) || !(p > 0.0))
        throw ConfigError("frechet_limit: need c, gamma, p > 0");
    auto q = std::make_shared<ConditionalRadiusLaw>(
        pareto_radial(std::pow(c, gamma), gamma), mixing, c, p);
    LimitLaw law;
    law.name = "frechet_q";
    law.lower = 0.0;
    law.upper = kInf;
    law.cdf = [q](double z) { return q->cdf(z); };
    law.pdf = [q](double z) { return q->pdf(z); };
    law.quantile = [q](double u) { return q->quantile(u); };
    auto sampler = std::make_shared<ScalarLawSampler>(
        [q](double z) { return q->cdf(z); },
        [q](double u) { return q->quantile(u); });
    law.sample = [sampler](RandomStream& rng) { return sampler->draw(rng); };
    return law;
}

double gumbel_scaling_h(double tau, double w_tau, double p) {
    if (!(tau > 0.0) || !(w_tau > 0.0) || !(p > 0.0))
        throw ConfigError("gumbel_scaling_h: need tau, w, p > 0");
    return std::pow(std::pow(tau, 1.0 - p) * w_tau, 1.0 / p);
}

double weibull_scaling_h(double a_n, double p) {
    if (!(a_n > 0.0) || !(p > 0.0))
        throw ConfigError("weibull_scaling_h: need a_n, p > 0");
    return std::pow(p * a_n, -1.0 / p);
}

GumbelJointLimit::GumbelJointLimit(double alpha, double p, Matrix a_ii,
                                   std::vector<double> a_ij, double q_i)
    : alpha_(alpha),
      p_(p),
      a_ii_(std::move(a_ii)),
      a_ij_(std::move(a_ij)),
      sph_(a_ii_.rows(), q_i) {
    if (!(alpha_ > 0.0) || !(p_ > 0.0))
        throw ConfigError("joint limit: need alpha > 0, p > 0");
    if (a_ij_.size() != a_ii_.rows())
        throw ConfigError("joint limit: A_IJ size mismatch");
}

void GumbelJointLimit::sample(RandomStream& rng, JointLimitSample& out) const {
    const std::size_t m = a_ii_.rows();
    const double r = std::pow(p_ * rng.gamma(alpha_), 1.0 / p_);
    thread_local std::vector<double> dir, scaled;
    sph_.sample(rng, dir);
    scaled.resize(m);
    for (std::size_t t = 0; t < m; ++t) scaled[t] = r * dir[t];
    a_ii_.matvec(scaled, out.xi);
    out.e = rng.exponential();
    if (p_ == 1.0)
        for (std::size_t t = 0; t < m; ++t) out.xi[t] += out.e * a_ij_[t];
}

WeibullJointLimit::WeibullJointLimit(double alpha, double gamma, double p,
                                     Matrix a_ii, std::vector<double> a_ij,
                                     double q_i)
    : alpha_(alpha),
      gamma_(gamma),
      p_(p),
      a_ii_(std::move(a_ii)),
      a_ij_(std::move(a_ij)),
      sph_(a_ii_.rows(), q_i) {
    if (!(alpha_ > 0.0) || !(gamma_ > 0.0) || !(p_ > 0.0))
        throw ConfigError("joint limit: need alpha, gamma, p > 0");
    if (a_ij_.size() != a_ii_.rows())
        throw ConfigError("joint limit: A_IJ size mismatch");
}

void WeibullJointLimit::sample(RandomStream& rng, JointLimitSample& out) const {
    const std::size_t m = a_ii_.rows();
    const double r = std::pow(rng.beta(alpha_, gamma_), 1.0 / p_);
    thread_local std::vector<double> dir, scaled;
    sph_.sample(rng, dir);
    scaled.resize(m);
    for (std::size_t t = 0; t < m; ++t) scaled[t] = r * dir[t];
    a_ii_.matvec(scaled, out.xi);
    const double v = rng.next_double();
    const double mag = std::pow(v, 1.0 / (alpha_ + gamma_));
    out.e = -mag;
    const double boost = std::pow(mag, 1.0 / p_);
    for (std::size_t t = 0; t < m; ++t) {
        double x = out.xi[t];
        if (p_ == 1.0) x -= a_ij_[t];
        out.xi[t] = boost * x;
    }
}

ExceedanceSample gumbel_exceedance(const WpMixtureModel& model, double u,
                                   std::size_t budget, RandomStream& rng,
                                   std::size_t min_accept) {
    check_exceedance_shape(model);
    if (model.radial.mda != Mda::gumbel || !model.radial.scaling_w)
        throw ConfigError("gumbel exceedance: radial law must be Gumbel-tagged");
    if (!(u > 0.0) || !(u < model.radial.upper))
        throw ConfigError("gumbel exceedance: u must be inside the support");

    const std::size_t d = model.part.d;
    const std::size_t m = d - 1;
    const double wu = model.radial.scaling_w(u);
    const double h = gumbel_scaling_h(u, wu, model.p);

    ExceedanceSample out;
    out.xi.assign(m, {});
    const std::size_t chunk = 65536;
    while (out.proposals < budget) {
        const std::size_t take = std::min(chunk, budget - out.proposals);
        const MixtureBatch batch = sample_mixture(model, take, rng);
        out.proposals += take;
        for (std::size_t k = 0; k < take; ++k) {
            const double xd = batch.x[d - 1][k];
            if (!(xd > u)) continue;
            for (std::size_t t = 0; t < m; ++t)
                out.xi[t].push_back(h * (batch.x[t][k] - u * model.a(t, d - 1)));
            out.e.push_back(wu * (xd - u));
            ++out.accepted;
        }
    }
    if (out.accepted < min_accept)
        throw InconclusiveOracle("gumbel exceedance: only " +
                                 std::to_string(out.accepted) + " acceptances");
    return out;
}

ExceedanceSample weibull_exceedance(const WpMixtureModel& model, double a_n,
                                    std::size_t budget, RandomStream& rng,
                                    std::size_t min_accept) {
    check_exceedance_shape(model);
    if (model.radial.upper != 1.0)
        throw ConfigError("weibull exceedance: radial endpoint must be 1");
    if (!(a_n > 0.0) || !(a_n < 1.0))
        throw ConfigError("weibull exceedance: need a_n in (0, 1)");

    const std::size_t d = model.part.d;
    const std::size_t m = d - 1;
    const double u = 1.0 - a_n;
    const double h = weibull_scaling_h(a_n, model.p);

    ExceedanceSample out;
    out.xi.assign(m, {});
    const std::size_t chunk = 65536;
    while (out.proposals < budget) {
        const std::size_t take = std::min(chunk, budget - out.proposals);
        const MixtureBatch batch = sample_mixture(model, take, rng);
        out.proposals += take;
        for (std::size_t k = 0; k < take; ++k) {
            const double xd = batch.x[d - 1][k];
            if (!(xd > u)) continue;
            for (std::size_t t = 0; t < m; ++t)
                out.xi[t].push_back(h * (batch.x[t][k] - model.a(t, d - 1)));
            out.e.push_back((xd - 1.0) / a_n);
            ++out.accepted;
        }
    }
    if (out.accepted < min_accept)
        throw InconclusiveOracle("weibull exceedance: only " +
                                 std::to_string(out.accepted) + " acceptances");
    return out;
}

}  // namespace wpmix
