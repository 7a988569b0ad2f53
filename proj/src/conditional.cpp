#include "wpmix/conditional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>

#include "wpmix/errors.hpp"
#include "wpmix/roots.hpp"
#include "wpmix/special.hpp"

namespace wpmix {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// (tau^p + z^p)^(1/p) without overflow for lopsided arguments.
double lp_combine(double tau, double z, double p) {
    const double m = std::max(tau, z);
    if (m == 0.0) return 0.0;
    const double a = std::pow(tau / m, p);
    const double b = std::pow(z / m, p);
    return m * std::pow(a + b, 1.0 / p);
}

}  // namespace

ConditionalRadiusLaw::ConditionalRadiusLaw(RadialLaw radial, MixingLaw mixing,
                                           double tau, double p, QuadOptions opt)
    : radial_(std::move(radial)),
      mixing_(std::move(mixing)),
      tau_(tau),
      p_(p),
      opt_(opt) {
    if (!(p_ > 0.0)) throw ConfigError("conditional law: need p > 0");
    if (!(tau_ > 0.0)) throw ConfigError("conditional law: need tau > 0");
    if (mixing_.degenerate)
        throw ConfigError("conditional law: mixing must have a density");
    if (!(tau_ < radial_.upper))
        throw ConfigError("conditional law: tau must sit below the radial endpoint");

    if (std::isfinite(radial_.upper)) {
        // (upper^p - tau^p)^(1/p), stable when tau is close to the endpoint.
        const double lr = p_ * std::log(tau_ / radial_.upper);
        z_max_ = radial_.upper * std::pow(-std::expm1(lr), 1.0 / p_);
    } else {
        z_max_ = kInf;
    }

    den_ = tail_integral(tau_);
    if (!(den_ > 0.0) || !std::isfinite(den_))
        throw NumericError("conditional law: normalizing integral is degenerate");
}

double ConditionalRadiusLaw::tail_integral(double s) const {
    // Mass below tau carries g(tau/r) = 0, so the integral starts at tau.
    s = std::max(s, tau_);
    const RadialLaw& f = radial_;
    const MixingLaw& g = mixing_;
    const double tau = tau_;
    if (std::isfinite(f.upper) && s >= f.upper) return 0.0;

    const auto h = [&](double r) {
        return g.pdf(tau / r) * f.pdf(r) / r;
    };

    // Near r = tau the integrand carries the factor (1 - tau/r)^(alpha-1)
    // from g; the substitution v = (r - tau)^alpha makes it smooth.
    const double b1 = std::isfinite(f.upper)
                          ? std::min(2.0 * tau, tau + 0.5 * (f.upper - tau))
                          : 2.0 * tau;
    double total = 0.0;
    if (s < b1) {
        const double al = g.alpha;
        const double va = std::pow(s - tau, al);
        const double vb = std::pow(b1 - tau, al);
        total += integrate(
                     [&](double v) {
                         const double step = std::pow(v, 1.0 / al);
                         return h(tau + step) * step / (al * std::max(v, 1e-300));
                     },
                     va, vb, opt_)
                     .value;
    }

    const double b2 = std::max(s, b1);
    if (std::isfinite(f.upper)) {
        // A density factor (upper - r)^(pow - 1) is substituted away.
        const double pw = f.upper_density_pow;
        if (pw != 1.0) {
            const double vmax = std::pow(f.upper - b2, pw);
            total += integrate(
                         [&](double v) {
                             const double step = std::pow(v, 1.0 / pw);
                             return h(f.upper - step) * step /
                                    (pw * std::max(v, 1e-300));
                         },
                         0.0, vmax, opt_)
                         .value;
        } else {
            total += integrate(h, b2, f.upper, opt_).value;
        }
    } else if (f.mda == Mda::frechet) {
        // Power tail: switch to w = tau/r, where the integrand behaves like
        // w^(low_pow + gamma - 1) at 0, then flatten it with v = w^e.
        const double e = g.low_pow + f.tail_gamma;
        const double vmax = std::pow(tau / b2, e);
        total += integrate(
                     [&](double v) {
                         const double w = std::pow(v, 1.0 / e);
                         return g.pdf(w) * f.pdf(tau / w) /
                                (e * std::max(v, 1e-300));
                     },
                     0.0, vmax, opt_)
                     .value;
    } else {
        total += integrate_to_inf(h, b2, opt_).value;
    }
    return total;
}

double ConditionalRadiusLaw::sf(double z) const {
    if (z <= 0.0) return 1.0;
    if (z >= z_max_) return 0.0;
    return clamp01(tail_integral(lp_combine(tau_, z, p_)) / den_);
}

double ConditionalRadiusLaw::cdf(double z) const {
    if (z <= 0.0) return 0.0;
    if (z >= z_max_) return 1.0;
    return clamp01(1.0 - tail_integral(lp_combine(tau_, z, p_)) / den_);
}

double ConditionalRadiusLaw::pdf(double z) const {
    if (z <= 0.0 || z >= z_max_) return 0.0;
    const double big = lp_combine(tau_, z, p_);
    const double lp = std::pow(big, p_);  // tau^p + z^p
    return std::pow(z, p_ - 1.0) / lp * mixing_.pdf(tau_ / big) *
           radial_.pdf(big) / den_;
}

double ConditionalRadiusLaw::quantile(double prob) const {
    if (!(prob > 0.0) || !(prob < 1.0))
        throw ConfigError("conditional quantile: prob must be in (0, 1)");
    const auto fn = [&](double z) { return cdf(z) - prob; };
    double hi;
    if (std::isfinite(z_max_)) {
        hi = z_max_;
    } else {
        hi = expand_bracket_up(fn, 0.0, -prob, tau_);
    }
    return brent(fn, 0.0, hi);
}

ConditionalDistribution make_conditional(const WpMixtureModel& model,
                                         const std::vector<double>& a_j,
                                         QuadOptions opt) {
    const IndexPartition& part = model.part;
    if (a_j.size() != part.J.size())
        throw ConfigError("make_conditional: a_J size does not match the J block");
    for (std::size_t r : part.J)
        for (std::size_t c : part.I)
            if (model.a(r, c) != 0.0)
                throw ConfigError("make_conditional: needs A_JI = 0");

    const Matrix a_jj = model.a.submatrix(part.J, part.J);
    const double tau = a_norm(a_jj, a_j, model.q_j);
    if (!(tau > 0.0)) throw ConfigError("make_conditional: a_J must be nonzero");
    const double ftau = model.radial.cdf(tau);
    if (!(ftau > 0.0) || !(ftau < 1.0))
        throw ConfigError("make_conditional: F(tau) must lie in (0, 1)");

    LuSolver lu(a_jj);
    const std::vector<double> y = lu.solve(a_j);
    const Matrix a_ij = model.a.submatrix(part.I, part.J);
    std::vector<double> shift = a_ij.matvec(y);

    ConditionalDistribution dist{
        ConditionalRadiusLaw(model.radial, model.mixing, tau, model.p, opt),
        model.a.submatrix(part.I, part.I), std::move(shift), model.q_i};
    return dist;
}

ScalarLawSampler::ScalarLawSampler(std::function<double(double)> cdf,
                                   std::function<double(double)> quantile,
                                   std::size_t knots)
    : cdf_(std::move(cdf)), quantile_(std::move(quantile)) {
    if (knots < 8) throw ConfigError("sampler: need at least 8 knots");
    const double u_lo = 1e-5, u_hi = 1.0 - 1e-5;
    const double z_lo = quantile_(u_lo);
    const double z_hi = quantile_(u_hi);
    if (!(z_hi > z_lo)) throw NumericError("sampler: degenerate quantile range");

    // Geometric spacing when the law spans decades (heavy tails), linear
    // otherwise; either way knots store the exact cdf.
    const bool geom = z_lo > 0.0 && z_hi / z_lo > 50.0;
    zs_.reserve(knots);
    for (std::size_t k = 0; k < knots; ++k) {
        const double t = static_cast<double>(k) / (knots - 1);
        zs_.push_back(geom ? z_lo * std::exp(t * std::log(z_hi / z_lo))
                           : z_lo + t * (z_hi - z_lo));
    }
    zs_.front() = z_lo;
    zs_.back() = z_hi;
    us_.resize(knots);
    for (std::size_t k = 0; k < knots; ++k) {
        us_[k] = cdf_(zs_[k]);
        // Quadrature noise of ~1e-11 must not break monotonicity.
        if (k > 0 && us_[k] < us_[k - 1]) us_[k] = us_[k - 1];
    }
    fwd_ = MonotoneCubic(zs_, us_);
}

double ScalarLawSampler::invert(double u) const {
    if (u <= us_.front() || u >= us_.back()) return quantile_(u);
    std::size_t lo = 0, hi = us_.size() - 1;
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        (us_[mid] <= u ? lo : hi) = mid;
    }
    if (us_[hi] <= us_[lo]) return zs_[lo];

    // Safeguarded Newton on the cubic segment.
    double a = zs_[lo], b = zs_[hi];
    double z = a + (b - a) * (u - us_[lo]) / (us_[hi] - us_[lo]);
    for (int it = 0; it < 60; ++it) {
        const double fu = fwd_(z) - u;
        if (fu > 0.0) b = z; else a = z;
        const double dz = fwd_.derivative(z);
        double zn = dz > 0.0 ? z - fu / dz : 0.5 * (a + b);
        if (!(zn > a) || !(zn < b)) zn = 0.5 * (a + b);
        if (std::abs(zn - z) <= 1e-13 * (std::abs(z) + 1e-300)) return zn;
        z = zn;
        if (b - a <= 1e-13 * (std::abs(a) + std::abs(b))) break;
    }
    return z;
}

double ScalarLawSampler::draw(RandomStream& rng) const {
    return invert(rng.next_double());
}

std::vector<std::vector<double>> sample_conditional(
    const ConditionalDistribution& dist, std::size_t n, RandomStream& rng) {
    const std::size_t m = dist.a_ii.rows();
    std::vector<std::vector<double>> out(m, std::vector<double>(n));
    SphereSampler sph(m, dist.q_i);
    const ConditionalRadiusLaw& law = dist.radius;

    // Interpolated inverse-cdf is worth building only for bulk draws.
    std::optional<ScalarLawSampler> cached;
    if (n >= 64)
        cached.emplace([&law](double z) { return law.cdf(z); },
                       [&law](double u) { return law.quantile(u); });

    std::vector<double> scaled(m), xi(m), dir;
    for (std::size_t k = 0; k < n; ++k) {
        const double r =
            cached ? cached->draw(rng) : law.quantile(rng.next_double());
        sph.sample(rng, dir);
        for (std::size_t t = 0; t < m; ++t) scaled[t] = r * dir[t];
        dist.a_ii.matvec(scaled, xi);
        for (std::size_t t = 0; t < m; ++t) out[t][k] = xi[t] + dist.shift[t];
    }
    return out;
}

std::vector<double> conditional_radii(const ConditionalDistribution& dist,
                                      const std::vector<std::vector<double>>& x) {
    const std::size_t m = dist.a_ii.rows();
    if (x.size() != m) throw ConfigError("conditional_radii: coordinate count");
    const std::size_t n = x.empty() ? 0 : x[0].size();
    LuSolver lu(dist.a_ii);
    std::vector<double> out(n), rhs(m);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t t = 0; t < m; ++t) rhs[t] = x[t][k] - dist.shift[t];
        out[k] = lq_norm(lu.solve(rhs), dist.q_i);
    }
    return out;
}

SlabSample slab_conditional_oracle(const WpMixtureModel& model,
                                   const std::vector<double>& a_j, double eps,
                                   std::size_t budget, RandomStream& rng,
                                   std::size_t min_accept) {
    if (!(eps > 0.0)) throw ConfigError("slab oracle: need eps > 0");
    if (a_j.size() != model.part.J.size())
        throw ConfigError("slab oracle: a_J size does not match the J block");

    SlabSample out;
    const std::size_t mi = model.part.I.size();
    out.x_i.assign(mi, {});

    const std::size_t chunk = 65536;
    while (out.proposals < budget) {
        const std::size_t take = std::min(chunk, budget - out.proposals);
        const MixtureBatch batch = sample_mixture(model, take, rng);
        out.proposals += take;
        for (std::size_t k = 0; k < take; ++k) {
            bool ok = true;
            for (std::size_t t = 0; t < a_j.size() && ok; ++t)
                ok = std::abs(batch.x[model.part.J[t]][k] - a_j[t]) <= eps;
            if (!ok) continue;
            for (std::size_t t = 0; t < mi; ++t)
                out.x_i[t].push_back(batch.x[model.part.I[t]][k]);
            ++out.accepted;
        }
    }
    if (out.accepted < min_accept)
        throw InconclusiveOracle(
            "slab oracle: only " + std::to_string(out.accepted) + " of " +
            std::to_string(min_accept) + " needed acceptances in " +
            std::to_string(out.proposals) + " proposals");
    return out;
}

}  // namespace wpmix
