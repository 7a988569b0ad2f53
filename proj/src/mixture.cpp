#include "wpmix/mixture.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

#include "wpmix/errors.hpp"
#include "wpmix/quadrature.hpp"
#include "wpmix/roots.hpp"
#include "wpmix/special.hpp"

namespace wpmix {
namespace {

// (1 - wp^p)^(1/p) without cancellation for wp near 1.
double co_factor(double wp, double p) {
    if (wp <= 0.0) return 1.0;
    if (wp >= 1.0) return 0.0;
    return std::pow(-std::expm1(p * std::log(wp)), 1.0 / p);
}

}  // namespace

WpMixtureModel make_mixture_model(IndexPartition part, double p, Matrix a,
                                  RadialLaw radial, MixingLaw mixing,
                                  double q_i, double q_j) {
    if (!(p > 0.0)) throw ConfigError("mixture: need p > 0");
    if (!(q_i > 0.0) || !(q_j > 0.0))
        throw ConfigError("mixture: sphere norms need q > 0");
    if (a.rows() != part.d || a.cols() != part.d)
        throw ConfigError("mixture: A must be d x d for the partition's d");
    if (!radial.cdf || !radial.quantile)
        throw ConfigError("mixture: radial law is incomplete");
    if (!mixing.sample) throw ConfigError("mixture: mixing law is incomplete");

    WpMixtureModel m;
    m.part = std::move(part);
    m.p = p;
    m.a = std::move(a);
    m.radial = std::move(radial);
    m.mixing = std::move(mixing);
    m.q_i = q_i;
    m.q_j = q_j;
    return m;
}

MixtureBatch sample_mixture(const WpMixtureModel& model, std::size_t n,
                            RandomStream& rng, bool keep_factors) {
    const std::size_t d = model.part.d;
    const std::size_t mi = model.part.I.size();
    const std::size_t mj = model.part.J.size();

    MixtureBatch out;
    out.x.assign(d, std::vector<double>(n));
    if (keep_factors) {
        out.r.resize(n);
        out.wp.resize(n);
    }

    SphereSampler sph_i(mi, model.q_i);
    SphereSampler sph_j(mj, model.q_j);
    std::vector<double> s(d), xs(d), ui, uj;

    for (std::size_t k = 0; k < n; ++k) {
        const double r = model.radial.quantile(rng.next_double());
        const double wp = model.mixing.sample(rng);
        const double w = co_factor(wp, model.p);
        sph_i.sample(rng, ui);
        sph_j.sample(rng, uj);

        for (std::size_t t = 0; t < mi; ++t) s[model.part.I[t]] = r * w * ui[t];
        for (std::size_t t = 0; t < mj; ++t) s[model.part.J[t]] = r * wp * uj[t];
        model.a.matvec(s, xs);
        for (std::size_t c = 0; c < d; ++c) out.x[c][k] = xs[c];
        if (keep_factors) {
            out.r[k] = r;
            out.wp[k] = wp;
        }
    }
    return out;
}

BivariateModel make_bivariate_model(double rho, double p, double q1, double q2,
                                    RadialLaw radial, MixingLaw mixing) {
    if (!(p > 0.0)) throw ConfigError("bivariate: need p > 0");
    if (!(rho > -1.0) || !(rho < 1.0))
        throw ConfigError("bivariate: need rho in (-1, 1)");
    if (rho < 0.0 && std::rint(p) != p)
        throw ConfigError("bivariate: rho < 0 needs integer p so rho^p is real");
    if (!(q1 > 0.0) || q1 > 1.0 || !(q2 > 0.0) || q2 > 1.0)
        throw ConfigError("bivariate: sign probabilities must be in (0, 1]");
    if (!radial.quantile) throw ConfigError("bivariate: radial law is incomplete");
    if (!mixing.sample) throw ConfigError("bivariate: mixing law is incomplete");

    BivariateModel m;
    m.rho = rho;
    m.p = p;
    m.q1 = q1;
    m.q2 = q2;
    m.radial = std::move(radial);
    m.mixing = std::move(mixing);
    return m;
}

BivariateBatch sample_bivariate(const BivariateModel& model, std::size_t n,
                                RandomStream& rng) {
    BivariateBatch out;
    out.x.resize(n);
    out.y.resize(n);
    // (1 - rho^p)^(1/p); rho < 0 only with integer p, checked at build time.
    const double c = std::pow(1.0 - std::pow(model.rho, model.p), 1.0 / model.p);

    for (std::size_t k = 0; k < n; ++k) {
        const double r = model.radial.quantile(rng.next_double());
        const double wp = model.mixing.sample(rng);
        const double w = co_factor(wp, model.p);
        const double i1 = rng.sign(model.q1);
        const double i2 = rng.sign(model.q2);
        const double x = r * i1 * wp;
        out.x[k] = x;
        out.y[k] = model.rho * x + c * r * i2 * w;
    }
    return out;
}

namespace {

// P(R W_p <= x): F(x) plus the part where R exceeds x but W_p scales it back.
double product_cdf(const BivariateModel& model, double x) {
    const RadialLaw& f = model.radial;
    const MixingLaw& g = model.mixing;
    if (x <= 0.0) return 0.0;
    if (std::isfinite(f.upper) && x >= f.upper) return 1.0;

    QuadOptions opt;
    const auto integrand = [&](double r) { return g.cdf(x / r) * f.pdf(r); };
    const double lo = std::max(x, f.lower);
    double tail;
    if (std::isfinite(f.upper)) {
        // Substitute away a (upper - r)^(pow-1) density factor when present.
        const double pw = f.upper_density_pow;
        if (pw != 1.0) {
            const double vmax = std::pow(f.upper - lo, pw);
            tail = integrate(
                       [&](double v) {
                           const double step = std::pow(v, 1.0 / pw);
                           return integrand(f.upper - step) * step /
                                  (pw * std::max(v, 1e-300));
                       },
                       0.0, vmax, opt)
                       .value;
        } else {
            tail = integrate(integrand, lo, f.upper, opt).value;
        }
    } else {
        tail = integrate_to_inf(integrand, lo, opt).value;
    }
    return clamp01(f.cdf(x) + tail);
}

}  // namespace

double bivariate_marginal_cdf(const BivariateModel& model, double x) {
    if (x > 0.0) return (1.0 - model.q1) + model.q1 * product_cdf(model, x);
    if (x < 0.0) return (1.0 - model.q1) * (1.0 - product_cdf(model, -x));
    return 1.0 - model.q1;
}

double bivariate_marginal_quantile(const BivariateModel& model, double prob) {
    if (!(prob > 0.0) || !(prob < 1.0))
        throw ConfigError("marginal quantile: prob must be in (0, 1)");
    const auto fn = [&](double x) {
        return bivariate_marginal_cdf(model, x) - prob;
    };

    // Bracket the root; the support of |X| is (0, upper) with upper = x_F.
    double lo, hi;
    if (prob > 1.0 - model.q1) {
        lo = 0.0;
        hi = std::isfinite(model.radial.upper) ? model.radial.upper
                                               : expand_bracket_up(fn, 1e-8, fn(1e-8), 1.0, 2048);
    } else if (prob < 1.0 - model.q1) {
        hi = 0.0;
        // Mirror the expansion for the negative half line.
        const auto neg = [&](double t) { return -fn(-t); };
        lo = std::isfinite(model.radial.upper)
                 ? -model.radial.upper
                 : -expand_bracket_up(neg, 1e-8, neg(1e-8), 1.0, 2048);
    } else {
        return 0.0;
    }
    RootOptions ropt;
    ropt.xtol = 1e-13;
    return brent(fn, lo, hi, ropt);
}

}  // namespace wpmix
