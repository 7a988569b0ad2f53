#include "wpmix/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "wpmix/errors.hpp"
#include "wpmix/special.hpp"

namespace wpmix {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// integral_0^hi g(w) * rest(w) dw where rest(w) ~ w^rest_pow near 0, with the
// power substitutions that keep the integrand bounded at both ends.
double mixing_weighted_integral(const MixingLaw& g,
                                const std::function<double(double)>& rest,
                                double hi, double rest_pow,
                                const QuadOptions& opt) {
    const double e = g.low_pow + rest_pow;
    const double mid = 0.5 * hi;

    auto low = integrate(
        [&](double v) {
            const double w = std::pow(v, 1.0 / e);
            if (w <= 0.0) return 0.0;
            return g.pdf(w) * rest(w) * std::pow(v, 1.0 / e - 1.0) / e;
        },
        0.0, std::pow(mid, e), opt);

    QuadResult high;
    if (hi >= 1.0 && g.alpha < 1.0) {
        // density blows up like (1-w)^(alpha-1) at 1
        const double a = g.alpha;
        high = integrate(
            [&](double v) {
                const double w = 1.0 - std::pow(v, 1.0 / a);
                if (w <= 0.0 || w >= 1.0) return 0.0;
                return g.pdf(w) * rest(w) * std::pow(v, 1.0 / a - 1.0) / a;
            },
            0.0, std::pow(1.0 - mid, a), opt);
    } else {
        high = integrate([&](double w) { return g.pdf(w) * rest(w); }, mid, hi,
                         opt);
    }
    return low.value + high.value;
}

void require_density(const MixingLaw& mixing) {
    if (mixing.degenerate)
        throw ConfigError("lemma checks need a mixing law with a density");
}

}  // namespace

GofReport make_report(std::string statistic, double value, std::size_t size,
                      double threshold) {
    GofReport r;
    r.statistic = std::move(statistic);
    r.value = value;
    r.size = size;
    r.threshold = threshold;
    r.pass = std::isfinite(value) && value <= threshold;
    return r;
}

Ecdf::Ecdf(std::vector<double> xs) : xs_(std::move(xs)) {
    if (xs_.empty()) throw ConfigError("ecdf needs at least one point");
    std::sort(xs_.begin(), xs_.end());
}

double Ecdf::operator()(double x) const {
    const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    return static_cast<double>(it - xs_.begin()) /
           static_cast<double>(xs_.size());
}

double ks_distance(const std::vector<double>& xs,
                   const std::function<double(double)>& cdf) {
    if (xs.empty()) throw ConfigError("ks_distance needs at least one point");
    std::vector<double> s(xs);
    std::sort(s.begin(), s.end());
    const double n = static_cast<double>(s.size());
    double d = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double f = cdf(s[i]);
        d = std::max(d, std::fabs((static_cast<double>(i) + 1.0) / n - f));
        d = std::max(d, std::fabs(static_cast<double>(i) / n - f));
    }
    return d;
}

double ks_distance_two_sample(const std::vector<double>& a,
                              const std::vector<double>& b) {
    if (a.empty() || b.empty())
        throw ConfigError("two-sample ks needs nonempty samples");
    std::vector<double> sa(a), sb(b);
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    const double na = static_cast<double>(sa.size());
    const double nb = static_cast<double>(sb.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < sa.size() && j < sb.size()) {
        const double x = std::min(sa[i], sb[j]);
        while (i < sa.size() && sa[i] <= x) ++i;
        while (j < sb.size() && sb[j] <= x) ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / na -
                                  static_cast<double>(j) / nb));
    }
    return d;
}

double sup_gap_on_grid(const std::vector<double>& grid,
                       const std::function<double(double)>& f,
                       const std::function<double(double)>& g) {
    double d = 0.0;
    for (double x : grid) d = std::max(d, std::fabs(f(x) - g(x)));
    return d;
}

std::vector<double> quantile_grid(const std::function<double(double)>& quantile,
                                  std::size_t n, double lo, double hi) {
    if (n < 2 || !(lo > 0.0) || !(hi < 1.0) || !(lo < hi))
        throw ConfigError("quantile_grid: need n >= 2 and 0 < lo < hi < 1");
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double p =
            lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
        g[i] = quantile(p);
    }
    return g;
}

std::vector<SweepRow> convergence_sweep(const RadialLaw& radial,
                                        const MixingLaw& mixing, double p,
                                        const std::vector<SweepPoint>& points,
                                        const LimitLaw& limit, QuadOptions opt,
                                        std::size_t grid_n) {
    const std::vector<double> grid = quantile_grid(limit.quantile, grid_n);
    std::vector<SweepRow> rows;
    rows.reserve(points.size());
    for (const SweepPoint& pt : points) {
        if (!(pt.scale > 0.0)) throw ConfigError("sweep scale must be > 0");
        ConditionalRadiusLaw law(radial, mixing, pt.tau, p, opt);
        double gap = 0.0;
        for (double z : grid)
            gap = std::max(gap, std::fabs(law.cdf(z / pt.scale) - limit.cdf(z)));
        rows.push_back({pt.level, pt.tau, pt.scale, gap});
    }
    return rows;
}

double lemma1a_ratio(const RadialLaw& radial, const MixingLaw& mixing, double y,
                     double z, double u, QuadOptions opt) {
    require_density(mixing);
    if (radial.mda != Mda::frechet || !(radial.tail_gamma > 0.0))
        throw ConfigError("lemma1a needs a heavy-tailed radial law");
    if (!(y > 0.0) || !(z > 0.0) || !(u > 0.0))
        throw ConfigError("lemma1a needs y, z, u > 0");
    const double gamma = radial.tail_gamma;
    const double hi = std::min(y / z, 1.0);

    // both sides in the variable w = (scale)/r so the quadrature sees the
    // same mixing-density singularity structure
    const double lhs = mixing_weighted_integral(
        mixing,
        [&](double w) { return radial.pdf(u * y / w) / w; }, hi, gamma, opt);
    const double inner = mixing_weighted_integral(
        mixing, [&](double w) { return std::pow(w, gamma); }, hi, gamma, opt);
    const double rhs =
        gamma / u * radial.sf(u) * std::pow(y, -gamma - 1.0) * inner;
    if (!(rhs > 0.0)) throw NumericError("lemma1a: degenerate right side");
    return lhs / rhs;
}

double lemma1b_ratio(const RadialLaw& radial, const MixingLaw& mixing, double y,
                     double z, double beta, double u, QuadOptions opt) {
    require_density(mixing);
    if (radial.upper != 1.0 || !(radial.tail_gamma > 0.0))
        throw ConfigError("lemma1b needs a radial law with endpoint 1");
    if (!(z > y) || y < 0.0 || !(u > 0.0) || !(u * z < 1.0))
        throw ConfigError("lemma1b needs 0 <= y < z and u*z < 1");
    const double gamma = radial.tail_gamma;
    const double alpha = mixing.alpha;
    const double x_lo = 1.0 - u * (z - y);
    const double x_mid = 0.5 * (x_lo + 1.0);

    auto integrand = [&](double x) {
        return mixing.pdf((1.0 - u * z) / x) * std::pow(x, beta) *
               radial.pdf(x);
    };

    double lhs = 0.0;
    if (y == 0.0 && alpha != 1.0) {
        // mixing density is (alpha-1)-power singular/flat at the left edge
        lhs += integrate(
                   [&](double v) {
                       const double x = x_lo + std::pow(v, 1.0 / alpha);
                       return integrand(x) * std::pow(v, 1.0 / alpha - 1.0) /
                              alpha;
                   },
                   0.0, std::pow(x_mid - x_lo, alpha), opt)
                   .value;
    } else {
        lhs += integrate(integrand, x_lo, x_mid, opt).value;
    }
    const double udp = radial.upper_density_pow;
    if (udp != 1.0) {
        lhs += integrate(
                   [&](double v) {
                       const double x = 1.0 - std::pow(v, 1.0 / udp);
                       if (x <= x_mid || x >= 1.0) return 0.0;
                       return integrand(x) * std::pow(v, 1.0 / udp - 1.0) / udp;
                   },
                   0.0, std::pow(1.0 - x_mid, udp), opt)
                   .value;
    } else {
        lhs += integrate(integrand, x_mid, 1.0, opt).value;
    }

    // inner = integral_0^{z-y} (z-t)^(alpha-1) t^(gamma-1) dt
    const double span = z - y;
    const double t_mid = 0.5 * span;
    // under v = t^gamma the t^(gamma-1) factor cancels the Jacobian exactly,
    // and under v = s^alpha (y = 0) the (z-t)^(alpha-1) = s^(alpha-1) does
    double inner = integrate(
                       [&](double v) {
                           const double t = std::pow(v, 1.0 / gamma);
                           return std::pow(z - t, alpha - 1.0) / gamma;
                       },
                       0.0, std::pow(t_mid, gamma), opt)
                       .value;
    if (y == 0.0 && alpha != 1.0) {
        inner += integrate(
                     [&](double v) {
                         const double t = span - std::pow(v, 1.0 / alpha);
                         return std::pow(t, gamma - 1.0) / alpha;
                     },
                     0.0, std::pow(span - t_mid, alpha), opt)
                     .value;
    } else {
        inner += integrate(
                     [&](double t) {
                         return std::pow(z - t, alpha - 1.0) *
                                std::pow(t, gamma - 1.0);
                     },
                     t_mid, span, opt)
                     .value;
    }

    const double rhs =
        gamma * radial.sf(1.0 - u) * mixing.pdf(1.0 - u) * inner;
    if (!(rhs > 0.0)) throw NumericError("lemma1b: degenerate right side");
    return lhs / rhs;
}

Lemma1cResult lemma1c_checks(const RadialLaw& radial, const MixingLaw& mixing,
                             double beta, double mu, double z, double u,
                             QuadOptions opt) {
    require_density(mixing);
    if (radial.mda != Mda::gumbel || !radial.scaling_w)
        throw ConfigError("lemma1c needs a Gumbel-regime radial law");
    if (!(u > radial.lower) || !(mu > 1.0) || z < 0.0)
        throw ConfigError("lemma1c needs u in the support interior, mu > 1");
    const double w_u = radial.scaling_w(u);
    if (!(w_u > 0.0) || !(u * w_u > 1.0))
        throw NumericError("lemma1c: scaling function not admissible at u");
    const double alpha = mixing.alpha;

    Lemma1cResult out;
    out.vanish = std::pow(u * w_u, beta) * radial.sf(mu * u) / radial.sf(u);

    // numerator in the local variable s = (x - u) * w(u)
    auto in_s = [&](double s) {
        const double x = u + s / w_u;
        if (x >= radial.upper) return 0.0;
        return mixing.pdf(u / x) * std::pow(x, beta) * radial.pdf(x) / w_u;
    };
    const double s_split = z + 5.0;
    double num = 0.0;
    if (z == 0.0 && alpha != 1.0) {
        num += integrate(
                   [&](double v) {
                       const double s = std::pow(v, 1.0 / alpha);
                       return in_s(s) * std::pow(v, 1.0 / alpha - 1.0) / alpha;
                   },
                   0.0, std::pow(s_split, alpha), opt)
                   .value;
    } else {
        num += integrate(in_s, z, s_split, opt).value;
    }
    const double s_hi = std::isfinite(radial.upper)
                            ? (radial.upper - u) * w_u
                            : kInf;
    if (s_hi > s_split) {
        if (std::isfinite(s_hi))
            num += integrate(in_s, s_split, s_hi, opt).value;
        else
            num += integrate_to_inf(in_s, s_split, opt).value;
    }

    const double den = radial.sf(u) * mixing.pdf(1.0 - 1.0 / (u * w_u)) *
                       std::pow(u, beta) * std::tgamma(alpha) *
                       reg_gamma_q(alpha, z);
    if (!(den > 0.0)) throw NumericError("lemma1c: degenerate right side");
    out.ratio = num / den;
    return out;
}

}  // namespace wpmix
