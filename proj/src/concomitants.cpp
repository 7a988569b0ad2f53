#include "wpmix/concomitants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "wpmix/conditional.hpp"
#include "wpmix/errors.hpp"
#include "wpmix/parallel.hpp"
#include "wpmix/special.hpp"

namespace wpmix {

namespace {

double sign_cofactor(double rho, double p) {
    return std::pow(1.0 - std::pow(rho, p), 1.0 / p);
}

void check_regime(const BivariateModel& model) {
    if (!(model.p > 1.0) && model.rho != 0.0)
        throw ConfigError(
            "concomitant limit needs p > 1, or rho = 0 when p <= 1");
}

}  // namespace

NormalizingConstants normalizing_constants(const BivariateModel& model,
                                           std::size_t n) {
    if (n < 2) throw ConfigError("normalizing_constants: n must be >= 2");
    if (model.radial.mda != Mda::gumbel || !model.radial.scaling_w)
        throw ConfigError(
            "normalizing_constants: radial law must carry a scaling function");
    NormalizingConstants c;
    c.threshold = bivariate_marginal_quantile(
        model, 1.0 - 1.0 / static_cast<double>(n));
    const double w = model.radial.scaling_w(c.threshold);
    if (!(w > 0.0))
        throw NumericError("normalizing_constants: scaling function <= 0");
    c.scale = sign_cofactor(model.rho, model.p) * c.threshold /
              std::pow(c.threshold * w, 1.0 / model.p);
    c.center = model.rho * c.threshold;
    if (!(c.scale > 0.0) || !std::isfinite(c.scale))
        throw NumericError("normalizing_constants: degenerate scale");
    return c;
}

std::vector<std::size_t> top_order_indices(const std::vector<double>& xs,
                                           std::size_t k) {
    if (k == 0 || k >= xs.size())
        throw ConfigError("top_order_indices: need 1 <= k < n");
    std::vector<std::size_t> idx(xs.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k),
                      idx.end(), [&](std::size_t a, std::size_t b) {
                          if (xs[a] != xs[b]) return xs[a] > xs[b];
                          return a > b;
                      });
    idx.resize(k);
    return idx;
}

std::vector<double> concomitant_extract(const std::vector<double>& xs,
                                        const std::vector<double>& ys,
                                        std::size_t k) {
    if (xs.size() != ys.size())
        throw ConfigError("concomitant_extract: length mismatch");
    std::vector<double> out;
    out.reserve(k);
    for (std::size_t i : top_order_indices(xs, k)) out.push_back(ys[i]);
    return out;
}

double eta_limit_cdf(double alpha, double p, double q2, double x) {
    if (!(alpha > 0.0) || !(p > 0.0) || !(q2 > 0.0) || q2 > 1.0)
        throw ConfigError("eta_limit_cdf: need alpha, p > 0 and q2 in (0,1]");
    auto gpos = [&](double t) {
        return t > 0.0 ? gamma_cdf(alpha, 1.0 / p, std::pow(t, p)) : 0.0;
    };
    return (1.0 - q2) + q2 * gpos(x) - (1.0 - q2) * gpos(-x);
}

double orderstat_limit_cdf(std::size_t rank, double x) {
    if (rank == 0) throw ConfigError("orderstat_limit_cdf: rank must be >= 1");
    // exp(-t) sum_{j<rank} t^j/j! is the regularized upper gamma Q(rank, t)
    return reg_gamma_q(static_cast<double>(rank), std::exp(-x));
}

ConcomitantRun run_concomitant_experiment(const ConcomitantExperiment& exp) {
    check_regime(exp.model);
    if (exp.reps < 1) throw ConfigError("experiment needs reps >= 1");
    if (exp.k == 0 || exp.k >= exp.n)
        throw ConfigError("experiment needs 1 <= k < n");

    ConcomitantRun run;
    run.norm = normalizing_constants(exp.model, exp.n);
    const double w_b = exp.model.radial.scaling_w(run.norm.threshold);
    run.eta.assign(exp.k, std::vector<double>(exp.reps));
    run.x_order.assign(exp.k, std::vector<double>(exp.reps));
    run.eta_max.resize(exp.reps);
    run.x_top_norm.resize(exp.reps);

    // Streams are keyed per rep, so the rep slots are identical no matter
    // how the loop is spread over threads.
    parallel_for(exp.reps, [&](std::size_t rep) {
        RandomStream rng(exp.seed, "concomitant-rep", rep);
        BivariateBatch batch = sample_bivariate(exp.model, exp.n, rng);
        const auto idx = top_order_indices(batch.x, exp.k);
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t pos = 0; pos < exp.k; ++pos) {
            const double value =
                (batch.y[idx[pos]] - run.norm.center) / run.norm.scale;
            run.eta[pos][rep] = value;
            run.x_order[pos][rep] = batch.x[idx[pos]];
            best = std::max(best, value);
        }
        run.eta_max[rep] = best;
        run.x_top_norm[rep] = w_b * (batch.x[idx[0]] - run.norm.threshold);
    });
    return run;
}

std::vector<std::vector<double>> regenerate_concomitants(
    const ConcomitantExperiment& exp, const ConcomitantRun& run) {
    check_regime(exp.model);
    const double cfac = sign_cofactor(exp.model.rho, exp.model.p);
    std::vector<std::vector<double>> eta(
        exp.k, std::vector<double>(exp.reps));
    parallel_for(exp.reps, [&](std::size_t rep) {
        RandomStream rng(exp.seed, "concomitant-regen", rep);
        for (std::size_t pos = 0; pos < exp.k; ++pos) {
            const double x = run.x_order[pos][rep];
            if (!(x > 0.0))
                throw NumericError(
                    "regenerate_concomitants: nonpositive order statistic");
            ConditionalRadiusLaw law(exp.model.radial, exp.model.mixing, x,
                                     exp.model.p);
            const double r = law.quantile(rng.next_double());
            const double s = rng.sign(exp.model.q2);
            const double y = exp.model.rho * x + cfac * s * r;
            eta[pos][rep] = (y - run.norm.center) / run.norm.scale;
        }
    });
    return eta;
}

double pearson_correlation(const std::vector<double>& a,
                           const std::vector<double>& b) {
    if (a.size() != b.size() || a.size() < 2)
        throw ConfigError("pearson_correlation: need matched samples, n >= 2");
    const double n = static_cast<double>(a.size());
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    if (!(saa > 0.0) || !(sbb > 0.0))
        throw NumericError("pearson_correlation: zero variance");
    return sab / std::sqrt(saa * sbb);
}

}  // namespace wpmix
