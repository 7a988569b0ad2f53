#include "wpmix/cli.hpp"

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wpmix/concomitants.hpp"
#include "wpmix/conditional.hpp"
#include "wpmix/config.hpp"
#include "wpmix/errors.hpp"
#include "wpmix/harness.hpp"
#include "wpmix/io.hpp"
#include "wpmix/limits.hpp"
#include "wpmix/mixture.hpp"
#include "wpmix/parallel.hpp"
#include "wpmix/random.hpp"
#include "wpmix/verify.hpp"

namespace wpmix {

namespace {

struct CommandOutput {
    Table table;
    nlohmann::json meta = nlohmann::json::object();
    std::string summary;
    int exit_code = 0;
};

const nlohmann::json& model_block(const ExperimentConfig& cfg) {
    return require_field(cfg.doc, "model", "");
}

const nlohmann::json& command_block(const ExperimentConfig& cfg) {
    return require_field(cfg.doc, "command", "");
}

CommandOutput cmd_sample(const ExperimentConfig& cfg) {
    const auto& model_json = model_block(cfg);
    const auto& cmd = command_block(cfg);
    const std::size_t n = count_field(cmd, "n", "/command");
    if (n == 0) throw ConfigError("/command/n: need at least one sample");

    CommandOutput out;
    if (is_bivariate_config(model_json)) {
        const BivariateModel model = bivariate_from_config(model_json, "/model");
        std::vector<double> xs(n), ys(n);
        parallel_for(n, [&](std::size_t i) {
            RandomStream rng(cfg.seed, "sample", i);
            BivariateBatch b = sample_bivariate(model, 1, rng);
            xs[i] = b.x[0];
            ys[i] = b.y[0];
        });
        out.table.columns = {"index", "x", "y"};
        out.table.rows.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            out.table.rows.push_back({static_cast<double>(i + 1), xs[i], ys[i]});
        }
        out.meta = {{"n", n}, {"bivariate", true}};
        out.summary = "n=" + std::to_string(n) + " bivariate";
        return out;
    }

    const WpMixtureModel model = mixture_from_config(model_json, "/model");
    const bool keep_factors = bool_or(cmd, "factors", false, "/command");
    const std::size_t d = model.part.d;
    std::vector<std::vector<double>> coords(d, std::vector<double>(n));
    std::vector<double> rs(keep_factors ? n : 0), wps(keep_factors ? n : 0);
    parallel_for(n, [&](std::size_t i) {
        RandomStream rng(cfg.seed, "sample", i);
        MixtureBatch b = sample_mixture(model, 1, rng, keep_factors);
        for (std::size_t c = 0; c < d; ++c) coords[c][i] = b.x[c][0];
        if (keep_factors) {
            rs[i] = b.r[0];
            wps[i] = b.wp[0];
        }
    });

    out.table.columns = {"index"};
    for (std::size_t c = 0; c < d; ++c) out.table.columns.push_back("x" + std::to_string(c + 1));
    if (keep_factors) {
        out.table.columns.push_back("r");
        out.table.columns.push_back("wp");
    }
    out.table.rows.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> row;
        row.reserve(out.table.columns.size());
        row.push_back(static_cast<double>(i + 1));
        for (std::size_t c = 0; c < d; ++c) row.push_back(coords[c][i]);
        if (keep_factors) {
            row.push_back(rs[i]);
            row.push_back(wps[i]);
        }
        out.table.rows.push_back(std::move(row));
    }
    out.meta = {{"n", n}, {"dim", d}};
    out.summary = "n=" + std::to_string(n) + " dim=" + std::to_string(d);
    return out;
}

CommandOutput cmd_cond(const ExperimentConfig& cfg) {
    const auto& model_json = model_block(cfg);
    if (is_bivariate_config(model_json)) {
        throw ConfigError("/model: cond needs the general mixture form (dim/cond_block)");
    }
    const WpMixtureModel model = mixture_from_config(model_json, "/model");
    const auto& cmd = command_block(cfg);
    const std::vector<double> a_j = number_list_field(cmd, "a_j", "/command");
    if (a_j.size() != model.part.J.size()) {
        throw ConfigError("/command/a_j: expected " + std::to_string(model.part.J.size()) +
                          " coordinates");
    }
    const ConditionalDistribution dist = make_conditional(model, a_j);
    const std::string mode =
        cmd.contains("mode") ? string_field(cmd, "mode", "/command") : std::string("cdf");

    CommandOutput out;
    out.meta = {{"tau", dist.radius.tau()}, {"mode", mode}};
    if (mode == "cdf") {
        std::vector<double> zs;
        if (cmd.contains("z")) {
            zs = number_list_field(cmd, "z", "/command");
        } else {
            const std::size_t grid_n =
                cmd.contains("grid_n") ? count_field(cmd, "grid_n", "/command") : 200;
            zs = quantile_grid([&](double u) { return dist.radius.quantile(u); }, grid_n);
        }
        std::vector<std::vector<double>> rows(zs.size());
        parallel_for(zs.size(), [&](std::size_t i) {
            rows[i] = {zs[i], dist.radius.cdf(zs[i])};
        });
        out.table.columns = {"z", "cdf"};
        out.table.rows = std::move(rows);
        out.summary = "tau=" + format_float(dist.radius.tau()) + " cdf rows=" +
                      std::to_string(zs.size());
        return out;
    }
    if (mode == "sample") {
        const std::size_t n = count_field(cmd, "n", "/command");
        RandomStream rng(cfg.seed, "cond-sample", 0);
        const auto draws = sample_conditional(dist, n, rng);
        out.table.columns = {"index"};
        for (std::size_t idx : model.part.I) {
            out.table.columns.push_back("x" + std::to_string(idx + 1));
        }
        out.table.rows.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<double> row{static_cast<double>(i + 1)};
            for (std::size_t c = 0; c < draws.size(); ++c) row.push_back(draws[c][i]);
            out.table.rows.push_back(std::move(row));
        }
        out.summary = "tau=" + format_float(dist.radius.tau()) + " samples=" +
                      std::to_string(n);
        return out;
    }
    throw ConfigError("/command/mode: expected 'cdf' or 'sample'");
}

CommandOutput cmd_limit(const ExperimentConfig& cfg) {
    const auto& model_json = model_block(cfg);
    if (is_bivariate_config(model_json)) {
        throw ConfigError("/model: limit needs the general mixture form (dim/cond_block)");
    }
    const WpMixtureModel model = mixture_from_config(model_json, "/model");
    const RadialLaw& radial = model.radial;
    const MixingLaw& mixing = model.mixing;
    if (mixing.degenerate) throw ConfigError("/model/mixing: limit sweep needs a density");
    const auto& cmd = command_block(cfg);
    const std::vector<double> levels = number_list_field(cmd, "levels", "/command");
    const std::size_t grid_n =
        cmd.contains("grid_n") ? count_field(cmd, "grid_n", "/command") : 200;

    std::vector<SweepPoint> points;
    points.reserve(levels.size());
    LimitLaw limit;
    std::string regime;
    switch (radial.mda) {
        case Mda::gumbel: {
            regime = "gumbel";
            limit = kotz_limit(mixing.alpha, model.p);
            for (double tau : levels) {
                if (!(tau > 0.0)) throw ConfigError("/command/levels: tau must be positive");
                const double h = gumbel_scaling_h(tau, radial.scaling_w(tau), model.p);
                points.push_back({tau, tau, h});
            }
            break;
        }
        case Mda::weibull: {
            regime = "weibull";
            limit = weibull_limit(mixing.alpha, radial.tail_gamma, model.p);
            const double x_f = radial.upper;
            for (double a_n : levels) {
                if (!(a_n > 0.0) || !(a_n < 1.0)) {
                    throw ConfigError("/command/levels: a_n must lie in (0,1)");
                }
                points.push_back(
                    {a_n, x_f * (1.0 - a_n), weibull_scaling_h(a_n, model.p) / x_f});
            }
            break;
        }
        case Mda::frechet: {
            regime = "frechet";
            const double c = radial.lower;
            limit = frechet_limit(c, radial.tail_gamma, mixing, model.p);
            for (double a_n : levels) {
                if (!(a_n > 0.0) || !(a_n < 1.0)) {
                    throw ConfigError("/command/levels: a_n must lie in (0,1)");
                }
                points.push_back({a_n, c / a_n, a_n});
            }
            break;
        }
    }

    const auto rows = convergence_sweep(radial, mixing, model.p, points, limit, {}, grid_n);
    CommandOutput out;
    out.table.columns = {"level", "tau", "scale", "gap"};
    for (const auto& r : rows) out.table.rows.push_back({r.level, r.tau, r.scale, r.gap});
    out.meta = {{"regime", regime}, {"limit", limit.name}, {"grid_n", grid_n}};
    out.summary = "regime=" + regime + " levels=" + std::to_string(levels.size()) +
                  " terminal_gap=" + format_float(rows.back().gap);
    return out;
}

CommandOutput cmd_concomitants(const ExperimentConfig& cfg) {
    const auto& model_json = model_block(cfg);
    if (!is_bivariate_config(model_json)) {
        throw ConfigError("/model: concomitants needs the bivariate form (rho)");
    }
    const auto& cmd = command_block(cfg);
    ConcomitantExperiment exp;
    exp.model = bivariate_from_config(model_json, "/model");
    exp.n = count_field(cmd, "n", "/command");
    exp.k = cmd.contains("k") ? count_field(cmd, "k", "/command") : 1;
    exp.reps = cmd.contains("reps") ? count_field(cmd, "reps", "/command") : 1;
    exp.seed = cfg.seed;
    const ConcomitantRun run = run_concomitant_experiment(exp);

    CommandOutput out;
    out.table.columns = {"rep"};
    for (std::size_t pos = 0; pos < exp.k; ++pos) {
        out.table.columns.push_back("eta_" + std::to_string(pos + 1));
    }
    for (std::size_t pos = 0; pos < exp.k; ++pos) {
        out.table.columns.push_back("x_" + std::to_string(pos + 1));
    }
    out.table.columns.push_back("eta_max");
    out.table.columns.push_back("x_top_norm");
    out.table.rows.reserve(exp.reps);
    for (std::size_t rep = 0; rep < exp.reps; ++rep) {
        std::vector<double> row{static_cast<double>(rep + 1)};
        for (std::size_t pos = 0; pos < exp.k; ++pos) row.push_back(run.eta[pos][rep]);
        for (std::size_t pos = 0; pos < exp.k; ++pos) row.push_back(run.x_order[pos][rep]);
        row.push_back(run.eta_max[rep]);
        row.push_back(run.x_top_norm[rep]);
        out.table.rows.push_back(std::move(row));
    }
    out.meta = {{"n", exp.n},
                {"k", exp.k},
                {"reps", exp.reps},
                {"threshold", run.norm.threshold},
                {"scale", run.norm.scale},
                {"center", run.norm.center}};
    out.summary = "n=" + std::to_string(exp.n) + " k=" + std::to_string(exp.k) +
                  " reps=" + std::to_string(exp.reps) +
                  " threshold=" + format_float(run.norm.threshold);
    return out;
}

CommandOutput cmd_lemma(const ExperimentConfig& cfg) {
    const auto& model_json = model_block(cfg);
    const RadialLaw radial =
        radial_from_config(require_field(model_json, "radial", "/model"), "/model/radial");
    const MixingLaw mixing =
        mixing_from_config(require_field(model_json, "mixing", "/model"), "/model/mixing");
    const auto& cmd = command_block(cfg);
    const std::string check = string_field(cmd, "check", "/command");
    const std::vector<double> us = number_list_field(cmd, "u", "/command");

    CommandOutput out;
    std::vector<std::vector<double>> rows(us.size());
    if (check == "a") {
        const double y = number_field(cmd, "y", "/command");
        const double z = number_field(cmd, "z", "/command");
        parallel_for(us.size(), [&](std::size_t i) {
            rows[i] = {us[i], lemma1a_ratio(radial, mixing, y, z, us[i])};
        });
        out.table.columns = {"u", "ratio"};
    } else if (check == "b") {
        const double y = number_field(cmd, "y", "/command");
        const double z = number_field(cmd, "z", "/command");
        const double beta = number_field(cmd, "beta", "/command");
        parallel_for(us.size(), [&](std::size_t i) {
            rows[i] = {us[i], lemma1b_ratio(radial, mixing, y, z, beta, us[i])};
        });
        out.table.columns = {"u", "ratio"};
    } else if (check == "c") {
        const double beta = number_field(cmd, "beta", "/command");
        const double mu = number_field(cmd, "mu", "/command");
        const double z = number_field(cmd, "z", "/command");
        parallel_for(us.size(), [&](std::size_t i) {
            const Lemma1cResult res = lemma1c_checks(radial, mixing, beta, mu, z, us[i]);
            rows[i] = {us[i], res.vanish, res.ratio};
        });
        out.table.columns = {"u", "vanish", "ratio"};
    } else {
        throw ConfigError("/command/check: expected 'a', 'b' or 'c'");
    }
    out.table.rows = std::move(rows);
    out.meta = {{"check", check}};
    out.summary = "check=" + check + " rows=" + std::to_string(us.size());
    return out;
}

CommandOutput cmd_verify(const ExperimentConfig& cfg, const std::string& self_path) {
    (void)cfg;  // criteria pin their own models and seeds
    VerifyOptions opt;
    opt.cli_path = self_path;
    const auto results = run_acceptance(opt);

    CommandOutput out;
    out.table.columns = {"criterion", "pass"};
    auto labels = nlohmann::json::array();
    auto details = nlohmann::json::array();
    std::size_t passed = 0;
    for (const auto& r : results) {
        std::cout << format_criterion_line(r) << "\n";
        out.table.rows.push_back({static_cast<double>(r.id), r.pass ? 1.0 : 0.0});
        labels.push_back(r.label);
        details.push_back(r.detail);
        if (r.pass) ++passed;
    }
    out.meta = {{"labels", labels}, {"details", details}};
    out.summary = std::to_string(passed) + "/" + std::to_string(results.size()) +
                  " criteria passed";
    out.exit_code = passed == results.size() ? 0 : 2;
    return out;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"W_p scale mixture sampling, conditional laws and limit experiments"};
    app.require_subcommand(1);

    std::string config_path, out_override, format_override;
    std::uint64_t seed_override = 0;
    const std::vector<std::pair<std::string, std::string>> names = {
        {"sample", "draw mixture or bivariate samples"},
        {"cond", "exact conditional law: cdf grid or samples"},
        {"limit", "conditional-law-to-limit-law convergence sweep"},
        {"concomitants", "normalized concomitants of top order statistics"},
        {"lemma", "asymptotic tail-integral ratio checks"},
        {"verify", "run the acceptance suite"},
    };
    for (const auto& [name, desc] : names) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("--config", config_path, "experiment JSON file")->required();
        sub->add_option("--seed", seed_override, "override the config seed");
        sub->add_option("--out", out_override, "override the output path");
        sub->add_option("--format", format_override, "override the output format (csv|json)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        ExperimentConfig cfg = load_config(config_path);
        CLI::App* active = app.get_subcommands().front();
        if (active->count("--seed") > 0) cfg.seed = seed_override;
        if (active->count("--out") > 0) cfg.out = out_override;
        if (active->count("--format") > 0) cfg.format = parse_format(format_override);

        const std::string name = active->get_name();
        CommandOutput res;
        if (name == "sample") {
            res = cmd_sample(cfg);
        } else if (name == "cond") {
            res = cmd_cond(cfg);
        } else if (name == "limit") {
            res = cmd_limit(cfg);
        } else if (name == "concomitants") {
            res = cmd_concomitants(cfg);
        } else if (name == "lemma") {
            res = cmd_lemma(cfg);
        } else {
            res = cmd_verify(cfg, argv[0] != nullptr ? argv[0] : "");
        }

        if (cfg.out.empty()) {
            cfg.out = "wpmix-" + name + (cfg.format == OutputFormat::csv ? ".csv" : ".json");
        }
        write_table(res.table, cfg.out, cfg.format, name, cfg.seed, res.meta);
        std::cout << name << ": " << res.summary << " seed=" << cfg.seed << " -> "
                  << cfg.out << std::endl;
        return res.exit_code;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << std::endl;
        return 1;
    } catch (const InconclusiveOracle& e) {
        std::cerr << "inconclusive oracle: " << e.what() << std::endl;
        return 3;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << std::endl;
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 2;
    }
}

}  // namespace wpmix
