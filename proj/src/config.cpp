#include "wpmix/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "wpmix/errors.hpp"
#include "wpmix/geometry.hpp"

namespace wpmix {

namespace {

// Line/column of a byte offset, for parse errors.
std::pair<std::size_t, std::size_t> locate(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min(byte, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ConfigError(path.empty() ? what : path + ": " + what);
}

}  // namespace

nlohmann::json parse_json_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << is.rdbuf();
    const std::string text = buf.str();
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        const auto [line, col] = locate(text, e.byte > 0 ? e.byte - 1 : 0);
        std::ostringstream msg;
        msg << path << ":" << line << ":" << col << ": " << e.what();
        throw ConfigError(msg.str());
    }
}

const nlohmann::json& require_field(const nlohmann::json& j, const std::string& key,
                                    const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(path, "missing field '" + key + "'");
    return *it;
}

double number_field(const nlohmann::json& j, const std::string& key,
                    const std::string& path) {
    const auto& v = require_field(j, key, path);
    if (!v.is_number()) fail(path + "/" + key, "expected a number");
    return v.get<double>();
}

double number_or(const nlohmann::json& j, const std::string& key, double fallback,
                 const std::string& path) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    return number_field(j, key, path);
}

std::size_t count_field(const nlohmann::json& j, const std::string& key,
                        const std::string& path) {
    const auto& v = require_field(j, key, path);
    if (!v.is_number_unsigned()) fail(path + "/" + key, "expected a non-negative integer");
    return v.get<std::size_t>();
}

std::string string_field(const nlohmann::json& j, const std::string& key,
                         const std::string& path) {
    const auto& v = require_field(j, key, path);
    if (!v.is_string()) fail(path + "/" + key, "expected a string");
    return v.get<std::string>();
}

bool bool_or(const nlohmann::json& j, const std::string& key, bool fallback,
             const std::string& path) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    const auto& v = j.at(key);
    if (!v.is_boolean()) fail(path + "/" + key, "expected a boolean");
    return v.get<bool>();
}

std::vector<double> number_list_field(const nlohmann::json& j, const std::string& key,
                                      const std::string& path) {
    const auto& v = require_field(j, key, path);
    if (!v.is_array() || v.empty()) fail(path + "/" + key, "expected a non-empty array");
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& e : v) {
        if (!e.is_number()) fail(path + "/" + key, "expected numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

ExperimentConfig load_config(const std::string& path) {
    ExperimentConfig cfg;
    cfg.doc = parse_json_file(path);
    if (!cfg.doc.is_object()) throw ConfigError(path + ": top level must be an object");
    const auto& schema = require_field(cfg.doc, "schema", "");
    if (!schema.is_number_integer() || schema.get<int>() != 1) {
        fail("/schema", "unsupported schema version (expected 1)");
    }
    const auto& seed = require_field(cfg.doc, "seed", "");
    if (!seed.is_number_unsigned()) fail("/seed", "expected an unsigned integer");
    cfg.seed = seed.get<std::uint64_t>();
    if (cfg.doc.contains("out")) cfg.out = string_field(cfg.doc, "out", "");
    if (cfg.doc.contains("format")) {
        cfg.format = parse_format(string_field(cfg.doc, "format", ""));
    }
    return cfg;
}

RadialLaw radial_from_config(const nlohmann::json& j, const std::string& path) {
    const std::string family = string_field(j, "family", path);
    if (family == "kotz3") {
        return kotz3_radial(number_field(j, "K", path), number_field(j, "N", path),
                            number_field(j, "r", path), number_field(j, "delta", path));
    }
    if (family == "finite_endpoint") {
        return finite_endpoint_radial(number_field(j, "c1", path),
                                      number_field(j, "c2", path),
                                      number_field(j, "lambda", path),
                                      number_field(j, "xF", path));
    }
    if (family == "pareto") {
        return pareto_radial(number_field(j, "lambda", path),
                             number_field(j, "gamma", path));
    }
    if (family == "power_endpoint") {
        return power_endpoint_radial(number_field(j, "gamma", path));
    }
    fail(path + "/family", "unknown radial family '" + family + "'");
}

MixingLaw mixing_from_config(const nlohmann::json& j, const std::string& path) {
    const std::string family = string_field(j, "family", path);
    if (family == "beta") {
        return beta_mixing(number_field(j, "a", path), number_field(j, "alpha", path));
    }
    if (family == "power_beta") {
        return power_beta_mixing(number_field(j, "delta", path),
                                 number_field(j, "a", path),
                                 number_field(j, "b", path));
    }
    if (family == "point_mass") {
        return point_mass_mixing(number_field(j, "w0", path));
    }
    fail(path + "/family", "unknown mixing family '" + family + "'");
}

bool is_bivariate_config(const nlohmann::json& model) {
    return model.is_object() && model.contains("rho");
}

namespace {

Matrix matrix_from_config(const nlohmann::json& v, std::size_t d, const std::string& path) {
    if (!v.is_array() || v.size() != d) fail(path, "expected a " + std::to_string(d) + "-row matrix");
    Matrix a(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        const auto& row = v[i];
        if (!row.is_array() || row.size() != d) fail(path, "matrix rows must have length " + std::to_string(d));
        for (std::size_t k = 0; k < d; ++k) {
            if (!row[k].is_number()) fail(path, "matrix entries must be numbers");
            a(i, k) = row[k].get<double>();
        }
    }
    return a;
}

}  // namespace

WpMixtureModel mixture_from_config(const nlohmann::json& model, const std::string& path) {
    const double p = number_field(model, "p", path);
    const std::size_t d = count_field(model, "dim", path);
    const auto& block = require_field(model, "cond_block", path);
    if (!block.is_array() || block.empty()) fail(path + "/cond_block", "expected a non-empty array");
    std::vector<std::size_t> j_idx;
    for (const auto& e : block) {
        if (!e.is_number_unsigned() || e.get<std::size_t>() < 1 || e.get<std::size_t>() > d) {
            fail(path + "/cond_block", "indices must lie in 1.." + std::to_string(d));
        }
        j_idx.push_back(e.get<std::size_t>() - 1);
    }
    std::sort(j_idx.begin(), j_idx.end());
    std::vector<std::size_t> i_idx;
    for (std::size_t k = 0; k < d; ++k) {
        if (!std::binary_search(j_idx.begin(), j_idx.end(), k)) i_idx.push_back(k);
    }
    if (i_idx.empty()) fail(path + "/cond_block", "conditioning block covers every coordinate");
    IndexPartition part = make_partition(d, i_idx);

    Matrix a = model.contains("matrix")
                   ? matrix_from_config(model.at("matrix"), d, path + "/matrix")
                   : Matrix::identity(d);
    RadialLaw radial = radial_from_config(require_field(model, "radial", path), path + "/radial");
    MixingLaw mixing = mixing_from_config(require_field(model, "mixing", path), path + "/mixing");
    const double q_i = number_or(model, "q_i", p, path);
    const double q_j = number_or(model, "q_j", p, path);
    return make_mixture_model(std::move(part), p, std::move(a), std::move(radial),
                              std::move(mixing), q_i, q_j);
}

BivariateModel bivariate_from_config(const nlohmann::json& model, const std::string& path) {
    const double rho = number_field(model, "rho", path);
    const double p = number_field(model, "p", path);
    const double q1 = number_or(model, "q1", 0.5, path);
    const double q2 = number_or(model, "q2", 0.5, path);
    RadialLaw radial = radial_from_config(require_field(model, "radial", path), path + "/radial");
    MixingLaw mixing = mixing_from_config(require_field(model, "mixing", path), path + "/mixing");
    return make_bivariate_model(rho, p, q1, q2, std::move(radial), std::move(mixing));
}

}  // namespace wpmix
