#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

#include "wpmix/io.hpp"
#include "wpmix/laws.hpp"
#include "wpmix/linalg.hpp"
#include "wpmix/mixture.hpp"

namespace wpmix {

// Parsed experiment file. `doc` keeps the full document so each subcommand
// can read its own command block; seed/out/format are hoisted because the
// CLI can override them.
struct ExperimentConfig {
    nlohmann::json doc;
    std::uint64_t seed = 0;
    std::string out;
    OutputFormat format = OutputFormat::csv;
};

// Parses a JSON file; syntax errors come back as ConfigError with the file
// name and line/column of the offending byte.
nlohmann::json parse_json_file(const std::string& path);

// Requires schema == 1 and an unsigned integer seed (runs are reproducible
// by construction, so there is no wall-clock fallback).
ExperimentConfig load_config(const std::string& path);

// Field access with json-pointer-style paths in error messages.
const nlohmann::json& require_field(const nlohmann::json& j,
                                    const std::string& key,
                                    const std::string& path);
double number_field(const nlohmann::json& j, const std::string& key,
                    const std::string& path);
double number_or(const nlohmann::json& j, const std::string& key,
                 double fallback, const std::string& path);
std::size_t count_field(const nlohmann::json& j, const std::string& key,
                        const std::string& path);
std::string string_field(const nlohmann::json& j, const std::string& key,
                         const std::string& path);
bool bool_or(const nlohmann::json& j, const std::string& key, bool fallback,
             const std::string& path);
std::vector<double> number_list_field(const nlohmann::json& j,
                                      const std::string& key,
                                      const std::string& path);

// Law blocks: {"family": <name>, <named parameters...>}.
RadialLaw radial_from_config(const nlohmann::json& j, const std::string& path);
MixingLaw mixing_from_config(const nlohmann::json& j, const std::string& path);

// A model block with "rho" describes the bivariate concomitant form;
// one with "dim"/"cond_block" describes the general mixture.
bool is_bivariate_config(const nlohmann::json& model);
WpMixtureModel mixture_from_config(const nlohmann::json& model,
                                   const std::string& path);
BivariateModel bivariate_from_config(const nlohmann::json& model,
                                     const std::string& path);

}  // namespace wpmix
