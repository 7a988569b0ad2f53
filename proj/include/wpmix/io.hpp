#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace wpmix {

enum class OutputFormat { csv, json };

OutputFormat parse_format(const std::string& name);

// Numeric result table; every emitter reduces to one of these so the two
// output formats and the determinism contract share a single code path.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;  // each row matches columns in size
};

// Shortest decimal string that parses back to exactly the same double.
std::string format_float(double v);

void write_csv(const Table& t, std::ostream& os);

// {"schema": 1, "command": ..., "seed": ..., <meta...>, "columns": [...],
//  "rows": [[...], ...]}
nlohmann::json table_json(const Table& t, const std::string& command,
                          std::uint64_t seed,
                          const nlohmann::json& meta = nlohmann::json::object());

// Structural check of an emitted JSON document against the documented output
// schema; throws ConfigError naming the offending field on mismatch.
void validate_output_json(const nlohmann::json& doc);

// Writes the table to `path` in the requested format (CSV gets a header row,
// JSON the summary document above). Streams are opened in binary mode so the
// bytes are the same on every platform.
void write_table(const Table& t, const std::string& path, OutputFormat format,
                 const std::string& command, std::uint64_t seed,
                 const nlohmann::json& meta = nlohmann::json::object());

}  // namespace wpmix
