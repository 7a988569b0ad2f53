#include "wpmix/io.hpp"

#include <charconv>
#include <fstream>
#include <system_error>

#include "wpmix/errors.hpp"

namespace wpmix {

OutputFormat parse_format(const std::string& name) {
    if (name == "csv") return OutputFormat::csv;
    if (name == "json") return OutputFormat::json;
    throw ConfigError("unknown output format '" + name + "' (expected csv or json)");
}

std::string format_float(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    if (res.ec != std::errc()) throw NumericError("float formatting failed");
    return std::string(buf, res.ptr);
}

void write_csv(const Table& t, std::ostream& os) {
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
        if (c > 0) os << ',';
        os << t.columns[c];
    }
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) os << ',';
            os << format_float(row[c]);
        }
        os << '\n';
    }
}

nlohmann::json table_json(const Table& t, const std::string& command,
                          std::uint64_t seed, const nlohmann::json& meta) {
    nlohmann::json doc;
    doc["schema"] = 1;
    doc["command"] = command;
    doc["seed"] = seed;
    if (!meta.empty()) doc["meta"] = meta;
    doc["columns"] = t.columns;
    auto rows = nlohmann::json::array();
    for (const auto& row : t.rows) rows.push_back(row);
    doc["rows"] = std::move(rows);
    return doc;
}

void validate_output_json(const nlohmann::json& doc) {
    auto fail = [](const std::string& what) { throw ConfigError("output schema: " + what); };
    if (!doc.is_object()) fail("document is not an object");
    if (!doc.contains("schema") || !doc["schema"].is_number_integer() ||
        doc["schema"].get<int>() != 1) {
        fail("schema field missing or not 1");
    }
    if (!doc.contains("command") || !doc["command"].is_string()) fail("command missing");
    if (!doc.contains("seed") || !doc["seed"].is_number_unsigned()) fail("seed missing");
    if (!doc.contains("columns") || !doc["columns"].is_array()) fail("columns missing");
    for (const auto& c : doc["columns"]) {
        if (!c.is_string()) fail("columns must be strings");
    }
    if (!doc.contains("rows") || !doc["rows"].is_array()) fail("rows missing");
    const std::size_t width = doc["columns"].size();
    for (const auto& row : doc["rows"]) {
        if (!row.is_array() || row.size() != width) fail("row width mismatch");
        for (const auto& v : row) {
            if (!v.is_number()) fail("row entries must be numbers");
        }
    }
    if (doc.contains("meta") && !doc["meta"].is_object()) fail("meta must be an object");
}

void write_table(const Table& t, const std::string& path, OutputFormat format,
                 const std::string& command, std::uint64_t seed,
                 const nlohmann::json& meta) {
    for (const auto& row : t.rows) {
        if (row.size() != t.columns.size()) {
            throw ConfigError("table row width does not match column count");
        }
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ConfigError("cannot open output file: " + path);
    if (format == OutputFormat::csv) {
        write_csv(t, os);
    } else {
        const auto doc = table_json(t, command, seed, meta);
        validate_output_json(doc);
        os << doc.dump(2) << '\n';
    }
    os.flush();
    if (!os) throw ConfigError("write failed: " + path);
}

}  // namespace wpmix
