#include <doctest.h>

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "wpmix/config.hpp"
#include "wpmix/errors.hpp"
#include "wpmix/io.hpp"
#include "wpmix/parallel.hpp"

using namespace wpmix;
using nlohmann::json;

namespace {

std::string temp_file(const std::string& name, const std::string& body) {
    const std::string path = "wpmix-test-" + name;
    std::ofstream os(path, std::ios::binary);
    os << body;
    return path;
}

struct FileGuard {
    std::string path;
    ~FileGuard() { std::remove(path.c_str()); }
};

const char* kGeneralModel = R"({
  "p": 2.0, "dim": 3, "cond_block": [3],
  "radial": {"family": "kotz3", "K": 1, "N": 0, "r": 1, "delta": 1},
  "mixing": {"family": "beta", "a": 1, "alpha": 1.5}
})";

}  // namespace

TEST_SUITE("io and config") {

TEST_CASE("floats print as shortest round trips") {
    CHECK(format_float(0.1) == "0.1");
    CHECK(format_float(2.0) == "2");
    CHECK(format_float(-0.5) == "-0.5");
    for (double v : {1.0 / 3.0, 6.02e23, -1.7e-12, 0.7771007670055732,
                     123456789.123456789}) {
        CHECK(std::stod(format_float(v)) == v);
    }
}

TEST_CASE("csv emission") {
    Table t;
    t.columns = {"a", "b"};
    t.rows = {{1.0, 0.5}, {2.0, 0.25}};
    std::ostringstream os;
    write_csv(t, os);
    CHECK(os.str() == "a,b\n1,0.5\n2,0.25\n");
}

TEST_CASE("json emission validates against the schema") {
    Table t;
    t.columns = {"z", "cdf"};
    t.rows = {{1.0, 0.7}, {2.0, 0.9}};
    json doc = table_json(t, "cond", 42, {{"tau", 1.0}});
    CHECK_NOTHROW(validate_output_json(doc));
    CHECK(doc["schema"] == 1);
    CHECK(doc["command"] == "cond");
    CHECK(doc["seed"] == 42);
    CHECK(doc["rows"].size() == 2);
    CHECK(doc["meta"]["tau"] == 1.0);

    json broken = doc;
    broken.erase("rows");
    CHECK_THROWS_AS(validate_output_json(broken), ConfigError);
    broken = doc;
    broken["rows"][0].push_back(3.0);
    CHECK_THROWS_AS(validate_output_json(broken), ConfigError);
    broken = doc;
    broken["schema"] = 2;
    CHECK_THROWS_AS(validate_output_json(broken), ConfigError);
}

TEST_CASE("format names") {
    CHECK(parse_format("csv") == OutputFormat::csv);
    CHECK(parse_format("json") == OutputFormat::json);
    CHECK_THROWS_AS(parse_format("xml"), ConfigError);
}

TEST_CASE("json parse errors carry the location") {
    FileGuard f{temp_file("broken.json", "{\n  \"seed\": 1,\n  oops\n}\n")};
    try {
        parse_json_file(f.path);
        FAIL("expected a parse error");
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        // gcc-style path:line:col prefix
        CHECK(msg.find(f.path + ":3:") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_json_file("does-not-exist.json"), ConfigError);
}

TEST_CASE("config loading guards") {
    FileGuard noseed{temp_file("noseed.json", R"({"schema": 1})")};
    CHECK_THROWS_AS(load_config(noseed.path), ConfigError);
    FileGuard badschema{temp_file("badschema.json", R"({"schema": 2, "seed": 1})")};
    CHECK_THROWS_AS(load_config(badschema.path), ConfigError);
    FileGuard ok{temp_file(
        "ok.json", R"({"schema": 1, "seed": 7, "out": "x.csv", "format": "json"})")};
    auto cfg = load_config(ok.path);
    CHECK(cfg.seed == 7);
    CHECK(cfg.out == "x.csv");
    CHECK(cfg.format == OutputFormat::json);
}

TEST_CASE("law blocks reject unknown families") {
    CHECK_THROWS_AS(
        radial_from_config(json::parse(R"({"family": "cauchy"})"), "/model/radial"),
        ConfigError);
    CHECK_THROWS_AS(
        mixing_from_config(json::parse(R"({"family": "dirichlet"})"), "/model/mixing"),
        ConfigError);
    // missing named parameter
    CHECK_THROWS_AS(
        radial_from_config(json::parse(R"({"family": "pareto", "lambda": 1})"),
                           "/model/radial"),
        ConfigError);
}

TEST_CASE("model blocks") {
    json general = json::parse(kGeneralModel);
    CHECK_FALSE(is_bivariate_config(general));
    auto model = mixture_from_config(general, "/model");
    CHECK(model.part.d == 3);
    REQUIRE(model.part.J.size() == 1);
    CHECK(model.part.J[0] == 2);      // cond_block is 1-based
    CHECK(model.q_i == 2.0);          // defaults to p

    json biv = json::parse(R"({
      "rho": 0.5, "p": 2.0,
      "radial": {"family": "kotz3", "K": 1, "N": 0, "r": 0.5, "delta": 2},
      "mixing": {"family": "beta", "a": 1, "alpha": 1}
    })");
    CHECK(is_bivariate_config(biv));
    auto bm = bivariate_from_config(biv, "/model");
    CHECK(bm.rho == 0.5);
    CHECK(bm.q1 == 0.5);  // default sign probability

    json bad = general;
    bad["cond_block"] = {0};
    CHECK_THROWS_AS(mixture_from_config(bad, "/model"), ConfigError);
    bad["cond_block"] = {1, 2, 3};
    CHECK_THROWS_AS(mixture_from_config(bad, "/model"), ConfigError);
    bad = general;
    bad["matrix"] = {{1.0, 0.0}, {0.0, 1.0}};  // 2x2 for dim 3
    CHECK_THROWS_AS(mixture_from_config(bad, "/model"), ConfigError);
}

TEST_CASE("parallel loops") {
    std::vector<double> out(10000, -1.0);
    parallel_for(out.size(), [&](std::size_t i) { out[i] = double(i) * double(i); });
    for (std::size_t i = 0; i < out.size(); ++i) {
        REQUIRE(out[i] == double(i) * double(i));
    }
    parallel_for(0, [&](std::size_t) { FAIL("must not run for n = 0"); });

    // worker exceptions surface at the call site
    std::atomic<int> ran{0};
    CHECK_THROWS_AS(parallel_for(100,
                                 [&](std::size_t i) {
                                     ++ran;
                                     if (i == 57) throw NumericError("boom");
                                 }),
                    NumericError);
    CHECK(ran.load() > 0);
}

TEST_CASE("thread budget parses the environment") {
    setenv("WPMIX_THREADS", "2", 1);
    CHECK(thread_budget() == 2);
    setenv("WPMIX_THREADS", "abc", 1);
    CHECK_THROWS_AS(thread_budget(), ConfigError);
    setenv("WPMIX_THREADS", "0", 1);
    CHECK_THROWS_AS(thread_budget(), ConfigError);
    unsetenv("WPMIX_THREADS");
    CHECK(thread_budget() >= 1);
}

}  // TEST_SUITE
