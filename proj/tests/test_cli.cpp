#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wpmix/cli.hpp"
#include "wpmix/io.hpp"

using namespace wpmix;

namespace {

std::string write_temp(const std::string& name, const std::string& body) {
    std::ofstream os(name, std::ios::binary);
    os << body;
    return name;
}

std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    std::ostringstream buf;
    buf << is.rdbuf();
    return buf.str();
}

struct FileGuard {
    std::vector<std::string> paths;
    ~FileGuard() {
        for (const auto& p : paths) std::remove(p.c_str());
    }
};

int run(std::initializer_list<const char*> args) {
    std::vector<const char*> argv{"wpmix"};
    argv.insert(argv.end(), args.begin(), args.end());
    return run_cli(int(argv.size()), argv.data());
}

const char* kSampleConfig = R"({
  "schema": 1, "seed": 42,
  "model": {
    "p": 2.0, "dim": 3, "cond_block": [3],
    "radial": {"family": "kotz3", "K": 1, "N": 0, "r": 1, "delta": 1},
    "mixing": {"family": "beta", "a": 1, "alpha": 1.5}
  },
  "command": {"n": 500, "factors": true}
})";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("sampling runs are byte identical") {
    FileGuard fg{{write_temp("cli-sample.json", kSampleConfig), "cli-s1.csv",
                  "cli-s2.csv", "cli-s3.csv"}};
    CHECK(run({"sample", "--config", "cli-sample.json", "--out", "cli-s1.csv"}) == 0);
    CHECK(run({"sample", "--config", "cli-sample.json", "--out", "cli-s2.csv"}) == 0);
    const std::string first = slurp("cli-s1.csv");
    CHECK_FALSE(first.empty());
    CHECK(first == slurp("cli-s2.csv"));

    // thread count must not change the bytes
    setenv("WPMIX_THREADS", "3", 1);
    const int rc = run({"sample", "--config", "cli-sample.json", "--out", "cli-s3.csv"});
    unsetenv("WPMIX_THREADS");
    CHECK(rc == 0);
    CHECK(first == slurp("cli-s3.csv"));

    // header plus one row per sample
    CHECK(first.substr(0, first.find('\n')) == "index,x1,x2,x3,r,wp");
}

TEST_CASE("json output validates") {
    FileGuard fg{{write_temp("cli-json.json", kSampleConfig), "cli-out.json"}};
    CHECK(run({"sample", "--config", "cli-json.json", "--out", "cli-out.json",
               "--format", "json"}) == 0);
    const auto doc = nlohmann::json::parse(slurp("cli-out.json"));
    CHECK_NOTHROW(validate_output_json(doc));
    CHECK(doc["command"] == "sample");
    CHECK(doc["seed"] == 42);
    CHECK(doc["rows"].size() == 500);
    CHECK(doc["meta"]["dim"] == 3);
}

TEST_CASE("conditional cdf values land in the table") {
    const char* cfg = R"({
      "schema": 1, "seed": 1,
      "model": {
        "p": 1.0, "dim": 2, "cond_block": [2],
        "radial": {"family": "kotz3", "K": 1, "N": 0, "r": 1, "delta": 1},
        "mixing": {"family": "beta", "a": 1, "alpha": 1}
      },
      "command": {"a_j": [1.0], "mode": "cdf", "z": [1.0]}
    })";
    FileGuard fg{{write_temp("cli-cond.json", cfg), "cli-cond.csv"}};
    CHECK(run({"cond", "--config", "cli-cond.json", "--out", "cli-cond.csv"}) == 0);
    const std::string body = slurp("cli-cond.csv");
    CHECK(body.substr(0, body.find('\n')) == "z,cdf");
    // P(R* <= 1) = 1 - E1(2)/E1(1) for this model
    CHECK(body.find("1,0.777100767") != std::string::npos);
}

TEST_CASE("seed override changes the draw") {
    FileGuard fg{{write_temp("cli-seed.json", kSampleConfig), "cli-a.csv",
                  "cli-b.csv"}};
    CHECK(run({"sample", "--config", "cli-seed.json", "--out", "cli-a.csv"}) == 0);
    CHECK(run({"sample", "--config", "cli-seed.json", "--out", "cli-b.csv",
               "--seed", "43"}) == 0);
    CHECK(slurp("cli-a.csv") != slurp("cli-b.csv"));
}

TEST_CASE("config errors exit with code one") {
    const char* bad = R"({
      "schema": 1, "seed": 1,
      "model": {
        "p": 2.0, "dim": 2, "cond_block": [2],
        "radial": {"family": "nope"},
        "mixing": {"family": "beta", "a": 1, "alpha": 1}
      },
      "command": {"n": 10}
    })";
    FileGuard fg{{write_temp("cli-bad.json", bad)}};
    CHECK(run({"sample", "--config", "cli-bad.json", "--out", "cli-bad.csv"}) == 1);
    CHECK(run({"sample", "--config", "no-such-file.json"}) == 1);
    CHECK(run({"frobnicate", "--config", "cli-bad.json"}) != 0);
    CHECK(run({"sample"}) != 0);  // --config is required
}

}  // TEST_SUITE
