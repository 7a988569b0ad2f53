#pragma once

#include <string>
#include <vector>

namespace wpmix {

struct CriterionResult {
    int id = 0;
    std::string label;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct VerifyOptions {
    // Path to the command-line binary; used by the determinism criterion,
    // which re-runs it under different thread counts and compares bytes.
    // Empty path fails that criterion with an explanatory detail.
    std::string cli_path;
};

// Runs the full acceptance suite in order. Each criterion is isolated: an
// exception fails that criterion and the suite moves on.
std::vector<CriterionResult> run_acceptance(const VerifyOptions& opt = {});

// "[ 7] PASS  heavy-tail closed form and sweep | ..."-style line.
std::string format_criterion_line(const CriterionResult& r);

}  // namespace wpmix
