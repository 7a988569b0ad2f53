// Runs the acceptance criteria and prints one verdict line each.
// argv[1]: path to the wpmix binary (for the determinism criterion).
#include <cstdio>

#include "wpmix/verify.hpp"

int main(int argc, char** argv) {
    wpmix::VerifyOptions opt;
    if (argc > 1) opt.cli_path = argv[1];

    const auto results = wpmix::run_acceptance(opt);
    int failed = 0;
    for (const auto& r : results) {
        std::puts(wpmix::format_criterion_line(r).c_str());
        if (!r.pass) ++failed;
    }
    std::printf("%zu/%zu criteria passed\n", results.size() - failed,
                results.size());
    return failed == 0 ? 0 : 1;
}
