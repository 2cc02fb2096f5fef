// Acceptance gate: runs the numbered verification criteria and prints one
// PASS/FAIL line per criterion (details per check below it). Exit status is
// nonzero if any selected criterion fails.
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "quadprop/common.hpp"
#include "quadprop/verify.hpp"

using namespace quadprop;

namespace {
void print_criterion(const CriterionResult& cr) {
    std::printf("CRITERION %2d %s  %s  (%.1fs)\n", cr.index,
                cr.passed() ? "PASS" : "FAIL", cr.title.c_str(), cr.seconds);
    for (const CheckResult& c : cr.checks) {
        const char* tag = c.informational ? "info" : (c.pass ? " ok " : "FAIL");
        std::printf("    [%s] %-68s measured %.3e", tag, c.name.c_str(), c.measured);
        if (c.tolerance > 0) std::printf("  tol %.0e", c.tolerance);
        std::printf("\n");
        if (!c.detail.empty()) std::printf("           %s\n", c.detail.c_str());
    }
    std::fflush(stdout);
}
}  // namespace

int main(int argc, char** argv) {
    std::vector<int> selected;
    bool corrupt = false;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            selected.push_back(std::atoi(argv[++i]));
        } else if (std::strcmp(argv[i], "--corrupt") == 0) {
            corrupt = true;
        } else {
            std::fprintf(stderr, "usage: %s [--criterion N]... [--corrupt]\n", argv[0]);
            return 2;
        }
    }
    if (selected.empty())
        for (int k = 1; k <= kCriterionCount; ++k) selected.push_back(k);

    int failures = 0;
    for (int k : selected) {
        try {
            const CriterionResult cr = run_criterion(k, corrupt);
            print_criterion(cr);
            if (!cr.passed()) ++failures;
        } catch (const std::exception& e) {
            std::printf("CRITERION %2d FAIL  aborted: %s\n", k, e.what());
            ++failures;
        }
    }
    if (failures > 0) std::printf("%d of %zu criteria failed\n", failures, selected.size());
    return failures == 0 ? 0 : 1;
}
