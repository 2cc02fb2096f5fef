#pragma once

#include <string>
#include <vector>

namespace quadprop {

struct CheckResult {
    std::string name;
    bool pass = false;
    double measured = 0;   // the quantity compared against the tolerance
    double tolerance = 0;  // 0 when not applicable
    std::string detail;
    bool informational = false;  // reported but never counted as a failure
};

struct CriterionResult {
    int index = 0;
    std::string title;
    std::vector<CheckResult> checks;
    double seconds = 0;

    bool passed() const;
    double worst_margin() const;  // max over checks of measured/tolerance
};

inline constexpr int kCriterionCount = 10;

/// Run one verification criterion (1-based). `corrupt` deliberately injects a
/// defect into the quantities under test; a healthy verifier must then fail.
CriterionResult run_criterion(int index, bool corrupt = false);

std::vector<std::string> suite_names();

/// Named suites group the criteria by module family for the CLI front end.
std::vector<CriterionResult> run_suite(const std::string& name, bool corrupt = false);

}  // namespace quadprop
