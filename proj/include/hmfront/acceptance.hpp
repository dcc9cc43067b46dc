#pragma once

#include <string>
#include <vector>

namespace hmfront {

struct AcceptanceOptions {
    double h = 0.01;            // grid spacing for every front solve
    double omega0_shift = 0.0;  // added to Ω₀ in the front-delay prediction (sensitivity check)
    std::vector<int> only;      // criterion ids to run; empty runs all
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string measured;
    double seconds = 0.0;
    double budget_seconds = 0.0;
};

inline constexpr int kCriterionCount = 11;

/// Runs one criterion; the wall-clock budget is part of the verdict.
CriterionResult run_criterion(int id, const AcceptanceOptions& opt);

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt);

/// "[PASS] 3 reverse-quench law: <measured> (12.3 s / 120 s)"
std::string format_result(const CriterionResult& r);

}  // namespace hmfront
