#pragma once

#include <string>
#include <vector>

namespace cvdv {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    double seconds = 0.0;
    double limit_seconds = 0.0;
    std::string detail;  // measured values next to their pinned bounds
};

// Runs the full acceptance gate in order. Every tolerance is pinned here;
// a criterion passes only if its checks hold and it finishes inside its
// time budget.
std::vector<CriterionResult> run_acceptance();

}  // namespace cvdv
