#pragma once

#include <string>
#include <vector>

namespace holosort::acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

// Criteria are numbered 1..10; every tolerance is pinned in the
// implementation, not configurable.
CriterionResult run_criterion(int id);
std::vector<CriterionResult> run_all();
int criterion_count();

}  // namespace holosort::acceptance
