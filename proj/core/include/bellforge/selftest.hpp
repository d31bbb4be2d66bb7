#pragma once

#include <string>
#include <vector>

namespace bellforge {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Runs the full acceptance suite (nine criteria) and returns one result per
/// criterion. jobs > 1 parallelizes vertex evaluations where supported;
/// results are identical for any jobs value.
std::vector<CriterionResult> run_acceptance(int jobs = 1);

}  // namespace bellforge
