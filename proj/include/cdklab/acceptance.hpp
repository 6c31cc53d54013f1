#pragma once

#include <ostream>
#include <set>
#include <string>
#include <vector>

namespace cdklab::acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

/// Runs the acceptance battery (all criteria, or the subset in `only`);
/// prints one PASS/FAIL line per criterion to `out`.
std::vector<CriterionResult> run_suite(const std::set<int>& only, std::ostream& out);

int criterion_count();

}  // namespace cdklab::acceptance
