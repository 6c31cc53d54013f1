// Acceptance battery: one PASS/FAIL line per criterion, exit code = number
// of failing criteria.

#include <iostream>

#include "cdklab/acceptance.hpp"

int main() {
    const auto results = cdklab::acceptance::run_suite({}, std::cout);
    int failures = 0;
    for (const auto& r : results)
        if (!r.pass) ++failures;
    std::cout << results.size() - failures << "/" << results.size() << " criteria passed\n";
    return failures;
}
