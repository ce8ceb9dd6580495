// Acceptance battery: one pass/fail line per criterion, nonzero exit if any
// criterion fails.
#include <iostream>

#include "piforge/verify.hpp"

int main() {
    const std::vector<piforge::ClaimReport> reports =
        piforge::acceptance_criteria(PIFORGE_FIXTURE_DIR);
    bool all_pass = true;
    for (const auto& r : reports) {
        std::cout << r.to_line() << "\n";
        all_pass = all_pass && r.pass;
    }
    std::cout << (all_pass ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL") << "\n";
    return all_pass ? 0 : 1;
}
