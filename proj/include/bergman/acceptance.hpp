#pragma once

#include <string>
#include <vector>

namespace bergman {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

/// Runs the acceptance criteria (all of them, or the subset whose names
/// contain one of the `only` substrings), printing one PASS/FAIL line per
/// criterion as it completes.
std::vector<CriterionResult> run_acceptance(
    const std::vector<std::string>& only = {});

bool all_passed(const std::vector<CriterionResult>& results);

std::string acceptance_to_json(const std::vector<CriterionResult>& results);

}  // namespace bergman
