#pragma once

#include <string>
#include <vector>

namespace visclab {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

// Runs the full acceptance battery; prints one pass/fail line per criterion
// to stdout when verbose. Returns all results.
std::vector<CriterionResult> run_acceptance(bool verbose = true);

}  // namespace visclab
