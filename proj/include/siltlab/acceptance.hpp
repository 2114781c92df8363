#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace siltlab {

// One verdict per acceptance criterion; `detail` carries counts/timings or
// the reason for a failure.
struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
};

// Runs the whole suite over the built-in corpus, streaming one line per
// criterion to `log` as results arrive.
std::vector<CriterionResult> run_acceptance_suite(std::ostream& log);

} // namespace siltlab
