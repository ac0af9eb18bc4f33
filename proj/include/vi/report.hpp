#pragma once

#include <functional>
#include <string>
#include <vector>

#include "vi/rational.hpp"

namespace vi::rep {

struct CheckResult {
    std::string id;
    std::string title;
    bool pass = false;
    bool skipped = false;
    std::string detail;
    long millis = 0;
};

struct CheckSpec {
    std::string id;
    std::string title;
    std::string suite;  // "fast" or "full"
    std::function<CheckResult()> run;
};

// the registered acceptance suite; "fast" excludes the localization-heavy
// criteria, "all" runs everything
const std::vector<CheckSpec>& acceptance_checks();
std::vector<CheckResult> run_suite(const std::string& suite, long max_order);

// the assumption ledger embedded in every report
std::vector<std::string> assumption_notes();

std::string results_to_json(const std::vector<CheckResult>& results);
std::string results_to_table(const std::vector<CheckResult>& results);

}  // namespace vi::rep
