// Acceptance suite: runs every registered criterion and prints one
// PASS/FAIL line each. The full run builds the deep universal-series cache
// on first execution; later runs reuse it.
#include <cstdio>

#include "vi/report.hpp"

int main() {
    auto results = vi::rep::run_suite("all", 8);
    bool all = true;
    for (auto& r : results) {
        std::printf("%s  %s  %s  [%ld ms]%s%s\n", r.pass ? "PASS" : "FAIL", r.id.c_str(),
                    r.title.c_str(), r.millis, r.detail.empty() ? "" : "  -- ",
                    r.detail.c_str());
        all = all && r.pass;
    }
    std::printf("%s\n", all ? "ACCEPTANCE: ALL CRITERIA PASS" : "ACCEPTANCE: FAILURES PRESENT");
    return all ? 0 : 1;
}
