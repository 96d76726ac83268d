#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace isoq {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

CriterionResult run_criterion(int id);
// Runs criteria 1..11, printing one line per criterion to out when given.
std::vector<CriterionResult> run_acceptance(std::ostream* out = nullptr);
std::string format_result(const CriterionResult& r);

}  // namespace isoq
