#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "replikit/report.hpp"

namespace replikit {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
    double seconds = 0;
    double limit_seconds = 0; // 0 = no runtime limit
    Report report;
};

constexpr int kCriterionCount = 11;

CriterionResult run_criterion(int id);
// Every criterion when ids is empty.
std::vector<CriterionResult> run_suite(const std::vector<int>& ids = {});

// "[PASS] 7 operator algebra: ... (1.23 s)"
std::string render_line(const CriterionResult& r);
nlohmann::ordered_json to_json(const CriterionResult& r);

} // namespace replikit
