#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace kacmod {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    double seconds = 0;
    nlohmann::json details;
};

struct SuiteOptions {
    bool quick = false;  // ranks 1 and 2 only
    int threads = 1;
};

inline constexpr int kCriteria = 12;

CriterionResult run_criterion(int id, const SuiteOptions& opt);
// Criteria run on a small worker pool; results come back in id order.
std::vector<CriterionResult> run_suite(const SuiteOptions& opt, const std::vector<int>& ids = {});
nlohmann::json to_json(const CriterionResult& r);

}  // namespace kacmod
