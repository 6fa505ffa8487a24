#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace monsterlab::suites {

struct SuiteConfig {
    int depth = -1;  // -1 picks the suite's documented default
    long grid = -1;
    double tol = -1;
    std::uint64_t seed = 1;
};

struct SuiteResult {
    std::string suite;
    long cases = 0;
    long passed = 0;
    long failed = 0;
    std::vector<std::string> witnesses;  // first few failure descriptions
    double elapsed_s = 0;

    bool ok() const { return failed == 0 && cases > 0; }
};

std::vector<std::string> suite_names();
bool has_suite(const std::string& name);
SuiteResult run_suite(const std::string& name, const SuiteConfig& cfg);

std::string suite_result_to_json(const SuiteResult& r);

}  // namespace monsterlab::suites
