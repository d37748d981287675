#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace sgflow {

struct CheckResult {
    std::string name;
    bool pass;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed;
    std::vector<CheckResult> checks;
    bool all_pass() const;
};

// suite in {schwarzian, pathfrac, annulus, constants, flow, all}
std::vector<SuiteReport> run_suites(const std::string& suite, std::uint64_t seed);

// Deterministic serialization: same suite + seed gives byte-identical text.
nlohmann::json suites_to_json(const std::vector<SuiteReport>& reports, std::uint64_t seed);

SuiteReport run_schwarzian_suite(std::uint64_t seed);
SuiteReport run_pathfrac_suite(std::uint64_t seed);
SuiteReport run_annulus_suite(std::uint64_t seed);
SuiteReport run_constants_suite(std::uint64_t seed);
SuiteReport run_flow_suite(std::uint64_t seed);

}  // namespace sgflow
