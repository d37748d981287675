// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion. Exit code 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sgflow/verify.hpp"

namespace {

using Clock = std::chrono::steady_clock;

struct Criterion {
    int id;
    std::string label;
    bool pass;
    double seconds;
    double limit;  // <= 0: no runtime limit
    std::string detail;
};

bool checks_pass(const sgflow::SuiteReport& rep, const std::set<std::string>& names,
                 std::string& detail) {
    bool all = true;
    for (const auto& c : rep.checks) {
        if (!names.count(c.name)) continue;
        if (!c.pass) {
            all = false;
            detail += c.name + " [" + c.detail + "] ";
        }
    }
    return all;
}

}  // namespace

int main() {
    const std::uint64_t seed = 42;
    std::vector<Criterion> results;

    // criteria 1 and 2 share the schwarzian suite run; its runtime counts
    // toward criterion 1's 10 s limit
    auto t0 = Clock::now();
    sgflow::SuiteReport schw = sgflow::run_schwarzian_suite(seed);
    double schw_sec = std::chrono::duration<double>(Clock::now() - t0).count();

    {
        std::string detail;
        bool ok = checks_pass(schw,
                              {"mobius_schwarzian_zero", "composition_rule_residual",
                               "koebe_at_zero", "schwarzian_is_minus6_b1",
                               "series_matches_closed_form", "finite_difference_crosscheck"},
                              detail);
        results.push_back({1, "schwarzian suite", ok, schw_sec, 10.0, detail});
    }
    {
        std::string detail;
        bool ok = checks_pass(schw,
                              {"kraus_nehari", "koebe_extremal_linf", "bigdisk_inequality",
                               "bigdisk_values", "ahlfors_weill_linear", "area_constraint"},
                              detail);
        results.push_back({2, "bound suite", ok, schw_sec, -1.0, detail});
    }
    {
        auto t = Clock::now();
        sgflow::SuiteReport rep = sgflow::run_pathfrac_suite(seed);
        double sec = std::chrono::duration<double>(Clock::now() - t).count();
        std::string detail;
        bool ok = checks_pass(rep,
                              {"random_instances_hold", "cover_two_eps_and_order",
                               "cover_sum_inequality", "segment_fixed_example",
                               "separation_vs_exhaustive"},
                              detail);
        results.push_back({3, "path-fraction suite", ok, sec, 30.0, detail});
    }
    {
        auto t = Clock::now();
        sgflow::SuiteReport rep = sgflow::run_annulus_suite(seed);
        double sec = std::chrono::duration<double>(Clock::now() - t).count();
        std::string detail;
        bool ok = checks_pass(rep,
                              {"triviality_residual", "harmonic_norm_bound",
                               "wp_path_bound_quadrature", "cusp_semigroup",
                               "pairing_closed_forms"},
                              detail);
        results.push_back({4, "annulus suite", ok, sec, -1.0, detail});
    }
    {
        auto t = Clock::now();
        sgflow::SuiteReport rep = sgflow::run_constants_suite(seed);
        double sec = std::chrono::duration<double>(Clock::now() - t).count();
        std::string detail;
        bool ok = checks_pass(rep,
                              {"ledger_formulas", "nearnode_chain", "drilling_pigeonhole_200",
                               "drilling_constructed_instances"},
                              detail);
        results.push_back({5, "constants suite", ok, sec, -1.0, detail});
    }
    {
        auto t = Clock::now();
        sgflow::SuiteReport rep = sgflow::run_flow_suite(seed);
        double sec = std::chrono::duration<double>(Clock::now() - t).count();
        std::string detail;
        bool ok = checks_pass(rep,
                              {"energy_identity_order", "grid_convergence",
                               "stratum_surgery_triggered", "grid_certificates",
                               "grid_surgery_counts", "grid_invariants"},
                              detail);
        results.push_back({6, "flow suite", ok, sec, 60.0, detail});
    }
    {
        auto t = Clock::now();
        std::string a = sgflow::suites_to_json(sgflow::run_suites("all", seed), seed).dump(2);
        std::string b = sgflow::suites_to_json(sgflow::run_suites("all", seed), seed).dump(2);
        double sec = std::chrono::duration<double>(Clock::now() - t).count();
        bool ok = a == b && !a.empty();
        results.push_back({7, "determinism (seed 42, two runs byte-identical)", ok, sec, -1.0,
                           ok ? "" : "reports differ"});
    }

    bool all = true;
    for (const auto& r : results) {
        bool time_ok = r.limit <= 0.0 || r.seconds < r.limit;
        bool pass = r.pass && time_ok;
        all = all && pass;
        if (r.limit > 0.0)
            std::printf("[%s] criterion %d: %s (%.2f s < %.0f s)%s%s\n",
                        pass ? "PASS" : "FAIL", r.id, r.label.c_str(), r.seconds, r.limit,
                        r.detail.empty() ? "" : " -- ", r.detail.c_str());
        else
            std::printf("[%s] criterion %d: %s (%.2f s)%s%s\n", pass ? "PASS" : "FAIL", r.id,
                        r.label.c_str(), r.seconds, r.detail.empty() ? "" : " -- ",
                        r.detail.c_str());
    }
    std::printf("%s\n", all ? "acceptance: all criteria pass" : "acceptance: FAILURES present");
    return all ? 0 : 1;
}
