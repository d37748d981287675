#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "sgflow/path_geometry.hpp"  // Vec, euclidean_distance

namespace sgflow {

// Completion point of the space. Terminal points are interior critical
// points: the flow stops there. Non-terminal points carry a strictly
// descending restart path.
struct GPoint {
    Vec point;
    double f_value;
    bool terminal = false;
};

// Separation certificate for the degenerate set: among any 2^n + 1 points of
// G there are two at distance >= delta.
struct GSeparation {
    int curve_count_n = 0;
    double delta = 1.0;
    int N() const { return 1 << curve_count_n; }
};

// Pluggable (space, functional, gradient, degenerate set, restart) bundle.
// Immutable after construction; safe to share across concurrent runs.
struct FlowProblem {
    int dimension = 1;
    std::function<double(const Vec&)> f;
    std::function<Vec(const Vec&)> grad;
    std::function<bool(const Vec&)> in_domain;
    std::vector<GPoint> degenerate_set;
    GSeparation separation;
    // certified lower bound: d(x, G) >= eps implies |grad f(x)| >= small_gradient_fn(eps)
    std::function<double(double)> small_gradient_fn;
    double gradient_cap = 1e9;
    double f_floor = -1e300;
    double max_epsilon = 0.5;  // eps0 for surgered runs
    std::function<std::vector<Vec>(const GPoint&)> restart;

    double distance_to_g(const Vec& x, std::size_t* nearest = nullptr) const;
};

enum class FlowStatus {
    converged,
    surgery_budget_exceeded,
    step_failure,
    domain_exit,
    max_time_reached,
};
const char* flow_status_name(FlowStatus s);

struct FlowSample {
    double t;
    Vec x;
    double f;
    double gradnorm;
    std::string event;  // "", "snap", "restart", "converged", ...
};

struct SurgeryRecord {
    double t;
    std::size_t g_index;
    Vec snapped_to;
    double f_before;  // f at the pre-snap sample
    double f_after;   // f at the restart endpoint
};

struct FlowTrace {
    std::vector<FlowSample> samples;
    std::vector<SurgeryRecord> surgeries;
    FlowStatus status = FlowStatus::max_time_reached;

    double initial_f() const { return samples.front().f; }
    double final_f() const { return samples.back().f; }
};

struct StepConfig {
    bool adaptive = true;
    int order = 2;          // fixed-step: 2 (Heun) or 4 (classic RK)
    double rel_tol = 1e-8;  // adaptive local error control
    double abs_tol = 1e-10;
    double h_init = 1e-3;
    double h_min = 1e-13;
    double h_max = 0.25;
    double h_fixed = 1e-2;
    std::uint64_t max_steps = 4000000;
};

struct StopConfig {
    double grad_tol = 1e-7;
    double max_time = 200.0;
};

// Follows dx/dt = -grad f from x0 until the gradient norm drops below
// stop.grad_tol or max_time is reached. Samples are the accepted steps.
FlowTrace integrate_gradient_flow(const FlowProblem& problem, const Vec& x0,
                                  const StepConfig& step = {}, const StopConfig& stop = {});

// |f(x_0) - f(x_a) - int |grad f|^2 dt| with the integral by trapezoid rule
// on the samples. Rejects traces containing surgery events.
double energy_identity_residual(const FlowTrace& trace);

// Gradient flow with surgery: when the trace enters the eps-neighborhood of
// a G-point with gradient norm < small_gradient_fn(eps) (and f above the
// G-point's value, so the snap descends), snap to the nearest G-point. A
// terminal point ends the run; otherwise the restart path is consumed and
// the flow resumes from its endpoint.
FlowTrace surgered_flow(const FlowProblem& problem, const Vec& x0, double eps, int budget,
                        const StepConfig& step = {}, const StopConfig& stop = {});

struct BoundCertificate {
    double lhs;   // f(x_0) - f(x_end)
    double rhs;   // A(eps) ((delta - 2^{n+1} eps)/delta) (d(x_0, x_end) - 2^{n+1} eps)
    bool holds;
    bool valid;   // eps < delta / 2^{n+1}; otherwise the bound is vacuous
};
BoundCertificate lower_bound_certificate(const FlowTrace& trace, double eps,
                                         const FlowProblem& problem);

// surgery count <= 2^n (f(x_0)/v + 1)
bool surgery_count_check(const FlowTrace& trace, double v, int n);

// CSV columns: t, x0..x{d-1}, f, gradnorm, event (17 significant digits).
void write_trace_csv(const FlowTrace& trace, std::ostream& os);
nlohmann::json trace_to_json(const FlowTrace& trace);

}  // namespace sgflow
