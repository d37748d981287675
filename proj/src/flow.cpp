#include "sgflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace sgflow {

namespace {

double norm2(const Vec& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

Vec axpy(const Vec& x, double a, const Vec& d) {
    Vec y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] + a * d[i];
    return y;
}

struct EngineError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One engine for both plain and surgered runs. The detection callback is
// invoked on every accepted sample; returning true stops the stepping loop.
class Stepper {
public:
    Stepper(const FlowProblem& p, const StepConfig& step, const StopConfig& stop,
            FlowTrace& trace)
        : p_(p), step_(step), stop_(stop), trace_(trace) {}

    // returns the reason stepping ended
    FlowStatus run(Vec x, double t0, const std::function<bool(const Vec&, double)>& on_sample) {
        Vec g = p_.grad(x);
        double h = step_.adaptive ? step_.h_init : step_.h_fixed;
        double t = t0;
        record(t, x, g, "");
        if (on_sample && on_sample(x, t)) return FlowStatus::converged;  // caller refines status
        if (norm2(g) < stop_.grad_tol) return FlowStatus::converged;

        for (std::uint64_t n = 0; n < step_.max_steps; ++n) {
            if (t >= stop_.max_time) return FlowStatus::max_time_reached;
            h = std::min(h, stop_.max_time - t);

            Vec xn;
            bool accepted = false;
            if (step_.adaptive) {
                accepted = bogacki_shampine_step(x, g, h, xn);
            } else {
                xn = fixed_step(x, g, step_.h_fixed);
                h = step_.h_fixed;
                accepted = true;
            }
            if (!accepted) {
                if (h <= step_.h_min) return FlowStatus::step_failure;
                continue;  // h already shrunk
            }
            if (!p_.in_domain(xn)) {
                // try to stop short of the boundary
                if (step_.adaptive && h > 4.0 * step_.h_min) {
                    h *= 0.25;
                    continue;
                }
                return FlowStatus::domain_exit;
            }
            double f_prev = trace_.samples.back().f;
            double f_new = p_.f(xn);
            if (f_new > f_prev + 1e-10 * std::max(1.0, std::abs(f_prev))) {
                // a descent step must not increase f; refine instead
                if (step_.adaptive && h > 4.0 * step_.h_min) {
                    h *= 0.25;
                    continue;
                }
                return FlowStatus::step_failure;
            }
            t += (step_.adaptive ? h_used_ : step_.h_fixed);
            x = xn;
            g = p_.grad(x);
            record(t, x, g, "");
            if (on_sample && on_sample(x, t)) return FlowStatus::converged;
            if (norm2(g) < stop_.grad_tol) return FlowStatus::converged;
            if (step_.adaptive) h = next_h_;
        }
        return FlowStatus::step_failure;
    }

    void record(double t, const Vec& x, const Vec& g, const std::string& event) {
        double fv = p_.f(x);
        double gn = norm2(g);
        if (fv < p_.f_floor - 1e-9 * std::max(1.0, std::abs(p_.f_floor)))
            throw EngineError("flow: observed f below the configured floor");
        if (gn > p_.gradient_cap * (1.0 + 1e-9))
            throw EngineError("flow: gradient norm exceeds the configured cap");
        trace_.samples.push_back(FlowSample{t, x, fv, gn, event});
    }

private:
    // Bogacki-Shampine 3(2); returns false (with h shrunk) on error rejection.
    bool bogacki_shampine_step(const Vec& x, const Vec& g1, double& h, Vec& out) {
        Vec k1(g1.size());
        for (std::size_t i = 0; i < g1.size(); ++i) k1[i] = -g1[i];
        Vec k2 = p_.grad(axpy(x, 0.5 * h, k1));
        for (double& v : k2) v = -v;
        Vec k3 = p_.grad(axpy(x, 0.75 * h, k2));
        for (double& v : k3) v = -v;
        Vec x3(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            x3[i] = x[i] + h * (2.0 / 9.0 * k1[i] + 1.0 / 3.0 * k2[i] + 4.0 / 9.0 * k3[i]);
        Vec k4 = p_.grad(x3);
        for (double& v : k4) v = -v;
        double err = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            double e2 = h * (7.0 / 24.0 * k1[i] + 0.25 * k2[i] + 1.0 / 3.0 * k3[i] +
                             0.125 * k4[i]);
            double e3 = x3[i] - x[i];
            double sc = step_.abs_tol + step_.rel_tol * std::max(std::abs(x[i]), std::abs(x3[i]));
            double d = (e3 - e2) / sc;
            err += d * d;
        }
        err = std::sqrt(err / x.size());
        double factor = err > 0.0 ? 0.9 * std::pow(err, -1.0 / 3.0) : 5.0;
        factor = std::clamp(factor, 0.2, 5.0);
        if (err <= 1.0) {
            out = x3;
            h_used_ = h;
            next_h_ = std::min(h * factor, step_.h_max);
            return true;
        }
        h = std::max(h * factor, step_.h_min);
        return false;
    }

    Vec fixed_step(const Vec& x, const Vec& g1, double h) {
        if (step_.order == 4) {
            Vec k1(g1.size());
            for (std::size_t i = 0; i < g1.size(); ++i) k1[i] = -g1[i];
            Vec k2 = p_.grad(axpy(x, 0.5 * h, k1));
            for (double& v : k2) v = -v;
            Vec k3 = p_.grad(axpy(x, 0.5 * h, k2));
            for (double& v : k3) v = -v;
            Vec k4 = p_.grad(axpy(x, h, k3));
            for (double& v : k4) v = -v;
            Vec out(x.size());
            for (std::size_t i = 0; i < x.size(); ++i)
                out[i] = x[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            return out;
        }
        // Heun (order 2)
        Vec k1(g1.size());
        for (std::size_t i = 0; i < g1.size(); ++i) k1[i] = -g1[i];
        Vec k2 = p_.grad(axpy(x, h, k1));
        for (double& v : k2) v = -v;
        Vec out(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            out[i] = x[i] + 0.5 * h * (k1[i] + k2[i]);
        return out;
    }

    const FlowProblem& p_;
    const StepConfig& step_;
    const StopConfig& stop_;
    FlowTrace& trace_;
    double h_used_ = 0.0;
    double next_h_ = 0.0;
};

}  // namespace

double FlowProblem::distance_to_g(const Vec& x, std::size_t* nearest) const {
    double best = 1e300;
    std::size_t bi = 0;
    for (std::size_t i = 0; i < degenerate_set.size(); ++i) {
        double d = euclidean_distance(x, degenerate_set[i].point);
        if (d < best) {
            best = d;
            bi = i;
        }
    }
    if (nearest) *nearest = bi;
    return best;
}

const char* flow_status_name(FlowStatus s) {
    switch (s) {
        case FlowStatus::converged: return "converged";
        case FlowStatus::surgery_budget_exceeded: return "surgery_budget_exceeded";
        case FlowStatus::step_failure: return "step_failure";
        case FlowStatus::domain_exit: return "domain_exit";
        case FlowStatus::max_time_reached: return "max_time_reached";
    }
    return "?";
}

FlowTrace integrate_gradient_flow(const FlowProblem& problem, const Vec& x0,
                                  const StepConfig& step, const StopConfig& stop) {
    if (!problem.in_domain(x0))
        throw std::domain_error("integrate_gradient_flow: x0 outside the domain");
    FlowTrace trace;
    Stepper s(problem, step, stop, trace);
    trace.status = s.run(x0, 0.0, nullptr);
    if (trace.status == FlowStatus::converged && !trace.samples.empty())
        trace.samples.back().event = "converged";
    return trace;
}

double energy_identity_residual(const FlowTrace& trace) {
    if (!trace.surgeries.empty())
        throw std::invalid_argument("energy_identity_residual: trace contains surgeries");
    if (trace.samples.size() < 2) return 0.0;
    double integral = 0.0;
    for (std::size_t i = 1; i < trace.samples.size(); ++i) {
        const auto& a = trace.samples[i - 1];
        const auto& b = trace.samples[i];
        integral += 0.5 * (a.gradnorm * a.gradnorm + b.gradnorm * b.gradnorm) * (b.t - a.t);
    }
    return std::abs(trace.initial_f() - trace.final_f() - integral);
}

FlowTrace surgered_flow(const FlowProblem& problem, const Vec& x0, double eps, int budget,
                        const StepConfig& step, const StopConfig& stop) {
    if (!(eps > 0.0) || eps > problem.max_epsilon)
        throw std::domain_error("surgered_flow: need 0 < eps <= configured eps0");
    if (budget < 1) throw std::invalid_argument("surgered_flow: budget >= 1 required");
    if (!problem.in_domain(x0))
        throw std::domain_error("surgered_flow: x0 outside the domain");

    const double a_eps = problem.small_gradient_fn(eps);
    FlowTrace trace;
    trace.status = FlowStatus::max_time_reached;

    // synthetic time advance for snap/restart samples (the reparameterized
    // segment; no flow identity is claimed on it)
    const double dt_synth = 1e-3;

    Vec x = x0;
    double t = 0.0;
    long last_snap = -1;
    while (true) {
        std::size_t hit = 0;
        bool fired = false;
        auto detector = [&](const Vec& q, double) {
            std::size_t gi;
            double d = problem.distance_to_g(q, &gi);
            if (d >= eps) return false;
            const GPoint& g = problem.degenerate_set[gi];
            Vec grad = problem.grad(q);
            double gn = 0.0;
            for (double v : grad) gn += v * v;
            gn = std::sqrt(gn);
            // the descent guard keeps the snap from raising f: a flow line
            // converging to g approaches from above its level
            if (gn < a_eps && problem.f(q) > g.f_value) {
                hit = gi;
                fired = true;
                return true;
            }
            return false;
        };

        Stepper s(problem, step, stop, trace);
        FlowStatus st = s.run(x, t, detector);
        t = trace.samples.back().t;

        if (!fired) {
            trace.status = st;
            if (st == FlowStatus::converged) trace.samples.back().event = "converged";
            return trace;
        }

        const GPoint& g = problem.degenerate_set[hit];
        double f_before = trace.samples.back().f;
        t += dt_synth;
        const double t_snap = t;
        s.record(t, g.point, problem.grad(g.point), "snap");
        if (g.terminal) {
            trace.samples.back().event = "converged";
            trace.status = FlowStatus::converged;
            return trace;
        }
        if (long(hit) == last_snap)
            throw std::runtime_error("surgered_flow: consecutive surgeries snapped to the same "
                                     "G-point (restart failed to escape)");
        last_snap = long(hit);

        if (int(trace.surgeries.size()) >= budget) {
            trace.status = FlowStatus::surgery_budget_exceeded;
            return trace;
        }
        if (!problem.restart)
            throw std::runtime_error("surgered_flow: no restart generator configured");
        std::vector<Vec> path = problem.restart(g);
        if (path.empty())
            throw std::runtime_error("surgered_flow: restart_not_descending (empty path)");
        double f_prev = g.f_value;
        for (const Vec& q : path) {
            if (!problem.in_domain(q))
                throw std::runtime_error("surgered_flow: restart path leaves the domain");
            double fq = problem.f(q);
            if (fq >= f_prev)
                throw std::runtime_error("surgered_flow: restart_not_descending");
            f_prev = fq;
            t += dt_synth;
            s.record(t, q, problem.grad(q), "restart");
        }
        trace.surgeries.push_back(
            SurgeryRecord{t_snap, hit, g.point, f_before, problem.f(path.back())});
        x = path.back();
        t += dt_synth;
    }
}

BoundCertificate lower_bound_certificate(const FlowTrace& trace, double eps,
                                         const FlowProblem& problem) {
    if (trace.samples.empty())
        throw std::invalid_argument("lower_bound_certificate: empty trace");
    const int n = problem.separation.curve_count_n;
    const double delta = problem.separation.delta;
    const double reach = std::pow(2.0, n + 1) * eps;
    const double lhs = trace.initial_f() - trace.final_f();
    const double d = euclidean_distance(trace.samples.front().x, trace.samples.back().x);
    const double a = problem.small_gradient_fn(eps);
    BoundCertificate c;
    c.valid = eps < delta / std::pow(2.0, n + 1);
    c.lhs = lhs;
    c.rhs = a * ((delta - reach) / delta) * (d - reach);
    c.holds = lhs >= c.rhs - 1e-9 * std::max(1.0, std::abs(lhs));
    return c;
}

bool surgery_count_check(const FlowTrace& trace, double v, int n) {
    if (!(v > 0.0)) throw std::domain_error("surgery_count_check: v > 0 required");
    return double(trace.surgeries.size()) <=
           std::pow(2.0, n) * (trace.initial_f() / v + 1.0);
}

namespace {
std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}
}  // namespace

void write_trace_csv(const FlowTrace& trace, std::ostream& os) {
    const std::size_t dim = trace.samples.empty() ? 0 : trace.samples.front().x.size();
    os << "t";
    for (std::size_t i = 0; i < dim; ++i) os << ",x" << i;
    os << ",f,gradnorm,event\n";
    for (const auto& s : trace.samples) {
        os << fmt17(s.t);
        for (double v : s.x) os << "," << fmt17(v);
        os << "," << fmt17(s.f) << "," << fmt17(s.gradnorm) << "," << s.event << "\n";
    }
}

nlohmann::json trace_to_json(const FlowTrace& trace) {
    nlohmann::json samples = nlohmann::json::array();
    for (const auto& s : trace.samples)
        samples.push_back({{"t", s.t}, {"x", s.x}, {"f", s.f}, {"gradnorm", s.gradnorm},
                           {"event", s.event}});
    nlohmann::json surgeries = nlohmann::json::array();
    for (const auto& s : trace.surgeries)
        surgeries.push_back({{"t", s.t}, {"g_index", s.g_index}, {"snapped_to", s.snapped_to},
                             {"f_before", s.f_before}, {"f_after", s.f_after}});
    return nlohmann::json{{"schema", "sgflow-trace-v1"},
                          {"status", flow_status_name(trace.status)},
                          {"samples", samples},
                          {"surgeries", surgeries}};
}

}  // namespace sgflow
