#include <doctest.h>

#include <cmath>
#include <sstream>

#include "sgflow/flow.hpp"
#include "sgflow/models.hpp"

using namespace sgflow;

namespace {

// reference integrator, independent of the engine: classic RK4 at a tiny
// fixed step directly on the model's closed-form gradient
Vec reference_flow(const FlowProblem& p, Vec x, double T, double h = 1e-4) {
    auto rhs = [&](const Vec& q) {
        Vec g = p.grad(q);
        for (double& v : g) v = -v;
        return g;
    };
    auto add = [](const Vec& a, double c, const Vec& b) {
        Vec r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + c * b[i];
        return r;
    };
    long n = std::lround(T / h);
    for (long s = 0; s < n; ++s) {
        Vec k1 = rhs(x);
        Vec k2 = rhs(add(x, 0.5 * h, k1));
        Vec k3 = rhs(add(x, 0.5 * h, k2));
        Vec k4 = rhs(add(x, h, k3));
        for (std::size_t i = 0; i < x.size(); ++i)
            x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return x;
}

FlowProblem line_problem() {
    // f(x) = -x on [0, 1]: flows out through the right face
    FlowProblem p;
    p.dimension = 1;
    p.f = [](const Vec& v) { return -v[0]; };
    p.grad = [](const Vec&) { return Vec{-1.0}; };
    p.in_domain = [](const Vec& v) { return v[0] >= 0.0 && v[0] <= 1.0; };
    p.separation = GSeparation{0, 1.0};
    p.small_gradient_fn = [](double) { return 1.0; };
    p.gradient_cap = 2.0;
    p.f_floor = -2.0;
    p.max_epsilon = 0.25;
    return p;
}

}  // namespace

TEST_CASE("quadratic model decays like e^{-2t}") {
    ModelInstance q = quadratic_model(1);
    StepConfig st;
    st.rel_tol = 1e-10;
    st.abs_tol = 1e-12;
    StopConfig sp;
    sp.grad_tol = 0.0;
    sp.max_time = 1.0;
    FlowTrace tr = integrate_gradient_flow(q.problem, {1.0}, st, sp);
    CHECK(tr.status == FlowStatus::max_time_reached);
    for (const auto& s : tr.samples) {
        CHECK(std::abs(s.x[0] - std::exp(-2.0 * s.t)) < 1e-8);
        CHECK(std::abs(s.f - s.x[0] * s.x[0]) < 1e-15);
    }
    // f monotone to 0
    for (std::size_t i = 1; i < tr.samples.size(); ++i)
        CHECK(tr.samples[i].f <= tr.samples[i - 1].f + 1e-14);
}

TEST_CASE("energy identity") {
    ModelInstance q = quadratic_model(1);
    SUBCASE("fine fixed step on [0,1] gives residual below 1e-6") {
        StepConfig st;
        st.adaptive = false;
        st.h_fixed = 2e-4;
        StopConfig sp;
        sp.grad_tol = 0.0;
        sp.max_time = 1.0 - 1e-12;
        FlowTrace tr = integrate_gradient_flow(q.problem, {1.0}, st, sp);
        CHECK(energy_identity_residual(tr) < 1e-6);
        // closed form: f(x0) - f(xT) = int 4 x0^2 e^{-4t} dt = x0^2 (1 - e^{-4T})
        double drop = tr.initial_f() - tr.final_f();
        CHECK(std::abs(drop - (1.0 - std::exp(-4.0))) < 1e-6);
    }
    SUBCASE("residual halves at second order") {
        auto residual_at = [&](double h) {
            StepConfig st;
            st.adaptive = false;
            st.h_fixed = h;
            StopConfig sp;
            sp.grad_tol = 0.0;
            sp.max_time = 1.0 - 1e-12;
            return energy_identity_residual(integrate_gradient_flow(q.problem, {1.0}, st, sp));
        };
        double r1 = residual_at(0.05), r2 = residual_at(0.025);
        CHECK(r2 < r1);
        CHECK(r1 / r2 > 3.0);  // ~4 at order 2
        CHECK(r1 / r2 < 5.0);
    }
    SUBCASE("default-model residual shrinks at second order under halving") {
        ModelInstance m = default_model();
        auto residual_at = [&](double h) {
            StepConfig st;
            st.adaptive = false;
            st.h_fixed = h;
            StopConfig sp;
            sp.grad_tol = 0.0;
            sp.max_time = 2.0 - 1e-12;
            return energy_identity_residual(
                integrate_gradient_flow(m.problem, {0.9, 0.4}, st, sp));
        };
        double r1 = residual_at(0.02), r2 = residual_at(0.01);
        CHECK(r2 < r1);
        CHECK(r1 / r2 > 3.0);
        CHECK(r1 / r2 < 5.0);
    }
    SUBCASE("zero-gradient problem has residual exactly 0") {
        FlowProblem flat;
        flat.dimension = 1;
        flat.f = [](const Vec&) { return 5.0; };
        flat.grad = [](const Vec&) { return Vec{0.0}; };
        flat.in_domain = [](const Vec&) { return true; };
        flat.f_floor = 0.0;
        flat.gradient_cap = 1.0;
        FlowTrace tr = integrate_gradient_flow(flat, {0.3});
        CHECK(tr.status == FlowStatus::converged);
        CHECK(energy_identity_residual(tr) == 0.0);
    }
    SUBCASE("traces with surgeries are rejected") {
        FlowTrace tr = integrate_gradient_flow(q.problem, {1.0});
        tr.surgeries.push_back(SurgeryRecord{0.0, 0, {0.0}, 1.0, 0.5});
        CHECK_THROWS_AS(energy_identity_residual(tr), std::invalid_argument);
    }
}

TEST_CASE("default model: plain flow into the interior minimum") {
    ModelInstance m = default_model();
    StopConfig sp;
    sp.grad_tol = 1e-9;
    sp.max_time = 100.0;
    FlowTrace tr = integrate_gradient_flow(m.problem, {0.9, 0.0}, StepConfig{}, sp);
    CHECK(tr.status == FlowStatus::converged);
    CHECK(std::abs(tr.final_f() - 0.75) < 1e-10);
    CHECK(std::abs(tr.samples.back().x[0] - 1.0 / std::sqrt(2.0)) < 1e-6);
    // against the independent reference integrator at a common time
    Vec ref = reference_flow(m.problem, {0.9, 0.0}, 2.0);
    double t_target = 2.0;
    for (std::size_t i = 1; i < tr.samples.size(); ++i) {
        if (tr.samples[i].t >= t_target) {
            // nearest sample is close to the reference state
            CHECK(euclidean_distance(tr.samples[i].x, ref) < 1e-3);
            break;
        }
    }
}

TEST_CASE("starting exactly at the critical point") {
    ModelInstance m = default_model();
    FlowTrace tr = integrate_gradient_flow(m.problem, {1.0 / std::sqrt(2.0), 0.0});
    CHECK(tr.status == FlowStatus::converged);
    CHECK(tr.samples.size() == 1);
    CHECK(tr.surgeries.empty());
}

TEST_CASE("surgered flow on the default model") {
    ModelInstance m = default_model();
    const double eps = 0.32;
    StepConfig st;
    st.h_max = 0.1;
    StopConfig sp;
    sp.grad_tol = 1e-7;
    sp.max_time = 300.0;

    SUBCASE("stratum-attracted start performs a surgery at the origin") {
        FlowTrace tr = surgered_flow(m.problem, {0.005, 1.2}, eps, 4, st, sp);
        CHECK(tr.status == FlowStatus::converged);
        REQUIRE(tr.surgeries.size() == 1);
        CHECK(euclidean_distance(tr.surgeries[0].snapped_to, {0.0, 0.0}) < 1e-12);
        CHECK(tr.surgeries[0].f_before > 1.0);  // approaches the stratum level from above
        CHECK(tr.surgeries[0].f_after < 1.0);   // restart strictly descends
        CHECK(tr.final_f() == 0.75);            // terminal snap lands exactly
    }
    SUBCASE("immediate snap when the start lies inside the neighborhood") {
        // d(x0, (0,0)) = 0.15 < eps and the gradient there is already tiny
        FlowTrace tr = surgered_flow(m.problem, {0.005, 0.15}, eps, 4, st, sp);
        REQUIRE(!tr.surgeries.empty());
        CHECK(tr.surgeries[0].t < 0.01);
        CHECK(tr.status == FlowStatus::converged);
    }
    SUBCASE("basin start needs no surgery and matches the plain flow") {
        FlowTrace surg = surgered_flow(m.problem, {0.9, 0.1}, eps, 4, st, sp);
        FlowTrace plain = integrate_gradient_flow(m.problem, {0.9, 0.1}, st, sp);
        CHECK(surg.surgeries.empty());
        CHECK(surg.status == FlowStatus::converged);
        std::size_t n = std::min(surg.samples.size(), plain.samples.size()) - 1;
        for (std::size_t i = 0; i < n; ++i)
            CHECK(euclidean_distance(surg.samples[i].x, plain.samples[i].x) < 1e-12);
    }
    SUBCASE("time stamps strictly increase across snap and restart samples") {
        FlowTrace tr = surgered_flow(m.problem, {0.005, 1.2}, eps, 4, st, sp);
        for (std::size_t i = 1; i < tr.samples.size(); ++i)
            CHECK(tr.samples[i].t > tr.samples[i - 1].t);
    }
    SUBCASE("preconditions") {
        CHECK_THROWS_AS(surgered_flow(m.problem, {0.5, 0.0}, 0.4, 4), std::domain_error);
        CHECK_THROWS_AS(surgered_flow(m.problem, {0.5, 0.0}, 0.32, 0), std::invalid_argument);
        CHECK_THROWS_AS(surgered_flow(m.problem, {-0.5, 0.0}, 0.32, 4), std::domain_error);
    }
}

TEST_CASE("bad restart is reported") {
    ModelInstance m = default_model();
    m.problem.restart = [](const GPoint&) {
        return std::vector<Vec>{{0.1, 0.0}, {0.2, 0.0}, {0.05, 1.2}};  // f rises at the end
    };
    StepConfig st;
    st.h_max = 0.1;
    CHECK_THROWS_WITH_AS(surgered_flow(m.problem, {0.005, 1.2}, 0.32, 4, st, StopConfig{}),
                         doctest::Contains("restart_not_descending"), std::runtime_error);
}

TEST_CASE("ladder manifest: multiple surgeries and budget exhaustion") {
    ModelInstance lad = model_by_name("ladder");
    StepConfig st;
    st.h_max = 0.1;
    StopConfig sp;
    sp.grad_tol = 1e-8;
    sp.max_time = 100.0;

    FlowTrace two = surgered_flow(lad.problem, {0.5}, 0.3, 8, st, sp);
    CHECK(two.status == FlowStatus::converged);
    CHECK(two.surgeries.size() == 2);
    CHECK(std::abs(two.final_f() - 1.0) < 1e-12);
    // consecutive surgeries snapped to distinct points
    CHECK(two.surgeries[0].g_index != two.surgeries[1].g_index);
    // f drop at each surgery strictly positive
    for (const auto& sg : two.surgeries) CHECK(sg.f_before > sg.f_after);

    FlowTrace cut = surgered_flow(lad.problem, {0.5}, 0.3, 1, st, sp);
    CHECK(cut.status == FlowStatus::surgery_budget_exceeded);
    CHECK(cut.surgeries.size() == 1);

    BoundCertificate c = lower_bound_certificate(two, 0.3, lad.problem);
    CHECK(c.valid);
    CHECK(c.holds);
    CHECK(std::abs(c.lhs - 2.5) < 1e-12);  // f(0.5) - f(3) = 3.5 - 1
}

TEST_CASE("lower bound certificate") {
    ModelInstance q = quadratic_model(1);
    SUBCASE("quadratic closed form") {
        StopConfig sp;
        sp.grad_tol = 2e-6;  // end near 1e-6
        FlowTrace tr = integrate_gradient_flow(q.problem, {1.0}, StepConfig{}, sp);
        BoundCertificate c = lower_bound_certificate(tr, 0.1, q.problem);
        CHECK(c.valid);
        CHECK(c.holds);
        CHECK(std::abs(c.lhs - 1.0) < 1e-10);
        // A(eps) = 2 eps, delta = 6, n = 0: rhs = 0.2 (5.8/6)(d - 0.2)
        double d = std::abs(tr.samples.back().x[0] - 1.0);
        CHECK(std::abs(c.rhs - 0.2 * (5.8 / 6.0) * (d - 0.2)) < 1e-12);
    }
    SUBCASE("zero-length trace is vacuously certified") {
        FlowTrace tr = integrate_gradient_flow(q.problem, {0.0});
        BoundCertificate c = lower_bound_certificate(tr, 0.1, q.problem);
        CHECK(c.rhs <= 0.0);
        CHECK(c.holds);
    }
    SUBCASE("vacuous when eps reaches delta/2^{n+1}") {
        FlowTrace tr = integrate_gradient_flow(q.problem, {1.0});
        BoundCertificate c = lower_bound_certificate(tr, 3.5, q.problem);
        CHECK(!c.valid);
    }
}

TEST_CASE("surgery count check") {
    ModelInstance q = quadratic_model(1);
    FlowTrace tr = integrate_gradient_flow(q.problem, {1.0});
    CHECK(surgery_count_check(tr, 0.37, 0));  // zero surgeries
    FlowTrace fake = tr;
    for (int i = 0; i < 9; ++i) fake.surgeries.push_back(SurgeryRecord{double(i), 0, {0.0}, 1, 0});
    CHECK(!surgery_count_check(fake, 0.5, 0));  // 9 > 2^0 (1/0.5 + 1) = 3
    CHECK(surgery_count_check(fake, 0.5, 4));   // 9 <= 2^4 (1/0.5 + 1) = 48
    CHECK_THROWS_AS(surgery_count_check(tr, 0.0, 0), std::domain_error);
}

TEST_CASE("engine failure modes") {
    SUBCASE("domain exit") {
        FlowTrace tr = integrate_gradient_flow(line_problem(), {0.5});
        CHECK(tr.status == FlowStatus::domain_exit);
    }
    SUBCASE("step budget exhausted reports step_failure") {
        ModelInstance q = quadratic_model(1);
        StepConfig st;
        st.max_steps = 2;
        StopConfig sp;
        sp.grad_tol = 1e-12;
        FlowTrace tr = integrate_gradient_flow(q.problem, {1.0}, st, sp);
        CHECK(tr.status == FlowStatus::step_failure);
    }
    SUBCASE("start outside the domain is rejected") {
        CHECK_THROWS_AS(integrate_gradient_flow(line_problem(), {2.0}), std::domain_error);
    }
}

TEST_CASE("trace serialization") {
    ModelInstance q = quadratic_model(2);
    StopConfig sp;
    sp.grad_tol = 1e-4;
    FlowTrace tr = integrate_gradient_flow(q.problem, {1.0, -0.5}, StepConfig{}, sp);

    std::ostringstream csv;
    write_trace_csv(tr, csv);
    std::string text = csv.str();
    CHECK(text.rfind("t,x0,x1,f,gradnorm,event\n", 0) == 0);
    // deterministic: same trace serializes to the same bytes
    std::ostringstream csv2;
    write_trace_csv(tr, csv2);
    CHECK(text == csv2.str());
    // 17-significant-digit round trip of the first f value
    std::string line = text.substr(text.find('\n') + 1);
    std::string f_field = line;
    for (int comma = 0; comma < 3; ++comma) f_field = f_field.substr(f_field.find(',') + 1);
    f_field = f_field.substr(0, f_field.find(','));
    CHECK(std::stod(f_field) == tr.samples[0].f);

    nlohmann::json j = trace_to_json(tr);
    CHECK(j.at("schema") == "sgflow-trace-v1");
    CHECK(j.at("status") == "converged");
    CHECK(j.at("samples").size() == tr.samples.size());
    CHECK(j.at("surgeries").empty());
}
