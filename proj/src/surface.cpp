#include "sgflow/surface.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sgflow {

SurfaceTopology::SurfaceTopology(std::vector<SurfaceComponent> comps) : comps_(std::move(comps)) {
    if (comps_.empty()) throw std::invalid_argument("SurfaceTopology: no components");
    for (const auto& c : comps_) {
        if (c.genus < 0 || c.punctures < 0)
            throw std::invalid_argument("SurfaceTopology: negative genus or puncture count");
        int e = 2 * c.genus - 2 + c.punctures;
        if (e <= 0) throw std::invalid_argument("SurfaceTopology: component not hyperbolizable");
        n_ += 3 * c.genus - 3 + c.punctures;
        chi_ += e;
    }
    if (n_ < 1) throw std::invalid_argument("SurfaceTopology: n(S) >= 1 required");
}

double SurfaceTopology::area() const { return 2.0 * M_PI * chi_; }

bool SurfaceTopology::closed() const {
    return std::all_of(comps_.begin(), comps_.end(),
                       [](const SurfaceComponent& c) { return c.punctures == 0; });
}

const char* provenance_name(Provenance p) {
    switch (p) {
        case Provenance::paper_universal: return "paper-universal";
        case Provenance::external_nonconstructive: return "external-nonconstructive";
        case Provenance::derived: return "derived";
    }
    return "?";
}

ConstantsLedger::ConstantsLedger(Inputs in) : in_(in) {
    if (!(in_.delta0 > 0.0)) throw std::invalid_argument("ledger: delta0 > 0 required");
    if (!(in_.c_drill > 0.0)) throw std::invalid_argument("ledger: c_drill > 0 required");
    if (!(in_.l_drill > 0.0 && in_.l_drill < 2.0 * eps2()))
        throw std::invalid_argument("ledger: need 0 < l_drill < 2 arcsinh(1)");
    if (!(in_.lambda >= 0.0 && in_.lambda < 1.0))
        throw std::invalid_argument("ledger: need 0 <= lambda < 1");
}

double ConstantsLedger::eps2() const { return std::asinh(1.0); }
double ConstantsLedger::C0() const { return std::sqrt(2.0) * (in_.c_drill + 1.0); }
double ConstantsLedger::C1() const { return 9.0 * std::sqrt(2.0) * (C0() + 1.0); }
double ConstantsLedger::K0() const { return 1.0 / (4.0 * std::sqrt(3.0 * M_PI) * C1()); }
double ConstantsLedger::eps0() const {
    return std::min(std::sqrt(in_.l_drill) / K0(), 4.0 * std::sqrt(M_PI / 3.0));
}

double ConstantsLedger::a_eps(double eps, const SurfaceTopology& topo) const {
    if (!(eps > 0.0)) throw std::domain_error("a_eps: eps > 0 required");
    int n = topo.curve_count();
    return std::pow(K0() * eps * (1.0 - in_.lambda) / n, 2.0 * n + 3.0);
}

double ConstantsLedger::eps_star(const SurfaceTopology& topo) const {
    return std::min(eps0(), in_.delta0 / std::pow(2.0, topo.curve_count() + 2));
}

double ConstantsLedger::a_of_s(const SurfaceTopology& topo) const {
    return 0.5 * a_eps(eps_star(topo), topo);
}

std::vector<LedgerEntry> ConstantsLedger::entries(const SurfaceTopology& topo) const {
    using P = Provenance;
    std::vector<LedgerEntry> e;
    e.push_back({"n(S)", double(topo.curve_count()), P::derived});
    e.push_back({"|chi|", double(topo.abs_euler()), P::derived});
    e.push_back({"area", topo.area(), P::derived});
    e.push_back({"eps2", eps2(), P::paper_universal});
    e.push_back({"delta0", delta0(), P::external_nonconstructive});
    e.push_back({"c_drill", c_drill(), P::external_nonconstructive});
    e.push_back({"l_drill", l_drill(), P::external_nonconstructive});
    e.push_back({"lambda", lambda(), P::external_nonconstructive});
    e.push_back({"C0", C0(), P::derived});
    e.push_back({"C1", C1(), P::derived});
    e.push_back({"K0", K0(), P::derived});
    e.push_back({"eps0", eps0(), P::derived});
    e.push_back({"eps_star", eps_star(topo), P::derived});
    e.push_back({"A(eps*,S)", a_eps(eps_star(topo), topo), P::derived});
    e.push_back({"A(S)", a_of_s(topo), P::derived});
    e.push_back({"delta", delta(), P::derived});
    e.push_back({"gradient_cap", gradient_norm_cap(topo), P::derived});
    return e;
}

nlohmann::json ConstantsLedger::to_json(const SurfaceTopology& topo) const {
    nlohmann::json comps = nlohmann::json::array();
    for (const auto& c : topo.components())
        comps.push_back({{"genus", c.genus}, {"punctures", c.punctures}});
    nlohmann::json out{{"schema", "sgflow-constants-v1"}, {"topology", comps}};
    nlohmann::json tbl = nlohmann::json::array();
    for (const auto& le : entries(topo))
        tbl.push_back({{"name", le.name}, {"value", le.value}, {"provenance", provenance_name(le.prov)}});
    out["entries"] = tbl;
    return out;
}

double collar_width(double l) {
    if (!(l > 0.0)) throw std::domain_error("collar_width: l > 0 required");
    return std::asinh(1.0 / std::sinh(0.5 * l));
}

double collar_injectivity(double l, double d) {
    if (!(l > 0.0)) throw std::domain_error("collar_injectivity: l > 0 required");
    if (d < 0.0 || d > collar_width(l) + 1e-12)
        throw std::domain_error("collar_injectivity: out_of_collar");
    return std::asinh(std::sinh(0.5 * l) * std::cosh(d));
}

DrillingSelection select_drilling_simplex(const std::vector<double>& lengths, double l2norm,
                                          const SurfaceTopology& topo,
                                          const ConstantsLedger& ledger) {
    const int n = topo.curve_count();
    const double Lambda = std::pow(l2norm, 2.0 / (2.0 * n + 3.0));
    if (Lambda > ledger.l_drill())
        throw std::domain_error("select_drilling_simplex: precondition_violated (Lambda > l_drill)");
    for (double l : lengths)
        if (l < 0.0) throw std::invalid_argument("select_drilling_simplex: negative length");
    for (int k = 0; k <= n; ++k) {
        const double lo = std::pow(Lambda, 2.0 * k + 3.0);
        const double hi = std::pow(Lambda, 2.0 * k + 1.0);
        bool empty = std::none_of(lengths.begin(), lengths.end(),
                                  [&](double l) { return l > lo && l <= hi; });
        if (empty) {
            DrillingSelection sel{k, lo, {}};
            for (std::size_t i = 0; i < lengths.size(); ++i)
                if (lengths[i] <= lo) sel.tau.push_back(i);
            return sel;
        }
    }
    // a surface carries at most n(S) disjoint short curves, so at most n of
    // the n+1 windows can be occupied; reaching here means the spectrum is
    // not geometrically realizable
    throw std::domain_error(
        "select_drilling_simplex: no empty length window (more than n(S) short curves)");
}

double drill_pointwise_bound(double l2norm, const SurfaceTopology& topo,
                             const ConstantsLedger& ledger) {
    const int n = topo.curve_count();
    const double Lambda = std::pow(l2norm, 2.0 / (2.0 * n + 3.0));
    if (Lambda > ledger.l_drill())
        throw std::domain_error("drill_pointwise_bound: precondition_violated");
    return ledger.C0() * std::sqrt(double(n)) * Lambda;
}

ProgressBounds progress_bounds(double l2norm, const SurfaceTopology& topo,
                               const ConstantsLedger& ledger) {
    const int n = topo.curve_count();
    const double Lambda = std::pow(l2norm, 2.0 / (2.0 * n + 3.0));
    if (Lambda > std::min(ledger.l_drill(), 2.0 * std::asinh(0.5)))
        throw std::domain_error("progress_bounds: precondition_violated");
    const double root = std::pow(l2norm, 1.0 / (2.0 * n + 3.0));
    const double sq_n = std::sqrt(double(n));
    return ProgressBounds{2.0 * M_PI / std::sqrt(std::asinh(0.5)) * sq_n * root,
                          ledger.C1() * sq_n * root};
}

double nearnode_threshold(double eps, const SurfaceTopology& topo,
                          const ConstantsLedger& ledger) {
    if (!(eps > 0.0) || eps > ledger.eps0())
        throw std::domain_error("nearnode_threshold: out_of_range (need 0 < eps <= eps0)");
    const double A = ledger.a_eps(eps, topo);
    // consistency chain at ||phi||_2 = A
    const int n = topo.curve_count();
    const double Lambda = std::pow(A, 2.0 / (2.0 * n + 3.0));
    if (!(Lambda < ledger.l_drill()))
        throw std::logic_error("nearnode_threshold: chain failure (Lambda >= l_drill)");
    const double linf = ledger.C1() * ledger.K0() * eps;  // = eps/(4 sqrt(3 pi))
    if (!(linf <= 1.0 / 3.0 + 1e-12))
        throw std::logic_error("nearnode_threshold: chain failure (linf bound > 1/3)");
    return A;
}

MainBounds main_theorem_bounds(const SurfaceTopology& topo, const ConstantsLedger& ledger,
                               double d_wp) {
    if (d_wp < 0.0) throw std::domain_error("main_theorem_bounds: d_wp >= 0 required");
    MainBounds b;
    b.lower = ledger.a_of_s(topo) * (d_wp - ledger.delta());
    b.upper = 3.0 * std::sqrt(0.5 * M_PI * topo.abs_euler()) * d_wp;
    if (b.lower > 0.0 && b.lower > b.upper)
        throw std::logic_error("main_theorem_bounds: lower exceeds upper");
    return b;
}

double gradient_norm_cap(const SurfaceTopology& topo) {
    return 1.5 * std::sqrt(topo.area());
}

double w_volume_scale(double W, double t, int chi) { return W - t * M_PI * chi; }

CoreVolumeSandwich core_volume_sandwich(double v_r, double l_beta,
                                        const SurfaceTopology* incompressible) {
    if (l_beta < 0.0) throw std::domain_error("core_volume_sandwich: l_beta >= 0 required");
    CoreVolumeSandwich s{v_r + 0.25 * l_beta, v_r + 0.5 * l_beta, false, true};
    if (incompressible) {
        s.cap_checked = true;
        s.cap_ok = l_beta <= 6.0 * M_PI * incompressible->abs_euler() + 1e-12;
    }
    return s;
}

UnbendingResult unbending_functionals(const std::vector<double>& theta,
                                      const std::vector<double>& ell) {
    if (theta.size() != ell.size())
        throw std::invalid_argument("unbending_functionals: mismatched grids");
    if (theta.size() < 5) throw std::domain_error("unbending_functionals: grid_too_coarse");
    for (std::size_t i = 1; i < theta.size(); ++i)
        if (!(theta[i] > theta[i - 1]))
            throw std::invalid_argument("unbending_functionals: grid not increasing");
    for (double l : ell)
        if (l < 0.0) throw std::invalid_argument("unbending_functionals: ell >= 0 required");

    const std::size_t n = theta.size();
    UnbendingResult r;
    r.theta = theta;
    r.dW.resize(n);
    r.l2_bound.resize(n);
    std::vector<double> dl(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (i == 0)
            dl[i] = (ell[1] - ell[0]) / (theta[1] - theta[0]);
        else if (i + 1 == n)
            dl[i] = (ell[n - 1] - ell[n - 2]) / (theta[n - 1] - theta[n - 2]);
        else {
            // centered difference on a possibly non-uniform grid
            double hl = theta[i] - theta[i - 1], hr = theta[i + 1] - theta[i];
            dl[i] = (ell[i + 1] * hl * hl - ell[i - 1] * hr * hr +
                     ell[i] * (hr * hr - hl * hl)) /
                    (hl * hr * (hl + hr));
        }
        r.dW[i] = 0.25 * (ell[i] - theta[i] * dl[i]);
        r.l2_bound[i] = 2.5 * std::sqrt(std::max(0.0, theta[i] * ell[i]));
    }
    r.ell_decreasing = std::all_of(dl.begin(), dl.end(), [](double d) { return d < 0.0; });

    // trapezoid over the grid; exact for affine ell
    double I = 0.0;
    for (std::size_t i = 1; i < n; ++i)
        I += 0.5 * (ell[i] + ell[i - 1]) * (theta[i] - theta[i - 1]);
    r.gap = 0.25 * I + 0.125 * theta.front() * ell.front();

    double lmax = *std::max_element(ell.begin(), ell.end());
    if (lmax > 0.0 && !(r.gap > 0.0))
        throw std::logic_error("unbending_functionals: gap must be positive when ell > 0");
    return r;
}

}  // namespace sgflow
