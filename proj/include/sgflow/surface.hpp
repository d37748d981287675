#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

namespace sgflow {

struct SurfaceComponent {
    int genus = 2;
    int punctures = 0;
};

// Finite-type surface, possibly disconnected. Every component must be
// hyperbolizable: 2g - 2 + k > 0.
class SurfaceTopology {
public:
    explicit SurfaceTopology(std::vector<SurfaceComponent> comps);
    static SurfaceTopology closed_genus(int g) { return SurfaceTopology({{g, 0}}); }

    const std::vector<SurfaceComponent>& components() const { return comps_; }
    int curve_count() const { return n_; }   // n(S) = sum(3g - 3 + k)
    int abs_euler() const { return chi_; }   // |chi| = sum(2g - 2 + k)
    double area() const;                     // 2 pi |chi|
    bool closed() const;

private:
    std::vector<SurfaceComponent> comps_;
    int n_ = 0;
    int chi_ = 0;
};

enum class Provenance { paper_universal, external_nonconstructive, derived };
const char* provenance_name(Provenance p);

struct LedgerEntry {
    std::string name;
    double value;
    Provenance prov;
};

// All named constants with their derivation chain:
//   C0 = sqrt2 (c_drill + 1),  C1 = 9 sqrt2 (C0 + 1),  K0 = 1/(4 sqrt(3 pi) C1),
//   eps0 = min(sqrt(l_drill)/K0, 4 sqrt(pi/3)),
//   A(eps, S) = (K0 eps (1 - lambda)/n(S))^{2 n(S) + 3},
//   eps* = min(eps0, delta0/2^{n+2}),  A(S) = A(eps*, S)/2,  delta = delta0/2.
// delta0, c_drill, l_drill, lambda are configurable inputs; the defaults for
// c_drill, l_drill, lambda are placeholders for external non-constructive
// results and are flagged as such.
class ConstantsLedger {
public:
    struct Inputs {
        double delta0 = 6.0;
        double c_drill = 1.0;
        double l_drill = 0.881373587019543025;  // arcsinh 1
        double lambda = 0.5;
    };

    ConstantsLedger() : ConstantsLedger(Inputs{}) {}
    explicit ConstantsLedger(Inputs in);

    const Inputs& inputs() const { return in_; }
    double eps2() const;
    double delta0() const { return in_.delta0; }
    double c_drill() const { return in_.c_drill; }
    double l_drill() const { return in_.l_drill; }
    double lambda() const { return in_.lambda; }
    double C0() const;
    double C1() const;
    double K0() const;
    double eps0() const;
    double delta() const { return 0.5 * in_.delta0; }

    double a_eps(double eps, const SurfaceTopology& topo) const;
    double eps_star(const SurfaceTopology& topo) const;
    double a_of_s(const SurfaceTopology& topo) const;

    std::vector<LedgerEntry> entries(const SurfaceTopology& topo) const;
    nlohmann::json to_json(const SurfaceTopology& topo) const;

private:
    Inputs in_;
};

// Collar lemma: width of the embedded collar around a geodesic of length l.
double collar_width(double l);
// sinh(inj) = sinh(l/2) cosh(d) for a point at distance d from the core.
// Throws std::domain_error("out_of_collar...") when d exceeds the width.
double collar_injectivity(double l, double d);

struct DrillingSelection {
    int k;
    double l_cut;                    // Lambda^{2k+3}
    std::vector<std::size_t> tau;    // indices with length <= l_cut
};

// Smallest k in [0, n(S)] such that no length lies in (Lambda^{2k+3},
// Lambda^{2k+1}], with Lambda = l2norm^{2/(2n+3)}. Existence is pigeonhole:
// at most n(S) curves can be that short on the surface, so inputs with more
// than n(S) lengths <= Lambda are rejected.
DrillingSelection select_drilling_simplex(const std::vector<double>& lengths, double l2norm,
                                          const SurfaceTopology& topo,
                                          const ConstantsLedger& ledger);

// C0 sqrt(n) Lambda: pointwise bound outside the standard collars.
double drill_pointwise_bound(double l2norm, const SurfaceTopology& topo,
                             const ConstantsLedger& ledger);

struct ProgressBounds {
    double wp_move;   // (2 pi / sqrt(arcsinh(1/2))) sqrt(n) l2^{1/(2n+3)}
    double linf_hat;  // C1 sqrt(n) l2^{1/(2n+3)}
};
ProgressBounds progress_bounds(double l2norm, const SurfaceTopology& topo,
                               const ConstantsLedger& ledger);

// A(eps, S), with the internal consistency chain verified: at l2 = A(eps,S),
// Lambda < l_drill and C1 K0 eps = eps/(4 sqrt(3 pi)) <= 1/3.
double nearnode_threshold(double eps, const SurfaceTopology& topo,
                          const ConstantsLedger& ledger);

struct MainBounds {
    double lower;  // A(S) (d_wp - delta)
    double upper;  // 3 sqrt(pi |chi| / 2) d_wp
};
MainBounds main_theorem_bounds(const SurfaceTopology& topo, const ConstantsLedger& ledger,
                               double d_wp);

// gradient-norm cap (3/2) sqrt(area) = sqrt(3 pi n) for closed surfaces
double gradient_norm_cap(const SurfaceTopology& topo);

// W(N_t) = W(N) - t pi chi
double w_volume_scale(double W, double t, int chi);

struct CoreVolumeSandwich {
    double lo;  // v_r + l_beta/4
    double hi;  // v_r + l_beta/2
    bool cap_checked = false;  // incompressible case: l_beta <= 6 pi |chi|
    bool cap_ok = true;
};
CoreVolumeSandwich core_volume_sandwich(double v_r, double l_beta,
                                        const SurfaceTopology* incompressible = nullptr);

struct UnbendingResult {
    std::vector<double> theta;
    std::vector<double> dW;        // (ell - theta ell')/4
    std::vector<double> l2_bound;  // (5/2) sqrt(theta ell(theta))
    double gap;                    // (1/4) int_T^pi ell + (1/8) T ell(T)
    bool ell_decreasing;           // finite-difference check of ell' < 0
};

// ell sampled on a grid theta[0] = T < ... < theta.back() = pi, ell >= 0.
// Derivatives by centered finite differences; throws
// std::domain_error("grid_too_coarse...") for fewer than 5 samples.
UnbendingResult unbending_functionals(const std::vector<double>& theta,
                                      const std::vector<double>& ell);

}  // namespace sgflow
