#pragma once

#include <functional>

#include "sgflow/maps.hpp"
#include "sgflow/quadrature.hpp"

namespace sgflow {

// Holomorphic quadratic differential phi(z) dz^2 on the unit disk, given as a
// value field. The hyperbolic area-form density on the disk is
// rho(z) = 4/(1-|z|^2)^2, so the conformal factor at z = 0 is 4.
struct QuadDiffDisk {
    std::function<cplx(cplx)> value;
};

QuadDiffDisk constant_differential(cplx value);
QuadDiffDisk schwarzian_differential(const AnalyticMap& f);

// S f(z); closed form when the map has one, series otherwise.
// Throws std::domain_error("critical_point...") when |f'(z)| is below tol.
cplx schwarzian(const AnalyticMap& f, cplx z, double deriv_tol = 1e-12);

// |S(f.g)(z) - Sf(g(z)) g'(z)^2 - Sg(z)|
double compose_rule_residual(const AnalyticMap& f, const AnalyticMap& g, cplx z);

// ||phi(z)|| = |phi(z)| (1-|z|^2)^2 / 4
double pointwise_norm(const QuadDiffDisk& phi, cplx z);

struct LpConfig {
    double cutoff_radius = 0.99;
    QuadConfig quad{};       // for p = 1, 2
    int sup_radial = 64;     // for p = inf, doubled on refinement
    int sup_angular = 128;
    int sup_refinements = 5;
    double sup_rel_tol = 1e-6;
};

// L^p norm (p in {1, 2}) of the pointwise norm against hyperbolic area on
// |z| <= cutoff, or the sampled supremum for p = inf (pass p = 0 for inf).
// Throws std::runtime_error("quadrature_divergence") if refinement stalls.
double lp_norm(const QuadDiffDisk& phi, int p, const LpConfig& cfg = {});

// Coefficients b_0..b_nmax of g(z) = f'(0)/f(1/z) = z + sum b_n z^-n for f
// univalent near 0 with f(0) = 0, f'(0) != 0.
std::vector<cplx> nehari_coefficients(const AnalyticMap& f, std::size_t n_max);

// Euclidean area enclosed by the image of |z| = rho under g above:
// m_rho = pi rho^2 - pi sum n |b_n|^2 rho^{-2n}.
double nehari_area(const std::vector<cplx>& b, double rho);

// (3/2) sech(r/2): bound on ||Sf(z)|| when the image contains a hyperbolic
// disk of radius r centered at f(z).
double bigdisk_bound(double r);

struct BigdiskCheck {
    double norm_at_zero;
    double bound;
    bool holds;
};
BigdiskCheck bigdisk_check(const ZooEntry& entry);

struct AhlforsWeillBound {
    double value;         // (1/2) log((1+2t)/(1-2t))
    double linear;        // 3t, an upper bound for t <= 1/3
    bool linear_valid;    // t <= 1/3
};
AhlforsWeillBound ahlfors_weill_distance(double t);

struct SkinningBound {
    double teich;  // 3t / (1 - lambda)
    double wp;     // sqrt(area) * teich
};
SkinningBound skinning_distance_bound(double t, double lambda, double area);

// l2 / sqrt(min(inj, arcsinh 1))
double pointwise_from_l2(double l2, double inj);

}  // namespace sgflow
