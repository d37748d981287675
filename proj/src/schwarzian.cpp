#include "sgflow/schwarzian.hpp"

#include <cmath>
#include <stdexcept>

namespace sgflow {

QuadDiffDisk constant_differential(cplx value) {
    return QuadDiffDisk{[value](cplx) { return value; }};
}

QuadDiffDisk schwarzian_differential(const AnalyticMap& f) {
    if (f.has_closed_form())
        return QuadDiffDisk{[f](cplx z) { return f.schwarzian_exact(z); }};
    PowerSeries s = f.schwarzian_series();
    return QuadDiffDisk{[s](cplx z) { return s.evaluate(z); }};
}

cplx schwarzian(const AnalyticMap& f, cplx z, double deriv_tol) {
    if (!f.has_closed_form() && std::abs(z) > f.r_max())
        throw std::domain_error("schwarzian: |z| exceeds the series validity radius");
    if (std::abs(f.deriv(z)) < deriv_tol)
        throw std::domain_error("schwarzian: critical_point (|f'(z)| below tolerance)");
    return f.schwarzian_exact(z);
}

double compose_rule_residual(const AnalyticMap& f, const AnalyticMap& g, cplx z) {
    // S(f.g) computed on the composed series, compared against
    // Sf(g(z)) g'(z)^2 + Sg(z) from the factors.
    PowerSeries comp = f.series().compose(g.series().truncated(f.series().order()));
    AnalyticMap fg("compose", comp, std::min(g.r_max(), 0.9));
    cplx lhs = fg.schwarzian_series().evaluate(z);
    cplx gz = g.eval(z);
    cplx gp = g.deriv(z);
    cplx rhs = schwarzian(f, gz) * gp * gp + schwarzian(g, z);
    return std::abs(lhs - rhs);
}

double pointwise_norm(const QuadDiffDisk& phi, cplx z) {
    double w = 1.0 - std::norm(z);
    return std::abs(phi.value(z)) * w * w / 4.0;
}

double lp_norm(const QuadDiffDisk& phi, int p, const LpConfig& cfg) {
    const double R = cfg.cutoff_radius;
    if (p == 0) {  // supremum over |z| <= R by grid refinement
        int nr = cfg.sup_radial, na = cfg.sup_angular;
        double prev = -1.0;
        for (int it = 0; it <= cfg.sup_refinements; ++it) {
            double sup = 0.0;
            for (int i = 0; i <= nr; ++i) {
                double r = R * double(i) / nr;
                for (int j = 0; j < na; ++j) {
                    double th = 2.0 * M_PI * double(j) / na;
                    sup = std::max(sup, pointwise_norm(phi, std::polar(r, th)));
                }
            }
            if (prev >= 0.0 && std::abs(sup - prev) <= cfg.sup_rel_tol * std::max(1.0, sup))
                return sup;
            prev = sup;
            nr *= 2;
            na *= 2;
        }
        return prev;
    }
    if (p != 1 && p != 2) throw std::invalid_argument("lp_norm: p must be 1, 2, or 0 (= inf)");
    auto integrand = [&](double r, double th) -> cplx {
        double n = pointwise_norm(phi, std::polar(r, th));
        double density = 4.0 / ((1.0 - r * r) * (1.0 - r * r));  // hyperbolic area
        return (p == 1 ? n : n * n) * density * r;
    };
    QuadResult q = integrate_2d(integrand, 0.0, R, 0.0, 2.0 * M_PI, cfg.quad);
    if (!q.converged) throw std::runtime_error("lp_norm: quadrature_divergence");
    double val = q.value.real();
    return p == 1 ? val : std::sqrt(val);
}

std::vector<cplx> nehari_coefficients(const AnalyticMap& f, std::size_t n_max) {
    const PowerSeries& a = f.series();
    if (std::abs(a[0]) > 1e-12)
        throw std::domain_error("nehari_coefficients: f(0) = 0 required");
    if (std::abs(a[1]) < 1e-300)
        throw std::domain_error("nehari_coefficients: inversion_failure (f'(0) = 0)");
    if (n_max + 1 > a.order())
        throw std::invalid_argument("nehari_coefficients: n_max exceeds series order");
    // f(u) = a1 u h(u), h(0) = 1; g(z) = f'(0)/f(1/z) = z / h(1/z),
    // so with 1/h(u) = sum c_n u^n we get b_n = c_{n+1}.
    PowerSeries h(a.order() - 1);
    for (std::size_t k = 0; k + 1 <= a.order(); ++k) h.at(k) = a[k + 1] / a[1];
    PowerSeries c = h.reciprocal();
    std::vector<cplx> b(n_max + 1);
    for (std::size_t n = 0; n <= n_max; ++n) b[n] = c[n + 1];
    return b;
}

double nehari_area(const std::vector<cplx>& b, double rho) {
    double s = 0.0;
    for (std::size_t n = 1; n < b.size(); ++n)
        s += double(n) * std::norm(b[n]) * std::pow(rho, -2.0 * double(n));
    return M_PI * (rho * rho - s);
}

double bigdisk_bound(double r) {
    if (r < 0.0) throw std::domain_error("bigdisk_bound: r >= 0 required");
    return 1.5 / std::cosh(0.5 * r);
}

BigdiskCheck bigdisk_check(const ZooEntry& entry) {
    if (!entry.r_certified)
        throw std::invalid_argument("bigdisk_check: entry has no certified radius");
    double r = *entry.r_certified;
    double bound = std::isinf(r) ? 0.0 : bigdisk_bound(r);
    QuadDiffDisk phi = schwarzian_differential(entry.map);
    double norm0 = pointwise_norm(phi, 0.0);
    return BigdiskCheck{norm0, bound, norm0 <= bound + 1e-12};
}

AhlforsWeillBound ahlfors_weill_distance(double t) {
    if (!(t >= 0.0 && t < 0.5))
        throw std::domain_error("ahlfors_weill_distance: out_of_range (need 0 <= t < 1/2)");
    double value = 0.5 * std::log((1.0 + 2.0 * t) / (1.0 - 2.0 * t));
    return AhlforsWeillBound{value, 3.0 * t, t <= 1.0 / 3.0 + 1e-15};
}

SkinningBound skinning_distance_bound(double t, double lambda, double area) {
    if (t > 1.0 / 3.0 + 1e-15)
        throw std::domain_error("skinning_distance_bound: out_of_range (need t <= 1/3)");
    if (!(lambda >= 0.0 && lambda < 1.0))
        throw std::domain_error("skinning_distance_bound: out_of_range (need 0 <= lambda < 1)");
    if (!(area > 0.0)) throw std::domain_error("skinning_distance_bound: area > 0 required");
    double teich = 3.0 * t / (1.0 - lambda);
    return SkinningBound{teich, std::sqrt(area) * teich};
}

double pointwise_from_l2(double l2, double inj) {
    if (l2 < 0.0 || !(inj > 0.0))
        throw std::domain_error("pointwise_from_l2: need l2 >= 0 and inj > 0");
    const double eps2 = std::asinh(1.0);
    return l2 / std::sqrt(std::min(inj, eps2));
}

}  // namespace sgflow
