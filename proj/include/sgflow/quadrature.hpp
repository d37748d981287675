#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace sgflow {

struct QuadratureRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

// Gauss-Legendre nodes by Newton iteration on P_n, seeded with the Chebyshev
// approximation. Accurate to machine precision for the orders used here.
inline const QuadratureRule& gauss_legendre(int n) {
    static thread_local std::vector<QuadratureRule> cache;
    if (n < 1) throw std::invalid_argument("gauss_legendre: n >= 1 required");
    if (cache.size() <= std::size_t(n)) cache.resize(n + 1);
    QuadratureRule& rule = cache[n];
    if (!rule.nodes.empty()) return rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = x;
        rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

struct QuadConfig {
    int points = 24;          // Gauss points per panel and axis
    int initial_panels = 1;   // panels per axis, doubled on refinement
    int max_refinements = 8;
    double rel_tol = 1e-10;
};

struct QuadResult {
    std::complex<double> value{0.0, 0.0};
    bool converged = false;
    int refinements = 0;
};

namespace detail {

template <typename F>
std::complex<double> panel_integral_2d(const F& f, double ax, double bx, double ay,
                                       double by, int panels, int pts) {
    const QuadratureRule& r = gauss_legendre(pts);
    std::complex<double> total = 0.0;
    const double hx = (bx - ax) / panels, hy = (by - ay) / panels;
    for (int px = 0; px < panels; ++px) {
        for (int py = 0; py < panels; ++py) {
            const double x0 = ax + px * hx, y0 = ay + py * hy;
            std::complex<double> acc = 0.0;
            for (int i = 0; i < pts; ++i) {
                const double x = x0 + 0.5 * hx * (r.nodes[i] + 1.0);
                for (int j = 0; j < pts; ++j) {
                    const double y = y0 + 0.5 * hy * (r.nodes[j] + 1.0);
                    acc += r.weights[i] * r.weights[j] * f(x, y);
                }
            }
            total += acc * (0.25 * hx * hy);
        }
    }
    return total;
}

}  // namespace detail

// Tensor Gauss-Legendre on [ax,bx] x [ay,by] with panel doubling until the
// relative change drops below rel_tol.
template <typename F>
QuadResult integrate_2d(const F& f, double ax, double bx, double ay, double by,
                        const QuadConfig& cfg = {}) {
    QuadResult res;
    int panels = cfg.initial_panels;
    std::complex<double> prev = detail::panel_integral_2d(f, ax, bx, ay, by, panels, cfg.points);
    for (int it = 1; it <= cfg.max_refinements; ++it) {
        panels *= 2;
        std::complex<double> cur = detail::panel_integral_2d(f, ax, bx, ay, by, panels, cfg.points);
        double scale = std::max(1.0, std::abs(cur));
        res.refinements = it;
        if (std::abs(cur - prev) <= cfg.rel_tol * scale) {
            res.value = cur;
            res.converged = true;
            return res;
        }
        prev = cur;
    }
    res.value = prev;
    res.converged = false;
    return res;
}

template <typename F>
QuadResult integrate_1d(const F& f, double a, double b, const QuadConfig& cfg = {}) {
    QuadResult res;
    int panels = cfg.initial_panels;
    const QuadratureRule& r = gauss_legendre(cfg.points);
    auto eval = [&](int np) {
        std::complex<double> total = 0.0;
        double h = (b - a) / np;
        for (int p = 0; p < np; ++p) {
            double x0 = a + p * h;
            std::complex<double> acc = 0.0;
            for (int i = 0; i < cfg.points; ++i)
                acc += r.weights[i] * std::complex<double>(f(x0 + 0.5 * h * (r.nodes[i] + 1.0)));
            total += acc * (0.5 * h);
        }
        return total;
    };
    std::complex<double> prev = eval(panels);
    for (int it = 1; it <= cfg.max_refinements; ++it) {
        panels *= 2;
        std::complex<double> cur = eval(panels);
        res.refinements = it;
        if (std::abs(cur - prev) <= cfg.rel_tol * std::max(1.0, std::abs(cur))) {
            res.value = cur;
            res.converged = true;
            return res;
        }
        prev = cur;
    }
    res.value = prev;
    res.converged = false;
    return res;
}

}  // namespace sgflow
