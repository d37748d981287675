#include "sgflow/annulus.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace sgflow {

cplx PeriodicQuadDiff::horizontal_integral(double y, const QuadConfig& cfg) const {
    auto f = [&](double x) { return eval(cplx(x, y)); };
    QuadResult q = integrate_1d(f, 0.0, M_PI / modulus_, cfg);
    if (!q.converged) throw std::runtime_error("horizontal_integral: quadrature_divergence");
    return q.value;
}

cplx pairing(const BeltramiDatum& mu, const PeriodicQuadDiff& phi, const QuadConfig& cfg) {
    if (std::abs(mu.annulus.modulus - phi.modulus()) > 1e-12)
        throw std::invalid_argument("pairing: Beltrami and differential live on different annuli");
    auto f = [&](double x, double y) { return mu.lift(x, y) * phi.eval(cplx(x, y)); };
    QuadResult q = integrate_2d(f, 0.0, mu.annulus.period(), 0.0, M_PI, cfg);
    if (!q.converged) throw std::runtime_error("pairing: quadrature_divergence");
    return q.value;
}

double triviality_residual(cplx c, const StripAnnulus& A, const PeriodicQuadDiff& phi,
                           const QuadConfig& cfg) {
    BeltramiDatum mu{A, c, BeltramiKind::teichmueller};
    BeltramiDatum nu{A, 2.0 * c, BeltramiKind::harmonic};
    return std::abs(pairing(mu, phi, cfg) - pairing(nu, phi, cfg));
}

HarmonicNormBound harmonic_norm_bound(const std::vector<std::pair<cplx, double>>& data,
                                      const QuadConfig& cfg) {
    double bound = 0.0, direct = 0.0;
    for (const auto& [c, m] : data) {
        if (!(m > 0.0)) throw std::invalid_argument("harmonic_norm_bound: modulus > 0 required");
        bound += 2.0 * M_PI * M_PI * std::norm(c) / m;
        // ||2c mu^h||^2 against the annulus area form dx dy / sin^2 y:
        // |2c|^2 sin^4 y / sin^2 y = 4|c|^2 sin^2 y, extended by 0 at the boundary
        auto f = [cc = std::norm(c)](double /*x*/, double y) {
            return cplx(4.0 * cc * std::sin(y) * std::sin(y), 0.0);
        };
        QuadResult q = integrate_2d(f, 0.0, M_PI / m, 0.0, M_PI, cfg);
        if (!q.converged) throw std::runtime_error("harmonic_norm_bound: quadrature_divergence");
        direct += q.value.real();
    }
    return HarmonicNormBound{bound, direct};
}

cplx CuspDeformation::apply(cplx z) const {
    const double y = z.imag();
    if (y < 1.0 - 1e-12)
        throw std::domain_error("CuspDeformation::apply: point below the horodisk Im z >= 1");
    const double top = 2.0 * m + 1.0;
    if (y <= top) return cplx(z.real(), 1.0 + std::exp(t) * (y - 1.0));
    return cplx(z.real(), y + 2.0 * m * (std::exp(t) - 1.0));
}

CuspDeformation cusp_deformation(double m, double t) {
    if (!(m > 0.0)) throw std::domain_error("cusp_deformation: m > 0 required");
    CuspDeformation d;
    d.m = m;
    d.t = t;
    d.image_modulus = std::exp(t) * m;
    d.band_hi = 2.0 * d.image_modulus + 1.0;
    d.beltrami_lift = cplx(-0.5, 0.0);
    return d;
}

double cusp_modulus_from_length(double l) {
    if (!(l > 0.0) || l >= 2.0 * std::asinh(1.0))
        throw std::domain_error("cusp_modulus_from_length: out_of_range (need 0 < l < 2 arcsinh 1)");
    return 0.5 * (1.0 / std::sinh(0.5 * l) - 1.0);
}

double wp_path_bound(const std::vector<double>& moduli) {
    double s = 0.0;
    for (double m : moduli) {
        if (!(m > 0.0)) throw std::invalid_argument("wp_path_bound: modulus > 0 required");
        s += 1.0 / m;
    }
    return 2.0 * M_PI * std::sqrt(s);
}

double wp_path_bound_quadrature(const std::vector<double>& moduli, const QuadConfig& cfg) {
    double s = 0.0;
    for (double m : moduli) s += 1.0 / m;
    auto f = [s](double t) { return M_PI * std::sqrt(s * std::exp(-t)); };
    QuadResult q = integrate_1d(f, 0.0, 80.0, cfg);  // tail beyond 80 is ~ e^{-40}
    if (!q.converged) throw std::runtime_error("wp_path_bound_quadrature: quadrature_divergence");
    return q.value.real();
}

double wp_estimate(double l0, const std::vector<double>& lengths) {
    const double eps2 = std::asinh(1.0);
    if (!(l0 > 0.0) || l0 >= 2.0 * eps2)
        throw std::domain_error("wp_estimate: out_of_range (need 0 < l0 < 2 arcsinh 1)");
    const double sh = std::sinh(0.5 * l0);
    double total = 0.0;
    for (double l : lengths) {
        if (!(l > 0.0) || l > l0 + 1e-12)
            throw std::domain_error("wp_estimate: out_of_range (need 0 < l_i <= l0)");
        total += l;
    }
    const double value = 2.0 * M_PI * std::sqrt(2.0 * sh / (l0 * (1.0 - sh))) * std::sqrt(total);
    if (!lengths.empty()) {
        // chain check: the modulus lower bounds reproduce the closed form
        std::vector<double> m_low;
        m_low.reserve(lengths.size());
        for (double l : lengths) m_low.push_back(l0 * (1.0 - sh) / (2.0 * sh * l));
        if (wp_path_bound(m_low) > value + 1e-9 * std::max(1.0, value))
            throw std::logic_error("wp_estimate: chain failure");
    }
    return value;
}

double annulus_modulus_from_core(double l) {
    if (!(l > 0.0)) throw std::domain_error("annulus_modulus_from_core: l > 0 required");
    return M_PI / l;
}

std::vector<AnnulusTestCase> annulus_suite_from_json(const std::string& json_path) {
    std::ifstream in(json_path);
    if (!in) throw std::runtime_error("annulus_suite_from_json: cannot open " + json_path);
    nlohmann::json j;
    in >> j;
    auto to_cplx = [](const nlohmann::json& v) {
        if (v.is_array()) return cplx(v.at(0).get<double>(), v.at(1).get<double>());
        return cplx(v.get<double>(), 0.0);
    };
    std::vector<AnnulusTestCase> out;
    for (const auto& item : j.at("cases")) {
        double m = item.at("m").get<double>();
        std::vector<cplx> modes;
        for (const auto& v : item.value("modes", nlohmann::json::array())) modes.push_back(to_cplx(v));
        out.push_back(AnnulusTestCase{StripAnnulus{m}, to_cplx(item.at("c")),
                                      PeriodicQuadDiff(m, to_cplx(item.value("a0", nlohmann::json(0.0))),
                                                       std::move(modes))});
    }
    return out;
}

}  // namespace sgflow
