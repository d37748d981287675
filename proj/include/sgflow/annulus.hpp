#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "sgflow/quadrature.hpp"
#include "sgflow/series.hpp"

namespace sgflow {

// Annulus of modulus m realized as {0 < Im z < pi} / (z -> z + pi/m),
// with fundamental domain [0, pi/m) x (0, pi).
struct StripAnnulus {
    double modulus;
    double period() const { return M_PI / modulus; }
};

enum class BeltramiKind { teichmueller, harmonic };

// Beltrami differential on a strip annulus: lift c (Teichmueller) or
// c sin^2 y (harmonic). The harmonic lift vanishes on the strip boundary.
struct BeltramiDatum {
    StripAnnulus annulus;
    cplx c;
    BeltramiKind kind;

    cplx lift(double /*x*/, double y) const {
        return kind == BeltramiKind::teichmueller ? c : c * (std::sin(y) * std::sin(y));
    }
};

// Holomorphic g(z) on the strip with g(z + pi/m) = g(z): a constant plus a
// finite Fourier sum over e^{2 i m k z}, k >= 1 (each mode is bounded on the
// closed strip). The horizontal integral b(y) is y-independent.
class PeriodicQuadDiff {
public:
    PeriodicQuadDiff(double modulus, cplx a0, std::vector<cplx> modes)
        : modulus_(modulus), a0_(a0), modes_(std::move(modes)) {}

    double modulus() const { return modulus_; }
    cplx constant_term() const { return a0_; }
    const std::vector<cplx>& modes() const { return modes_; }

    cplx eval(cplx z) const {
        cplx g = a0_;
        for (std::size_t k = 0; k < modes_.size(); ++k)
            g += modes_[k] * std::exp(cplx(0.0, 2.0 * modulus_ * double(k + 1)) * z);
        return g;
    }

    // b(y) = int_0^{pi/m} g(x + i y) dx, by quadrature
    cplx horizontal_integral(double y, const QuadConfig& cfg = {}) const;

private:
    double modulus_;
    cplx a0_;
    std::vector<cplx> modes_;
};

// <phi, mu> = integral of lift(mu) * g over the fundamental domain.
cplx pairing(const BeltramiDatum& mu, const PeriodicQuadDiff& phi, const QuadConfig& cfg = {});

// | <c mu^t, phi> - <2 c mu^h, phi> |; vanishes because
// int_0^pi (1 - 2 sin^2 y) dy = int_0^pi cos(2y) dy = 0.
double triviality_residual(cplx c, const StripAnnulus& A, const PeriodicQuadDiff& phi,
                           const QuadConfig& cfg = {});

struct HarmonicNormBound {
    double bound;   // 2 pi^2 sum |c_i|^2 / m_i
    double direct;  // 4 sum |c_i|^2 int ||mu^h||^2 against the annulus area form
};
// The annulus-level estimate is an equality before the Schwarz-lemma step,
// so direct == bound up to quadrature error.
HarmonicNormBound harmonic_norm_bound(const std::vector<std::pair<cplx, double>>& data,
                                      const QuadConfig& cfg = {});

// Cusp band model: horodisk {Im z >= 1} mod (z -> z + 2); the band
// {1 <= Im z <= 2m+1} is an annulus of modulus m. f^m_t stretches the band
// affinely onto {1 <= Im z <= 2 e^t m + 1} and translates above it.
struct CuspDeformation {
    double m, t;
    double image_modulus;  // e^t m
    double band_hi;        // 2 e^t m + 1
    cplx beltrami_lift;    // -1/2 on the image band (a Teichmueller differential there)

    cplx apply(cplx z) const;
};
CuspDeformation cusp_deformation(double m, double t);

// m = (1/sinh(l/2) - 1)/2 > 0 for 0 < l < 2 arcsinh(1).
double cusp_modulus_from_length(double l);

// 2 pi sqrt(sum 1/m_i)
double wp_path_bound(const std::vector<double>& moduli);
// numeric check of int_0^inf pi sqrt(sum 1/(m_i e^t)) dt (truncated at t = 80)
double wp_path_bound_quadrature(const std::vector<double>& moduli, const QuadConfig& cfg = {});

// 2 pi sqrt(2 sinh(l0/2) / (l0 (1 - sinh(l0/2)))) sqrt(sum l_i), with the
// internal chain wp_path_bound(modulus lower bounds) <= value verified.
double wp_estimate(double l0, const std::vector<double>& lengths);

// modulus of the annular cover with core length l: pi / l
double annulus_modulus_from_core(double l);

struct AnnulusTestCase {
    StripAnnulus annulus;
    cplx c;
    PeriodicQuadDiff phi;
};
std::vector<AnnulusTestCase> annulus_suite_from_json(const std::string& json_path);

}  // namespace sgflow
