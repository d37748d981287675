#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "sgflow/series.hpp"

namespace sgflow {

// Closed-form families of locally univalent maps on the unit disk. Each form
// carries exact evaluation, derivative, and Schwarzian; the truncated series
// representation is built from the same data and cross-checked in tests.
//
//   mobius    (a z + b)/(c z + d)
//   koebe     e^{-i theta} k(e^{i theta} z),  k(z) = z/(1-z)^2
//   slit      k^{-1}(lambda k(z)), lambda in (0,1): disk minus a radial slit
//   poly2     (z + t z^2)/(1+t), |t| <= 1/2
//   tanh_half tanh(s z / 2), 0 < s <= 1
//   exp_map   (e^{s z} - 1)/s, 0 < s <= 1
enum class MapForm { mobius, koebe, slit, poly2, tanh_half, exp_map, custom };

struct MapParams {
    cplx a{1.0}, b{0.0}, c{0.0}, d{1.0};  // mobius
    double theta = 0.0;                   // koebe rotation
    double lambda = 0.5;                  // slit
    double t = 0.0;                       // poly2
    double s = 1.0;                       // tanh_half / exp_map
};

class AnalyticMap {
public:
    AnalyticMap(std::string name, MapForm form, MapParams params, std::size_t order = 64);
    // custom map given directly by its truncated series
    AnalyticMap(std::string name, PowerSeries series, double r_max);

    const std::string& name() const { return name_; }
    MapForm form() const { return form_; }
    const MapParams& params() const { return params_; }
    const PowerSeries& series() const { return series_; }
    double r_max() const { return r_max_; }

    bool has_closed_form() const { return form_ != MapForm::custom; }

    cplx eval(cplx z) const;
    cplx deriv(cplx z) const;
    // Exact Schwarzian for closed forms; series-based for custom maps.
    cplx schwarzian_exact(cplx z) const;

    // Series of the Schwarzian, S = (f''/f')' - (f''/f')^2 / 2.
    PowerSeries schwarzian_series() const;

private:
    std::string name_;
    MapForm form_ = MapForm::custom;
    MapParams params_;
    PowerSeries series_;
    double r_max_ = 1.0;
};

// Inverse Koebe map, K(k(z)) = z, in the cancellation-free form
// K(w) = 2w / (1 + 2w + sqrt(4w + 1)).
cplx inverse_koebe(cplx w);

// Zoo entry: a univalent map together with its analytically certified data.
// r_certified is the hyperbolic radius of a disk centered at f(0) that is
// contained in the image (infinity() for automorphisms of the disk; nullopt
// when no disk-image certificate applies).
struct ZooEntry {
    AnalyticMap map;
    std::optional<double> r_certified;
    bool nehari = true;  // f(0)=0 and f'(0)!=0, so the coefficient expansion applies
};

std::vector<ZooEntry> load_zoo(const std::string& json_path);
std::vector<ZooEntry> builtin_zoo();

}  // namespace sgflow
