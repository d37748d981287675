#include "sgflow/maps.hpp"

#include <fstream>
#include <limits>
#include <stdexcept>

#include <json.hpp>

namespace sgflow {

namespace {

PowerSeries koebe_series(double theta, std::size_t order) {
    // k(z) = sum n z^n, rotated: coefficient n e^{i theta (n-1)}
    PowerSeries s(order);
    for (std::size_t n = 1; n <= order; ++n)
        s.at(n) = double(n) * std::exp(cplx(0.0, theta * double(n - 1)));
    return s;
}

cplx koebe_fn(cplx z) { return z / ((1.0 - z) * (1.0 - z)); }
cplx koebe_deriv(cplx z) { return (1.0 + z) / std::pow(1.0 - z, 3); }
cplx koebe_schwarzian(cplx z) {
    cplx d = 1.0 - z * z;
    return -6.0 / (d * d);
}

PowerSeries exp_series(cplx s, std::size_t order) {
    PowerSeries e(order);
    cplx c = 1.0;
    e.at(0) = 1.0;
    for (std::size_t n = 1; n <= order; ++n) {
        c *= s / double(n);
        e.at(n) = c;
    }
    return e;
}

// Taylor coefficients by the discrete Cauchy transform on |z| = r: exact up
// to aliasing for maps analytic past r, and numerically stable where the
// direct series algebra is not (the slit family has Catalan-sized
// intermediates under composition).
template <typename F>
PowerSeries series_from_samples(const F& f, double r, std::size_t order) {
    const std::size_t M = 1024;
    std::vector<cplx> samples(M);
    for (std::size_t j = 0; j < M; ++j)
        samples[j] = f(std::polar(r, 2.0 * M_PI * double(j) / double(M)));
    PowerSeries out(order);
    for (std::size_t n = 0; n <= order; ++n) {
        cplx acc = 0.0;
        for (std::size_t j = 0; j < M; ++j)
            acc += samples[j] * std::polar(1.0, -2.0 * M_PI * double(n) * double(j) / double(M));
        out.at(n) = acc / (double(M) * std::pow(r, double(n)));
    }
    return out;
}

PowerSeries build_series(MapForm form, const MapParams& p, std::size_t order) {
    const PowerSeries z = PowerSeries::variable(order);
    switch (form) {
        case MapForm::mobius: {
            PowerSeries num = PowerSeries::constant(p.b, order) + z * p.a;
            PowerSeries den = PowerSeries::constant(p.d, order) + z * p.c;
            return num * den.reciprocal();
        }
        case MapForm::koebe:
            return koebe_series(p.theta, order);
        case MapForm::slit: {
            const double lam = p.lambda;
            return series_from_samples(
                [lam](cplx w) { return inverse_koebe(lam * koebe_fn(w)); }, 0.8, order);
        }
        case MapForm::poly2: {
            PowerSeries s(order);
            s.at(1) = 1.0 / (1.0 + p.t);
            if (order >= 2) s.at(2) = p.t / (1.0 + p.t);
            return s;
        }
        case MapForm::tanh_half: {
            // tanh(sz/2) = (e^{sz} - 1) / (e^{sz} + 1)
            PowerSeries e = exp_series(cplx(p.s), order);
            PowerSeries num = e - PowerSeries::constant(1.0, order);
            PowerSeries den = e + PowerSeries::constant(1.0, order);
            return num * den.reciprocal();
        }
        case MapForm::exp_map: {
            PowerSeries e = exp_series(cplx(p.s), order);
            return (e - PowerSeries::constant(1.0, order)) * cplx(1.0 / p.s);
        }
        case MapForm::custom:
            throw std::logic_error("build_series: custom maps supply their series directly");
    }
    throw std::logic_error("build_series: unreachable");
}

}  // namespace

cplx inverse_koebe(cplx w) {
    return 2.0 * w / (1.0 + 2.0 * w + std::sqrt(4.0 * w + 1.0));
}

AnalyticMap::AnalyticMap(std::string name, MapForm form, MapParams params, std::size_t order)
    : name_(std::move(name)), form_(form), params_(params), series_(build_series(form, params, order)) {
    // series truncation limits the radius the series path is trusted on;
    // closed-form evaluation is exact on the whole disk
    r_max_ = (form == MapForm::mobius || form == MapForm::poly2) ? 0.9 : 0.5;
}

AnalyticMap::AnalyticMap(std::string name, PowerSeries series, double r_max)
    : name_(std::move(name)), form_(MapForm::custom), series_(std::move(series)), r_max_(r_max) {}

cplx AnalyticMap::eval(cplx z) const {
    const MapParams& p = params_;
    switch (form_) {
        case MapForm::mobius:
            return (p.a * z + p.b) / (p.c * z + p.d);
        case MapForm::koebe: {
            cplx w = std::exp(cplx(0.0, p.theta)) * z;
            return std::exp(cplx(0.0, -p.theta)) * koebe_fn(w);
        }
        case MapForm::slit:
            return inverse_koebe(p.lambda * koebe_fn(z));
        case MapForm::poly2:
            return (z + p.t * z * z) / (1.0 + p.t);
        case MapForm::tanh_half:
            return std::tanh(0.5 * p.s * z);
        case MapForm::exp_map:
            return (std::exp(p.s * z) - 1.0) / p.s;
        case MapForm::custom:
            return series_.evaluate(z);
    }
    throw std::logic_error("AnalyticMap::eval: unreachable");
}

cplx AnalyticMap::deriv(cplx z) const {
    const MapParams& p = params_;
    switch (form_) {
        case MapForm::mobius: {
            cplx den = p.c * z + p.d;
            return (p.a * p.d - p.b * p.c) / (den * den);
        }
        case MapForm::koebe:
            return koebe_deriv(std::exp(cplx(0.0, p.theta)) * z);
        case MapForm::slit: {
            cplx u = inverse_koebe(p.lambda * koebe_fn(z));
            return p.lambda * koebe_deriv(z) / koebe_deriv(u);
        }
        case MapForm::poly2:
            return (1.0 + 2.0 * p.t * z) / (1.0 + p.t);
        case MapForm::tanh_half: {
            cplx c = std::cosh(0.5 * p.s * z);
            return 0.5 * p.s / (c * c);
        }
        case MapForm::exp_map:
            return std::exp(p.s * z);
        case MapForm::custom:
            return series_.derivative().evaluate(z);
    }
    throw std::logic_error("AnalyticMap::deriv: unreachable");
}

cplx AnalyticMap::schwarzian_exact(cplx z) const {
    const MapParams& p = params_;
    switch (form_) {
        case MapForm::mobius:
            return 0.0;
        case MapForm::koebe: {
            cplx rot = std::exp(cplx(0.0, p.theta));
            return koebe_schwarzian(rot * z) * rot * rot;
        }
        case MapForm::slit: {
            // S(K . lambda k) = -Sk(u) (lambda k'(z)/k'(u))^2 + Sk(z), u = K(lambda k(z))
            cplx u = inverse_koebe(p.lambda * koebe_fn(z));
            cplx ratio = p.lambda * koebe_deriv(z) / koebe_deriv(u);
            return -koebe_schwarzian(u) * ratio * ratio + koebe_schwarzian(z);
        }
        case MapForm::poly2: {
            cplx den = 1.0 + 2.0 * p.t * z;
            return -6.0 * p.t * p.t / (den * den);
        }
        case MapForm::tanh_half:
        case MapForm::exp_map:
            return cplx(-0.5 * p.s * p.s);
        case MapForm::custom:
            return schwarzian_series().evaluate(z);
    }
    throw std::logic_error("AnalyticMap::schwarzian_exact: unreachable");
}

PowerSeries AnalyticMap::schwarzian_series() const {
    PowerSeries fp = series_.derivative();
    PowerSeries q = series_.derivative().derivative() * fp.reciprocal();
    return q.derivative() - q * q * cplx(0.5);
}

namespace {

std::optional<double> parse_radius(const nlohmann::json& j) {
    if (j.is_null()) return std::nullopt;
    if (j.is_string() && j.get<std::string>() == "inf")
        return std::numeric_limits<double>::infinity();
    return j.get<double>();
}

ZooEntry entry_from_json(const nlohmann::json& j) {
    const std::string form = j.at("form").get<std::string>();
    MapParams p;
    const auto& pj = j.value("params", nlohmann::json::object());
    MapForm mf;
    if (form == "mobius") {
        mf = MapForm::mobius;
        auto get = [&](const char* key, cplx def) {
            if (!pj.contains(key)) return def;
            const auto& v = pj.at(key);
            if (v.is_array()) return cplx(v.at(0).get<double>(), v.at(1).get<double>());
            return cplx(v.get<double>(), 0.0);
        };
        p.a = get("a", 1.0);
        p.b = get("b", 0.0);
        p.c = get("c", 0.0);
        p.d = get("d", 1.0);
        if (std::abs(p.c) >= std::abs(p.d))
            throw std::domain_error("zoo mobius: pole inside closed disk");
    } else if (form == "koebe") {
        mf = MapForm::koebe;
        p.theta = pj.value("theta", 0.0);
    } else if (form == "slit") {
        mf = MapForm::slit;
        p.lambda = pj.at("lambda").get<double>();
        if (!(p.lambda > 0.0 && p.lambda < 1.0))
            throw std::domain_error("zoo slit: lambda must lie in (0,1)");
    } else if (form == "poly2") {
        mf = MapForm::poly2;
        p.t = pj.at("t").get<double>();
        if (std::abs(p.t) > 0.5) throw std::domain_error("zoo poly2: |t| <= 1/2 required");
    } else if (form == "tanh_half") {
        mf = MapForm::tanh_half;
        p.s = pj.at("s").get<double>();
        if (!(p.s > 0.0 && p.s <= 1.0)) throw std::domain_error("zoo tanh_half: s in (0,1]");
    } else if (form == "exp_map") {
        mf = MapForm::exp_map;
        p.s = pj.at("s").get<double>();
        if (!(p.s > 0.0 && p.s <= 1.0)) throw std::domain_error("zoo exp_map: s in (0,1]");
    } else {
        throw std::domain_error("zoo: unknown form '" + form + "'");
    }
    ZooEntry e{AnalyticMap(j.at("name").get<std::string>(), mf, p),
               parse_radius(j.value("r_certified", nlohmann::json())),
               j.value("nehari", true)};
    return e;
}

}  // namespace

std::vector<ZooEntry> load_zoo(const std::string& json_path) {
    std::ifstream in(json_path);
    if (!in) throw std::runtime_error("load_zoo: cannot open " + json_path);
    nlohmann::json j;
    in >> j;
    std::vector<ZooEntry> zoo;
    for (const auto& item : j.at("maps")) zoo.push_back(entry_from_json(item));
    return zoo;
}

std::vector<ZooEntry> builtin_zoo() {
    auto inf = std::numeric_limits<double>::infinity();
    std::vector<ZooEntry> zoo;
    auto add = [&zoo](const char* name, MapForm f, MapParams p, std::optional<double> r,
                      bool nehari) {
        zoo.push_back(ZooEntry{AnalyticMap(name, f, p), r, nehari});
    };
    MapParams p;
    add("identity", MapForm::mobius, p, inf, true);

    p = MapParams{};  // disk automorphism (z + 0.3)/(1 + 0.3 z); f(0) != 0
    p.b = 0.3;
    p.c = 0.3;
    add("automorphism_03", MapForm::mobius, p, inf, false);

    p = MapParams{};  // 0.7 z: Euclidean disk radius 0.7 = hyperbolic radius 2 artanh 0.7
    p.a = 0.7;
    add("scale_07", MapForm::mobius, p, 2.0 * std::atanh(0.7), true);

    p = MapParams{};
    add("koebe", MapForm::koebe, p, 0.0, true);
    p.theta = 1.1;
    add("koebe_rot_11", MapForm::koebe, p, 0.0, true);

    for (double lam : {0.3, 0.7, 0.95}) {
        p = MapParams{};
        p.lambda = lam;
        // slit tip -x with x/(1+x)^2 = lam/4; image = disk minus radial slit,
        // so it contains the hyperbolic disk of radius 2 artanh(x) about 0
        double x = lam / (2.0 - lam + 2.0 * std::sqrt(1.0 - lam));
        add(("slit_" + std::to_string(lam)).c_str(), MapForm::slit, p, 2.0 * std::atanh(x), true);
    }

    for (double t : {0.35, 0.5}) {
        p = MapParams{};
        p.t = t;
        // boundary distance of the normalized image: (1-t)/(1+t)
        double rho = (1.0 - t) / (1.0 + t);
        add(("poly2_" + std::to_string(t)).c_str(), MapForm::poly2, p, 2.0 * std::atanh(rho),
            true);
    }

    for (double s : {0.8, 1.0}) {
        p = MapParams{};
        p.s = s;
        // min |tanh| over |w| = s/2 sits on the real axis for s <= 1
        // (verified by dense sampling in the test suite)
        double rho = std::tanh(0.5 * s);
        add(("tanh_" + std::to_string(s)).c_str(), MapForm::tanh_half, p, 2.0 * std::atanh(rho),
            true);
    }

    p = MapParams{};
    p.s = 1.0;
    add("exp_1", MapForm::exp_map, p, std::nullopt, true);  // image not inside the disk
    return zoo;
}

}  // namespace sgflow
