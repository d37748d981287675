#include "sgflow/models.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "sgflow/expr.hpp"

namespace sgflow {

namespace {

double norm2(const Vec& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

// Sampled minimum of |grad f| outside the eps-neighborhood of G, over a box
// grid plus rings just outside each ball boundary (where the minima live for
// the shipped models). Returns a step function table over eps_table.
std::vector<std::pair<double, double>> sample_gradient_floor(const FlowProblem& p,
                                                             const Vec& lo, const Vec& hi,
                                                             const GridConfig& grid) {
    const int dim = p.dimension;
    const int ns = grid.samples_per_axis;
    std::vector<std::pair<double, double>> table;
    for (double eps : grid.eps_table) {
        double best = 1e300;
        // full closed box; the domain predicate rejects any open face
        std::vector<int> idx(dim, 0);
        std::vector<double> step(dim);
        for (int d = 0; d < dim; ++d) step[d] = (hi[d] - lo[d]) / ns;
        bool done = false;
        Vec x(dim);
        while (!done) {
            for (int d = 0; d < dim; ++d) x[d] = lo[d] + step[d] * idx[d];
            if (p.in_domain(x) && p.distance_to_g(x) >= eps)
                best = std::min(best, norm2(p.grad(x)));
            int d = 0;
            while (d < dim && ++idx[d] > ns) idx[d++] = 0;
            done = d == dim;
        }
        // boundary rings (2-D models; higher dimensions rely on the grid)
        if (dim == 2) {
            for (const GPoint& g : p.degenerate_set) {
                for (int i = 0; i < grid.ring_samples; ++i) {
                    double th = 2.0 * M_PI * i / grid.ring_samples;
                    Vec q{g.point[0] + eps * (1.0 + 1e-9) * std::cos(th),
                          g.point[1] + eps * (1.0 + 1e-9) * std::sin(th)};
                    if (p.in_domain(q) && p.distance_to_g(q) >= eps)
                        best = std::min(best, norm2(p.grad(q)));
                }
            }
        } else if (dim == 1) {
            for (const GPoint& g : p.degenerate_set) {
                for (double s : {-1.0, 1.0}) {
                    Vec q{g.point[0] + s * eps * (1.0 + 1e-9)};
                    if (p.in_domain(q) && p.distance_to_g(q) >= eps)
                        best = std::min(best, norm2(p.grad(q)));
                }
            }
        }
        table.emplace_back(eps, best);
    }
    return table;
}

std::function<double(double)> step_floor_function(std::vector<std::pair<double, double>> table,
                                                  double deflation) {
    for (auto& [e, a] : table) a *= deflation;
    return [table = std::move(table)](double eps) {
        // largest tabulated eps <= requested eps; the floor over the larger
        // region is a valid lower bound for the smaller one
        double a = 0.0;
        for (const auto& [e, v] : table) {
            if (e <= eps + 1e-12) a = v;
            else break;
        }
        if (a == 0.0) throw std::domain_error("small_gradient_fn: eps below tabulated range");
        return a;
    };
}

}  // namespace

bool AxiomReport::all_pass() const {
    return std::all_of(items.begin(), items.end(), [](const Item& i) { return i.pass; });
}

const AxiomReport::Item* AxiomReport::find(const std::string& axiom) const {
    for (const auto& i : items)
        if (i.axiom == axiom) return &i;
    return nullptr;
}

ModelInstance default_model(const GridConfig& grid) {
    ModelInstance m;
    m.name = "default";
    m.box_lo = {0.0, -1.5};
    m.box_hi = {1.25, 1.5};

    FlowProblem& p = m.problem;
    p.dimension = 2;
    p.f = [](const Vec& v) {
        double x = v[0], y = v[1];
        return x * x * x * x - (1.0 - 2.0 * y * y) * x * x + 1.0 + y * y * y * y;
    };
    p.grad = [](const Vec& v) {
        double x = v[0], y = v[1];
        return Vec{2.0 * x * (2.0 * x * x - 1.0 + 2.0 * y * y),
                   4.0 * y * (x * x + y * y)};
    };
    p.in_domain = [](const Vec& v) {
        return v[0] > 0.0 && v[0] <= 1.25 && std::abs(v[1]) <= 1.5;
    };
    const double xbar = 1.0 / std::sqrt(2.0);
    p.degenerate_set = {GPoint{{0.0, 0.0}, 1.0, false}, GPoint{{xbar, 0.0}, 0.75, true}};
    p.separation = GSeparation{0, xbar};  // N = 1: the two G-points are 1/sqrt2 apart
    p.gradient_cap = 30.0;
    p.f_floor = 0.75;  // f - 3/4 = (x^2 - 1/2)^2 + y^2 (2x^2 + y^2)
    p.max_epsilon = 0.35;
    p.restart = [](const GPoint& g) {
        if (norm2(g.point) > 1e-12)
            throw std::invalid_argument("default model: restart defined at the stratum point only");
        // t -> (t, 0): f(t,0) = t^4 - t^2 + 1 strictly decreasing on (0, 0.4]
        std::vector<Vec> path;
        const int steps = 64;
        for (int i = 1; i <= steps; ++i) path.push_back(Vec{0.4 * i / steps, 0.0});
        return path;
    };
    p.small_gradient_fn =
        step_floor_function(sample_gradient_floor(p, m.box_lo, m.box_hi, grid),
                            grid.floor_deflation);
    m.certified = {"a", "b", "c", "d", "e-1", "e-2", "e-3"};
    return m;
}

ModelInstance quadratic_model(int dim) {
    if (dim < 1) throw std::invalid_argument("quadratic_model: dim >= 1 required");
    ModelInstance m;
    m.name = "quadratic";
    m.box_lo.assign(dim, -2.0);
    m.box_hi.assign(dim, 2.0);

    FlowProblem& p = m.problem;
    p.dimension = dim;
    p.f = [](const Vec& v) {
        double s = 0.0;
        for (double x : v) s += x * x;
        return s;
    };
    p.grad = [](const Vec& v) {
        Vec g(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) g[i] = 2.0 * v[i];
        return g;
    };
    p.in_domain = [](const Vec& v) {
        return std::all_of(v.begin(), v.end(), [](double x) { return std::abs(x) <= 2.0; });
    };
    p.degenerate_set = {GPoint{Vec(dim, 0.0), 0.0, true}};
    p.separation = GSeparation{0, 6.0};  // vacuous for a single point
    p.small_gradient_fn = [](double eps) { return 2.0 * eps; };  // exact: |grad| = 2 d(x, 0)
    p.gradient_cap = 4.0 * std::sqrt(double(dim)) + 1.0;
    p.f_floor = 0.0;
    p.max_epsilon = 1.0;
    p.restart = nullptr;  // single terminal point, never restarted
    m.certified = {"a", "b", "c", "d", "e-1", "e-2"};
    return m;
}

AxiomReport validate_axioms(const ModelInstance& model, const GridConfig& grid) {
    const FlowProblem& p = model.problem;
    AxiomReport rep;
    const int dim = p.dimension;
    const int ns = std::max(8, grid.samples_per_axis / (dim > 2 ? 4 : 1));

    double fmin = 1e300, gmax = 0.0;
    double fd_worst = 0.0;
    std::vector<int> idx(dim, 0);
    std::vector<double> step(dim);
    for (int d = 0; d < dim; ++d) step[d] = (model.box_hi[d] - model.box_lo[d]) / ns;
    Vec x(dim);
    std::uint64_t visited = 0, fd_done = 0;
    bool done = false;
    while (!done) {
        for (int d = 0; d < dim; ++d) x[d] = model.box_lo[d] + step[d] * idx[d];
        if (p.in_domain(x)) {
            double fv = p.f(x);
            Vec g = p.grad(x);
            fmin = std::min(fmin, fv);
            gmax = std::max(gmax, norm2(g));
            // spot-check the gradient against central differences
            if (visited % 977 == 0 && fd_done < std::uint64_t(grid.fd_check_points)) {
                ++fd_done;
                const double h = 1e-5;
                double err = 0.0, scale = std::max(1.0, norm2(g));
                for (int d = 0; d < dim; ++d) {
                    Vec xp = x, xm = x;
                    xp[d] += h;
                    xm[d] -= h;
                    if (!p.in_domain(xp) || !p.in_domain(xm)) { err = 0.0; break; }
                    double fd = (p.f(xp) - p.f(xm)) / (2.0 * h);
                    err = std::max(err, std::abs(fd - g[d]) / scale);
                }
                fd_worst = std::max(fd_worst, err);
            }
            ++visited;
        }
        int d = 0;
        while (d < dim && ++idx[d] > ns) idx[d++] = 0;
        done = d == dim;
    }

    rep.items.push_back({"a", fmin >= p.f_floor - 1e-9,
                         "observed min f = " + std::to_string(fmin) +
                             ", floor = " + std::to_string(p.f_floor)});
    rep.items.push_back({"c", gmax <= p.gradient_cap + 1e-9,
                         "observed max |grad| = " + std::to_string(gmax) +
                             ", cap = " + std::to_string(p.gradient_cap)});
    rep.items.push_back({"grad-fd", fd_worst < grid.fd_rel_tol,
                         "worst relative FD mismatch = " + std::to_string(fd_worst)});

    // (e-1): positive sampled floor at each tabulated eps, and the model's
    // certified function must not exceed what this sampling sees
    rep.gradient_floor = sample_gradient_floor(p, model.box_lo, model.box_hi, grid);
    bool e1 = true;
    std::string e1_detail;
    for (const auto& [eps, a] : rep.gradient_floor) {
        if (!(a > 1e-9)) {
            e1 = false;
            e1_detail = "no gradient floor at eps = " + std::to_string(eps);
            break;
        }
        double claimed = p.small_gradient_fn ? p.small_gradient_fn(eps) : 0.0;
        if (claimed > a * (1.0 + 1e-9)) {
            e1 = false;
            e1_detail = "certified A(eps) exceeds sampled minimum at eps = " + std::to_string(eps);
            break;
        }
    }
    rep.items.push_back({"e-1", e1, e1_detail});

    // (e-2): separation certificate of the G-set
    std::vector<Vec> gpts;
    for (const auto& g : p.degenerate_set) gpts.push_back(g.point);
    bool e2 = check_separation(gpts, p.separation.N(), p.separation.delta);
    rep.items.push_back({"e-2", e2, e2 ? "" : "G-set separation certificate fails"});

    // (e-3): restart descends from every non-terminal G-point
    bool e3 = true;
    std::string e3_detail;
    for (const auto& g : p.degenerate_set) {
        if (g.terminal) continue;
        if (!p.restart) {
            e3 = false;
            e3_detail = "no restart generator";
            break;
        }
        double prev = g.f_value;
        for (const Vec& q : p.restart(g)) {
            double fq = p.f(q);
            if (fq >= prev) {
                e3 = false;
                e3_detail = "restart path not strictly descending";
                break;
            }
            prev = fq;
        }
    }
    rep.items.push_back({"e-3", e3, e3_detail});
    return rep;
}

ModelInstance model_from_manifest(const std::string& json_path, const GridConfig& grid) {
    std::ifstream in(json_path);
    if (!in) throw std::runtime_error("model_from_manifest: cannot open " + json_path);
    nlohmann::json j;
    in >> j;

    ModelInstance m;
    m.name = j.at("name").get<std::string>();
    const int dim = j.at("dimension").get<int>();
    m.box_lo = j.at("box").at("lo").get<Vec>();
    m.box_hi = j.at("box").at("hi").get<Vec>();
    if (int(m.box_lo.size()) != dim || int(m.box_hi.size()) != dim)
        throw std::invalid_argument("model_from_manifest: box dimension mismatch");

    Expr f = Expr::from_json(j.at("f"));
    std::vector<Expr> df;
    for (int d = 0; d < dim; ++d) df.push_back(f.derivative(d));

    FlowProblem& p = m.problem;
    p.dimension = dim;
    p.f = [f](const Vec& x) { return f.eval(x); };
    p.grad = [df](const Vec& x) {
        Vec g(df.size());
        for (std::size_t i = 0; i < df.size(); ++i) g[i] = df[i].eval(x);
        return g;
    };
    Vec lo = m.box_lo, hi = m.box_hi;
    bool open_lo = j.value("open_lower_face", false);
    p.in_domain = [lo, hi, open_lo](const Vec& x) {
        for (std::size_t d = 0; d < lo.size(); ++d) {
            if (d == 0 && open_lo) {
                if (!(x[d] > lo[d])) return false;
            } else if (x[d] < lo[d] - 1e-15) {
                return false;
            }
            if (x[d] > hi[d] + 1e-15) return false;
        }
        return true;
    };
    for (const auto& gj : j.at("g_points")) {
        Vec pt = gj.at("point").get<Vec>();
        p.degenerate_set.push_back(
            GPoint{pt, p.f(pt), gj.value("terminal", false)});
    }
    p.separation = GSeparation{j.at("separation").at("n").get<int>(),
                               j.at("separation").at("delta").get<double>()};
    p.f_floor = j.at("floor").get<double>();
    p.gradient_cap = j.at("cap").get<double>();
    p.max_epsilon = j.at("eps0").get<double>();

    if (j.contains("restarts")) {
        std::vector<std::pair<Vec, std::vector<Vec>>> table;
        for (const auto& rj : j.at("restarts")) {
            std::size_t gi = rj.at("g_index").get<std::size_t>();
            std::vector<Vec> path;
            for (const auto& pt : rj.at("path")) path.push_back(pt.get<Vec>());
            table.emplace_back(p.degenerate_set.at(gi).point, std::move(path));
        }
        p.restart = [table](const GPoint& g) {
            for (const auto& [anchor, path] : table)
                if (euclidean_distance(g.point, anchor) < 1e-12) return path;
            throw std::invalid_argument("manifest model: no restart path for this G-point");
        };
    }

    const auto& sg = j.at("small_gradient");
    if (sg.at("type") == "linear") {
        double slope = sg.at("slope").get<double>();
        p.small_gradient_fn = [slope](double eps) { return slope * eps; };
    } else if (sg.at("type") == "sampled") {
        p.small_gradient_fn = step_floor_function(
            sample_gradient_floor(p, m.box_lo, m.box_hi, grid), grid.floor_deflation);
    } else {
        throw std::invalid_argument("model_from_manifest: unknown small_gradient type");
    }
    return m;
}

ModelInstance model_by_name(const std::string& name, const GridConfig& grid) {
    if (name == "default") return default_model(grid);
    if (name == "quadratic") return quadratic_model(1);
    if (name.rfind("quadratic", 0) == 0) {
        int dim = std::stoi(name.substr(9));
        return quadratic_model(dim);
    }
    if (name == "ladder")
        return model_from_manifest(std::string(SGFLOW_DATA_DIR) + "/model_ladder.json", grid);
    // anything else is treated as a manifest path
    return model_from_manifest(name, grid);
}

}  // namespace sgflow
