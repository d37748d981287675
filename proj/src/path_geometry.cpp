#include "sgflow/path_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace sgflow {

double euclidean_distance(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

PolyPath::PolyPath(std::vector<Vec> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.size() < 2) throw std::invalid_argument("PolyPath: need >= 2 vertices");
    cum_.resize(vertices_.size());
    cum_[0] = 0.0;
    for (std::size_t i = 1; i < vertices_.size(); ++i)
        cum_[i] = cum_[i - 1] + euclidean_distance(vertices_[i - 1], vertices_[i]);
}

double PolyPath::endpoint_distance() const {
    return euclidean_distance(vertices_.front(), vertices_.back());
}

Vec PolyPath::point_at(double s) const {
    s = std::clamp(s, 0.0, length());
    auto it = std::upper_bound(cum_.begin(), cum_.end(), s);
    std::size_t i = std::min<std::size_t>(it - cum_.begin(), cum_.size() - 1);
    if (i == 0) return vertices_[0];
    double seg = cum_[i] - cum_[i - 1];
    double u = seg > 0.0 ? (s - cum_[i - 1]) / seg : 0.0;
    Vec p(vertices_[i].size());
    for (std::size_t k = 0; k < p.size(); ++k)
        p[k] = vertices_[i - 1][k] + u * (vertices_[i][k] - vertices_[i - 1][k]);
    return p;
}

namespace {

// Backtracking clique search on the graph with edges d(a,b) < delta.
bool has_clique(const std::vector<std::vector<char>>& adj, std::vector<std::size_t>& clique,
                std::size_t start, std::size_t target) {
    if (clique.size() == target) return true;
    for (std::size_t v = start; v < adj.size(); ++v) {
        bool ok = true;
        for (std::size_t u : clique)
            if (!adj[u][v]) {
                ok = false;
                break;
            }
        if (!ok) continue;
        clique.push_back(v);
        if (has_clique(adj, clique, v + 1, target)) return true;
        clique.pop_back();
    }
    return false;
}

// Parameter intervals (in [0,1] on one segment) where |p(t) - z| < eps.
// p(t) = a + t (b - a); solve the quadratic |p - z|^2 = eps^2.
std::pair<bool, std::pair<double, double>> segment_ball_window(const Vec& a, const Vec& b,
                                                               const Vec& z, double eps) {
    double A = 0.0, B = 0.0, C = -eps * eps;
    for (std::size_t k = 0; k < a.size(); ++k) {
        double d = b[k] - a[k], w = a[k] - z[k];
        A += d * d;
        B += 2.0 * d * w;
        C += w * w;
    }
    if (A == 0.0) {  // degenerate segment
        if (C < 0.0) return {true, {0.0, 1.0}};
        return {false, {}};
    }
    double disc = B * B - 4.0 * A * C;
    if (disc <= 0.0) return {false, {}};
    double sq = std::sqrt(disc);
    double t0 = (-B - sq) / (2.0 * A), t1 = (-B + sq) / (2.0 * A);
    t0 = std::max(t0, 0.0);
    t1 = std::min(t1, 1.0);
    if (t0 >= t1) return {false, {}};
    return {true, {t0, t1}};
}

std::vector<std::pair<double, double>> merge_intervals(std::vector<std::pair<double, double>> v) {
    if (v.empty()) return v;
    std::sort(v.begin(), v.end());
    std::vector<std::pair<double, double>> out{v[0]};
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (v[i].first <= out.back().second) out.back().second = std::max(out.back().second, v[i].second);
        else out.push_back(v[i]);
    }
    return out;
}

std::vector<std::pair<double, double>> ball_intervals_one(const PolyPath& path, const Vec& z,
                                                          double eps) {
    std::vector<std::pair<double, double>> raw;
    const auto& vx = path.vertices();
    for (std::size_t i = 0; i + 1 < vx.size(); ++i) {
        auto [hit, w] = segment_ball_window(vx[i], vx[i + 1], z, eps);
        if (!hit) continue;
        double s0 = path.cumulative(i), s1 = path.cumulative(i + 1);
        raw.emplace_back(s0 + w.first * (s1 - s0), s0 + w.second * (s1 - s0));
    }
    return merge_intervals(std::move(raw));
}

}  // namespace

bool check_separation(const std::vector<Vec>& points, int N, double delta,
                      std::size_t size_cap) {
    if (N < 1 || !(delta > 0.0))
        throw std::invalid_argument("check_separation: need N >= 1 and delta > 0");
    if (points.size() > size_cap)
        throw std::length_error("check_separation: size_limit exceeded");
    if (points.size() <= std::size_t(N)) return true;
    std::size_t n = points.size();
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            adj[i][j] = adj[j][i] = euclidean_distance(points[i], points[j]) < delta;
    std::vector<std::size_t> clique;
    return !has_clique(adj, clique, 0, std::size_t(N) + 1);
}

std::vector<std::pair<double, double>> neighborhood_intervals(const PolyPath& path,
                                                              const std::vector<Vec>& zs,
                                                              double eps) {
    std::vector<std::pair<double, double>> all;
    for (const Vec& z : zs) {
        auto iv = ball_intervals_one(path, z, eps);
        all.insert(all.end(), iv.begin(), iv.end());
    }
    return merge_intervals(std::move(all));
}

double excursion_length(const PolyPath& path, const SeparatedPointSet& Z, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("excursion_length: eps > 0 required");
    double covered = 0.0;
    for (auto [lo, hi] : neighborhood_intervals(path, Z.points, eps)) covered += hi - lo;
    return path.length() - covered;
}

std::vector<CoverElement> cover_decomposition(const PolyPath& path, const SeparatedPointSet& Z,
                                              double eps) {
    // per-z merged interval lists; greedy walk picking the earliest remaining entry
    std::vector<std::vector<std::pair<double, double>>> per_z;
    per_z.reserve(Z.points.size());
    for (const Vec& z : Z.points) per_z.push_back(ball_intervals_one(path, z, eps));

    std::vector<CoverElement> out;
    double cursor = 0.0;  // current t^+
    const double L = path.length();
    while (true) {
        double best_entry = L + 1.0;
        std::size_t best_z = 0;
        for (std::size_t zi = 0; zi < per_z.size(); ++zi) {
            for (const auto& [lo, hi] : per_z[zi]) {
                if (hi <= cursor) continue;  // already passed
                double entry = std::max(lo, cursor);
                if (entry < best_entry) {
                    best_entry = entry;
                    best_z = zi;
                }
                break;  // intervals sorted; first relevant one decides
            }
        }
        if (best_entry > L) break;
        // t^+ = sup over the whole of U_{z}, not just the entered component
        double sup = best_entry;
        for (const auto& [lo, hi] : per_z[best_z]) sup = std::max(sup, hi);
        out.push_back(CoverElement{best_z, best_entry, sup});
        if (sup <= cursor) break;  // cannot happen with eps > 0, but terminate safely
        cursor = sup;
    }
    return out;
}

PathFractionResult verify_path_fraction(const PolyPath& path, const SeparatedPointSet& Z,
                                        double eps) {
    if (!(eps > 0.0) || eps >= Z.delta / (2.0 * Z.N))
        throw std::domain_error("verify_path_fraction: precondition_violated (eps >= delta/(2N))");
    double lhs = excursion_length(path, Z, eps);
    double d = path.endpoint_distance();
    double rhs = (Z.delta - 2.0 * Z.N * eps) / Z.delta * (d - 2.0 * Z.N * eps);
    const double slack = 1e-9 * std::max(1.0, path.length());
    return PathFractionResult{lhs, rhs, lhs >= rhs - slack};
}

PathFractionInstance pathfrac_instance_from_json(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    std::vector<Vec> pts, verts;
    for (const auto& p : j.at("points")) pts.push_back(p.get<Vec>());
    for (const auto& p : j.at("path")) verts.push_back(p.get<Vec>());
    SeparatedPointSet Z{pts, j.at("N").get<int>(), j.at("delta").get<double>()};
    return PathFractionInstance{PolyPath(std::move(verts)), std::move(Z),
                                j.at("eps").get<double>()};
}

}  // namespace sgflow
