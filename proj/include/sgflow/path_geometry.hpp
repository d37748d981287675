#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace sgflow {

using Vec = std::vector<double>;

double euclidean_distance(const Vec& a, const Vec& b);

// Polyline in R^d, parameterized by arclength on [0, length()].
class PolyPath {
public:
    explicit PolyPath(std::vector<Vec> vertices);

    const std::vector<Vec>& vertices() const { return vertices_; }
    double length() const { return cum_.back(); }
    double endpoint_distance() const;
    Vec point_at(double s) const;  // arclength parameter
    std::size_t segments() const { return vertices_.size() - 1; }
    // cumulative arclength at vertex i
    double cumulative(std::size_t i) const { return cum_[i]; }

private:
    std::vector<Vec> vertices_;
    std::vector<double> cum_;
};

// Finite point set with an (N, delta) separation certificate: every subset of
// N+1 points contains two at distance >= delta.
struct SeparatedPointSet {
    std::vector<Vec> points;
    int N = 1;
    double delta = 1.0;
};

// True iff every (N+1)-subset of points contains a pair at distance >= delta.
// Equivalent to: the graph with edges d(a,b) < delta has no (N+1)-clique.
// Throws std::length_error("size_limit...") above the brute-force cap.
bool check_separation(const std::vector<Vec>& points, int N, double delta,
                      std::size_t size_cap = 64);

// Arclength intervals of the path where d(path(s), z) < eps for some z,
// merged and sorted. (Interval endpoints are the closure of the open set.)
std::vector<std::pair<double, double>> neighborhood_intervals(const PolyPath& path,
                                                              const std::vector<Vec>& zs,
                                                              double eps);

// Length of the part of the path at distance > eps from every point of Z.
double excursion_length(const PolyPath& path, const SeparatedPointSet& Z, double eps);

struct CoverElement {
    std::size_t z_index;
    double t_minus;  // arclength entry parameter (in the closure of U_z)
    double t_plus;   // sup of U_z
};

// Greedy cover decomposition: t_i^- = infimum of the remaining entry into
// some U_z, t_i^+ = sup U_{z_i}; the path on [t_{i-1}^+, t_i^-] stays outside
// the eps-neighborhood of Z, and d(path(t_i^-), path(t_i^+)) <= 2 eps.
std::vector<CoverElement> cover_decomposition(const PolyPath& path, const SeparatedPointSet& Z,
                                              double eps);

struct PathFractionResult {
    double lhs;   // L_eps
    double rhs;   // ((delta - 2 N eps)/delta) (d(ends) - 2 N eps)
    bool holds;
};

// Throws std::domain_error("precondition_violated...") if eps >= delta/(2N).
PathFractionResult verify_path_fraction(const PolyPath& path, const SeparatedPointSet& Z,
                                        double eps);

// JSON instance: {"points": [[..]], "N": int, "delta": x, "eps": x,
//                 "path": [[..]]}
struct PathFractionInstance {
    PolyPath path;
    SeparatedPointSet Z;
    double eps;
};
PathFractionInstance pathfrac_instance_from_json(const std::string& json_text);

}  // namespace sgflow
