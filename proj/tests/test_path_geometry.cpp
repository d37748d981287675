#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "sgflow/path_geometry.hpp"

using namespace sgflow;

namespace {

// independent oracle: fine subdivision of the path, counting sub-segments
// whose midpoint stays outside every eps-ball
double excursion_by_subdivision(const PolyPath& path, const SeparatedPointSet& Z, double eps,
                                int steps = 200000) {
    double L = path.length(), total = 0.0;
    for (int i = 0; i < steps; ++i) {
        double mid = L * (i + 0.5) / steps;
        Vec p = path.point_at(mid);
        bool outside = true;
        for (const Vec& z : Z.points)
            if (euclidean_distance(p, z) <= eps) outside = false;
        if (outside) total += L / steps;
    }
    return total;
}

}  // namespace

TEST_CASE("polyline basics") {
    PolyPath p({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}});
    CHECK(p.length() == 2.0);
    CHECK(std::abs(p.endpoint_distance() - std::sqrt(2.0)) < 1e-15);
    CHECK(p.length() >= p.endpoint_distance());  // triangle inequality
    Vec mid = p.point_at(1.5);
    CHECK(std::abs(mid[0] - 1.0) < 1e-15);
    CHECK(std::abs(mid[1] - 0.5) < 1e-15);
    CHECK_THROWS_AS(PolyPath(std::vector<Vec>{Vec{0.0}}), std::invalid_argument);
}

TEST_CASE("separation checker") {
    CHECK(check_separation({{0.0}, {10.0}, {20.0}}, 1, 5.0));
    CHECK(!check_separation({{0.0}, {1.0}, {2.0}}, 2, 5.0));  // all pairwise < 5
    CHECK(check_separation({{0.0}, {1.0}, {2.0}}, 3, 5.0));   // too few points to violate
    CHECK_THROWS_AS(check_separation(std::vector<Vec>(100, Vec{0.0}), 1, 1.0, 64),
                    std::length_error);
    CHECK_THROWS_AS(check_separation({{0.0}}, 0, 1.0), std::invalid_argument);
}

TEST_CASE("excursion length on the segment example") {
    PolyPath seg({{0.0}, {3.0}});
    SeparatedPointSet Z{{{1.5}}, 1, 10.0};
    CHECK(std::abs(excursion_length(seg, Z, 0.5) - 2.0) < 1e-12);  // removes (1, 2)
    SeparatedPointSet none{{}, 1, 10.0};
    CHECK(excursion_length(seg, none, 0.5) == 3.0);
    PolyPath inside({{1.2}, {1.7}});
    CHECK(excursion_length(inside, Z, 0.6) == 0.0);
}

TEST_CASE("excursion length agrees with the fine-subdivision oracle") {
    std::mt19937_64 rng(2024);
    auto u = [&](double lo, double hi) {
        return lo + (hi - lo) * double(rng() >> 11) * 0x1.0p-53;
    };
    for (int it = 0; it < 10; ++it) {
        std::vector<Vec> verts, zs;
        for (int i = 0, n = 4 + int(rng() % 8); i < n; ++i)
            verts.push_back({u(0, 1), u(0, 1)});
        for (int i = 0, n = 1 + int(rng() % 4); i < n; ++i) zs.push_back({u(0, 1), u(0, 1)});
        PolyPath path(verts);
        SeparatedPointSet Z{zs, 4, 1.0};
        double eps = u(0.05, 0.3);
        double exact = excursion_length(path, Z, eps);
        double approx = excursion_by_subdivision(path, Z, eps);
        CHECK(std::abs(exact - approx) < 2e-3 * std::max(1.0, path.length()));
    }
}

TEST_CASE("cover decomposition on constructed instances") {
    SUBCASE("path missing all balls") {
        PolyPath p({{0.0, 0.0}, {1.0, 0.0}});
        SeparatedPointSet Z{{{0.5, 5.0}}, 1, 1.0};
        CHECK(cover_decomposition(p, Z, 0.2).empty());
    }
    SUBCASE("single ball bracket") {
        PolyPath seg({{0.0}, {3.0}});
        SeparatedPointSet Z{{{1.5}}, 1, 10.0};
        auto cov = cover_decomposition(seg, Z, 0.5);
        REQUIRE(cov.size() == 1);
        CHECK(std::abs(cov[0].t_minus - 1.0) < 1e-9);
        CHECK(std::abs(cov[0].t_plus - 2.0) < 1e-9);
    }
    SUBCASE("two balls in order") {
        PolyPath seg({{0.0}, {10.0}});
        SeparatedPointSet Z{{{7.0}, {2.0}}, 1, 4.0};
        auto cov = cover_decomposition(seg, Z, 0.5);
        REQUIRE(cov.size() == 2);
        CHECK(cov[0].z_index == 1);  // the ball at 2 comes first along the path
        CHECK(cov[1].z_index == 0);
        CHECK(cov[0].t_plus <= cov[1].t_minus + 1e-12);
        for (const auto& el : cov) {
            Vec a = seg.point_at(el.t_minus), b = seg.point_at(el.t_plus);
            CHECK(euclidean_distance(a, b) <= 2.0 * 0.5 + 1e-9);
        }
    }
    SUBCASE("re-entering ball is absorbed by the global sup") {
        // path dips out of the ball at 0 and returns before leaving for good
        PolyPath p({{-2.0, 0.0}, {-0.5, 0.0}, {-0.5, 3.0}, {0.5, 3.0}, {0.5, 0.0}, {2.0, 0.0}});
        SeparatedPointSet Z{{{0.0, 0.0}}, 1, 1.0};
        auto cov = cover_decomposition(p, Z, 1.0);
        REQUIRE(cov.size() == 1);  // one element despite two crossings of U_z
        CHECK(euclidean_distance(p.point_at(cov[0].t_minus), p.point_at(cov[0].t_plus)) <=
              2.0 + 1e-9);
    }
}

TEST_CASE("excursion length tends to the full length as eps -> 0+") {
    PolyPath p({{0.0, 0.0}, {1.0, 0.3}, {0.4, 0.9}});
    SeparatedPointSet Z{{{0.5, 0.5}, {0.9, 0.1}}, 2, 1.0};  // off the vertices
    CHECK(std::abs(excursion_length(p, Z, 1e-9) - p.length()) < 1e-7);
}

TEST_CASE("path fraction verification") {
    PolyPath seg({{0.0}, {3.0}});
    SeparatedPointSet Z{{{1.5}}, 1, 10.0};
    PathFractionResult r = verify_path_fraction(seg, Z, 0.5);
    CHECK(std::abs(r.lhs - 2.0) < 1e-12);
    CHECK(std::abs(r.rhs - 1.8) < 1e-12);  // (10-1)/10 * (3-1)
    CHECK(r.holds);
    CHECK_THROWS_AS(verify_path_fraction(seg, Z, 5.0), std::domain_error);
}

TEST_CASE("json instance loader") {
    const char* text = R"({
        "points": [[0.5, 0.5]],
        "N": 1, "delta": 2.0, "eps": 0.25,
        "path": [[0.0, 0.5], [1.0, 0.5]]
    })";
    PathFractionInstance inst = pathfrac_instance_from_json(text);
    CHECK(inst.Z.points.size() == 1);
    CHECK(inst.eps == 0.25);
    PathFractionResult r = verify_path_fraction(inst.path, inst.Z, inst.eps);
    CHECK(std::abs(r.lhs - 0.5) < 1e-12);  // removes (0.25, 0.75)
    CHECK(r.holds);
}
