#include <doctest.h>

#include <cmath>
#include <complex>

#include "sgflow/maps.hpp"
#include "sgflow/schwarzian.hpp"

using namespace sgflow;

namespace {
const double PI = M_PI;

AnalyticMap koebe() { return AnalyticMap("koebe", MapForm::koebe, MapParams{}); }
}  // namespace

TEST_CASE("schwarzian of the identity and of Mobius maps vanishes") {
    MapParams id;
    AnalyticMap f("id", MapForm::mobius, id);
    CHECK(std::abs(schwarzian(f, cplx(0.3, 0.1))) == 0.0);

    MapParams p;
    p.a = cplx(2.0, 1.0);
    p.b = cplx(0.5, -0.25);
    p.c = cplx(0.3, 0.1);
    p.d = cplx(1.5, 0.0);
    AnalyticMap m("mobius", MapForm::mobius, p);
    for (double r : {0.1, 0.25, 0.4}) {
        cplx z = std::polar(r, 1.0 + r);
        CHECK(std::abs(schwarzian(m, z)) == 0.0);                    // closed form
        CHECK(std::abs(m.schwarzian_series().evaluate(z)) < 1e-12);  // series route
    }
}

TEST_CASE("exponential map has constant schwarzian -1/2") {
    MapParams p;
    p.s = 1.0;
    AnalyticMap e("exp", MapForm::exp_map, p);
    for (double r : {0.0, 0.3, 0.6}) {
        cplx z = std::polar(r, 0.7);
        CHECK(std::abs(schwarzian(e, z) - cplx(-0.5)) < 1e-15);
        if (r <= e.r_max()) CHECK(std::abs(e.schwarzian_series().evaluate(z) - cplx(-0.5)) < 1e-10);
    }
}

TEST_CASE("Koebe values: Sk(0) = -6 and -6 b1 cross-check") {
    AnalyticMap k = koebe();
    CHECK(std::abs(schwarzian(k, 0.0) - cplx(-6.0)) < 1e-15);
    auto b = nehari_coefficients(k, 10);
    CHECK(std::abs(b[0] - cplx(-2.0)) < 1e-13);  // g(z) = z - 2 + 1/z
    CHECK(std::abs(b[1] - cplx(1.0)) < 1e-13);
    for (std::size_t n = 2; n < b.size(); ++n) CHECK(std::abs(b[n]) < 1e-12);
    CHECK(std::abs(schwarzian(k, 0.0) - (-6.0) * b[1]) < 1e-12);
    // Euclidean area of the image of |z| = 2 under g: pi(rho^2 - sum n |b_n|^2 rho^{-2n})
    CHECK(std::abs(nehari_area(b, 2.0) - PI * (4.0 - 0.25)) < 1e-12);
}

TEST_CASE("composition rule: Mobius factors act trivially") {
    PowerSeries gs(64);
    gs.at(1) = 1.0;
    gs.at(2) = cplx(0.2, -0.1);
    gs.at(3) = cplx(-0.05, 0.02);
    gs.at(4) = cplx(0.01, 0.01);
    AnalyticMap g("g", gs, 0.9);

    MapParams mp;
    mp.b = 0.2;
    mp.c = 0.2;
    AnalyticMap mob("mob", MapForm::mobius, mp);

    cplx z(0.21, -0.13);
    CHECK(compose_rule_residual(mob, g, z) < 1e-12);

    // f Mobius: S(f.g) = Sg
    PowerSeries comp = mob.series().compose(gs);
    AnalyticMap fg("fg", comp, 0.5);
    CHECK(std::abs(fg.schwarzian_series().evaluate(z) - g.schwarzian_series().evaluate(z)) <
          1e-12);

    // g Mobius: S(f.g)(z) = Sf(g(z)) g'(z)^2
    MapParams scale;
    scale.a = 0.5;
    AnalyticMap h("half", MapForm::mobius, scale);
    PowerSeries comp2 = gs.compose(h.series());
    AnalyticMap gh("gh", comp2, 0.9);
    cplx direct = gh.schwarzian_series().evaluate(z);
    cplx viarule = g.schwarzian_series().evaluate(h.eval(z)) * h.deriv(z) * h.deriv(z);
    CHECK(std::abs(direct - viarule) < 1e-12);
}

TEST_CASE("schwarzian rejects critical points") {
    PowerSeries sq(16);
    sq.at(2) = 1.0;  // f(z) = z^2, f'(0) = 0
    AnalyticMap f("square", sq, 0.9);
    CHECK_THROWS_AS(schwarzian(f, 0.0), std::domain_error);
}

TEST_CASE("pointwise norm: conformal factor 4 at the origin") {
    QuadDiffDisk phi = constant_differential(cplx(-6.0));
    CHECK(std::abs(pointwise_norm(phi, 0.0) - 1.5) < 1e-15);
    CHECK(pointwise_norm(phi, std::polar(0.999, 1.0)) < 1e-5);
    CHECK(std::abs(pointwise_norm(schwarzian_differential(koebe()), 0.0) - 1.5) < 1e-15);
}

TEST_CASE("Lp norms") {
    QuadDiffDisk zero = constant_differential(0.0);
    CHECK(lp_norm(zero, 1) == 0.0);
    CHECK(lp_norm(zero, 2) == 0.0);
    CHECK(lp_norm(zero, 0) == 0.0);

    // L-infinity of the Koebe schwarzian on |z| <= 0.99
    double sup = lp_norm(schwarzian_differential(koebe()), 0);
    CHECK(std::abs(sup - 1.5) < 1e-3);

    // closed forms on the cutoff disk |z| <= R for a constant phi:
    // L1 = |phi| pi R^2, L2 = |phi| sqrt(pi/12 (1 - (1-R^2)^3))
    LpConfig cfg;
    cfg.cutoff_radius = 0.8;
    QuadDiffDisk c = constant_differential(cplx(0.0, 2.0));
    double l1 = lp_norm(c, 1, cfg);
    double l2 = lp_norm(c, 2, cfg);
    CHECK(std::abs(l1 - 2.0 * PI * 0.64) < 1e-9);
    CHECK(std::abs(l2 - 2.0 * std::sqrt(PI / 12.0 * (1.0 - std::pow(0.36, 3)))) < 1e-9);
}

TEST_CASE("stalled quadrature refinement is reported") {
    LpConfig cfg;
    cfg.quad.max_refinements = 0;  // no refinement can ever stabilize
    CHECK_THROWS_WITH_AS(lp_norm(constant_differential(1.0), 2, cfg),
                         doctest::Contains("quadrature_divergence"), std::runtime_error);
}

TEST_CASE("nehari coefficients of the identity vanish") {
    MapParams id;
    AnalyticMap f("id", MapForm::mobius, id);
    for (cplx b : nehari_coefficients(f, 12)) CHECK(std::abs(b) < 1e-14);
}

TEST_CASE("slit family: exact schwarzian value and bigdisk sharpness") {
    // S f_lambda(0) = -6 (1 - lambda^2); bound (3/2) sqrt(1 - x^2) with
    // x the slit tip; equality as lambda -> 1
    for (double lam : {0.3, 0.7, 0.95}) {
        MapParams p;
        p.lambda = lam;
        AnalyticMap f("slit", MapForm::slit, p);
        CHECK(std::abs(schwarzian(f, 0.0) - cplx(-6.0 * (1.0 - lam * lam))) < 1e-12);
        double x = lam / (2.0 - lam + 2.0 * std::sqrt(1.0 - lam));
        double norm0 = pointwise_norm(schwarzian_differential(f), 0.0);
        double bound = bigdisk_bound(2.0 * std::atanh(x));
        CHECK(std::abs(norm0 - 1.5 * (1.0 - lam * lam)) < 1e-12);
        CHECK(std::abs(bound - 1.5 * std::sqrt(1.0 - x * x)) < 1e-12);
        CHECK(norm0 <= bound + 1e-12);
    }
}

TEST_CASE("bigdisk bound values") {
    CHECK(bigdisk_bound(0.0) == 1.5);  // Kraus-Nehari
    CHECK(std::abs(bigdisk_bound(2.0) - 1.5 / std::cosh(1.0)) < 1e-15);
    CHECK(bigdisk_bound(40.0) < 1e-7);
    CHECK_THROWS_AS(bigdisk_bound(-1.0), std::domain_error);
}

TEST_CASE("tanh image radius certificate: boundary minimum on the real axis") {
    // min over theta of |tanh((s/2) e^{i theta})| = tanh(s/2) for s <= 1
    for (double s : {0.8, 1.0}) {
        double lo = 1e9;
        for (int j = 0; j < 4096; ++j) {
            double th = 2.0 * PI * j / 4096.0;
            lo = std::min(lo, std::abs(std::tanh(std::polar(0.5 * s, th))));
        }
        CHECK(lo >= std::tanh(0.5 * s) - 1e-12);
    }
}

TEST_CASE("ahlfors-weill distance bound") {
    CHECK(ahlfors_weill_distance(0.0).value == 0.0);
    AhlforsWeillBound b = ahlfors_weill_distance(1.0 / 3.0);
    CHECK(std::abs(b.value - 0.5 * std::log(5.0)) < 1e-15);
    CHECK(b.value <= b.linear);
    CHECK(b.linear_valid);
    double prev = -1.0;
    for (int i = 0; i <= 50; ++i) {
        double v = ahlfors_weill_distance(0.49 * i / 50.0).value;
        CHECK(v >= prev);
        prev = v;
    }
    CHECK_THROWS_AS(ahlfors_weill_distance(0.5), std::domain_error);
    CHECK_THROWS_AS(ahlfors_weill_distance(-0.1), std::domain_error);
}

TEST_CASE("skinning distance bound") {
    SkinningBound z = skinning_distance_bound(0.0, 0.5, 4.0 * PI);
    CHECK(z.teich == 0.0);
    CHECK(z.wp == 0.0);
    SkinningBound b = skinning_distance_bound(1.0 / 3.0, 0.5, 4.0 * PI);
    CHECK(std::abs(b.teich - 2.0) < 1e-15);
    CHECK(std::abs(b.wp - 2.0 * std::sqrt(4.0 * PI)) < 1e-12);
    // lambda -> 1: reported, not clamped
    CHECK(skinning_distance_bound(0.3, 1.0 - 1e-9, 1.0).teich > 1e8);
    CHECK_THROWS_AS(skinning_distance_bound(0.4, 0.5, 1.0), std::domain_error);
    CHECK_THROWS_AS(skinning_distance_bound(0.1, 1.0, 1.0), std::domain_error);
}

TEST_CASE("pointwise bound from the L2 norm") {
    const double eps2 = std::asinh(1.0);
    CHECK(pointwise_from_l2(0.0, 0.5) == 0.0);
    CHECK(std::abs(pointwise_from_l2(1.0, 0.25) - 2.0) < 1e-15);
    CHECK(std::abs(pointwise_from_l2(1.0, 5.0) - 1.0 / std::sqrt(eps2)) < 1e-15);  // inj >= eps2
    CHECK_THROWS_AS(pointwise_from_l2(1.0, 0.0), std::domain_error);
}

TEST_CASE("zoo manifest matches the builtin zoo") {
    std::vector<ZooEntry> file = load_zoo(std::string(SGFLOW_DATA_DIR) + "/univalent_zoo.json");
    std::vector<ZooEntry> built = builtin_zoo();
    REQUIRE(file.size() == built.size());
    for (std::size_t i = 0; i < file.size(); ++i) {
        CHECK(file[i].map.form() == built[i].map.form());
        CHECK(file[i].nehari == built[i].nehari);
        REQUIRE(file[i].r_certified.has_value() == built[i].r_certified.has_value());
        if (file[i].r_certified && std::isfinite(*built[i].r_certified))
            CHECK(std::abs(*file[i].r_certified - *built[i].r_certified) < 1e-12);
        // evaluation agreement at a sample point
        cplx z(0.17, 0.11);
        CHECK(std::abs(file[i].map.eval(z) - built[i].map.eval(z)) < 1e-14);
    }
    // every certified entry satisfies the bigdisk inequality
    for (const ZooEntry& e : file)
        if (e.r_certified) CHECK(bigdisk_check(e).holds);
}
