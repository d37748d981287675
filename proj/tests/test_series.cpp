#include <doctest.h>

#include <cmath>
#include <complex>

#include "sgflow/series.hpp"

using namespace sgflow;

TEST_CASE("arithmetic and evaluation") {
    PowerSeries z = PowerSeries::variable(16);
    PowerSeries p = (z * z + PowerSeries::constant(2.0, 16)) * z;  // z^3 + 2z
    CHECK(std::abs(p.evaluate(0.5) - (0.125 + 1.0)) < 1e-15);
    PowerSeries dp = p.derivative();  // 3z^2 + 2
    CHECK(std::abs(dp.evaluate(0.5) - 2.75) < 1e-15);
}

TEST_CASE("reciprocal against geometric series") {
    PowerSeries d(32);
    d.at(0) = 1.0;
    d.at(1) = -0.5;
    PowerSeries r = d.reciprocal();  // sum (z/2)^k
    for (std::size_t k = 0; k <= 10; ++k)
        CHECK(std::abs(r[k] - std::pow(0.5, double(k))) < 1e-14);
    CHECK_THROWS_AS(PowerSeries(4).reciprocal(), std::domain_error);
}

TEST_CASE("composition: exp(log(1+z)) = 1 + z") {
    const std::size_t N = 32;
    PowerSeries lg(N), ex(N);  // log(1+z), e^z
    double fact = 1.0;
    for (std::size_t k = 1; k <= N; ++k) lg.at(k) = (k % 2 ? 1.0 : -1.0) / double(k);
    ex.at(0) = 1.0;
    for (std::size_t k = 1; k <= N; ++k) {
        fact *= double(k);
        ex.at(k) = 1.0 / fact;
    }
    PowerSeries c = ex.compose(lg);
    CHECK(std::abs(c[0] - cplx(1.0)) < 1e-13);
    CHECK(std::abs(c[1] - cplx(1.0)) < 1e-13);
    for (std::size_t k = 2; k <= 12; ++k) CHECK(std::abs(c[k]) < 1e-12);
    CHECK_THROWS_AS(ex.compose(ex), std::domain_error);  // inner constant term != 0
}

TEST_CASE("reversion inverts the Koebe series") {
    const std::size_t N = 48;
    PowerSeries k(N);
    for (std::size_t n = 1; n <= N; ++n) k.at(n) = double(n);
    PowerSeries K = k.reversion();
    // K(w) = w - 2w^2 + 5w^3 - 14w^4 + ... (signed Catalan numbers)
    CHECK(std::abs(K[1] - cplx(1.0)) < 1e-14);
    CHECK(std::abs(K[2] - cplx(-2.0)) < 1e-13);
    CHECK(std::abs(K[3] - cplx(5.0)) < 1e-12);
    CHECK(std::abs(K[4] - cplx(-14.0)) < 1e-11);
    PowerSeries id = K.compose(k);
    CHECK(std::abs(id[1] - cplx(1.0)) < 1e-11);
    for (std::size_t n = 2; n <= 10; ++n) CHECK(std::abs(id[n]) < 1e-9);
}

TEST_CASE("reversion handles non-monic linear coefficient") {
    PowerSeries f(24);
    f.at(1) = cplx(0.5, 0.25);
    f.at(2) = cplx(-0.125, 0.06);
    f.at(3) = cplx(0.02, -0.01);
    PowerSeries K = f.reversion();
    cplx z(0.2, 0.1);
    cplx w = f.evaluate(z);
    CHECK(std::abs(K.evaluate(w) - z) < 1e-10);
}
