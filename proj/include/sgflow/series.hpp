#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace sgflow {

using cplx = std::complex<double>;

// Truncated complex power series around 0. All arithmetic is exact to the
// truncation order; binary operations truncate to the shorter operand.
class PowerSeries {
public:
    PowerSeries() = default;
    explicit PowerSeries(std::size_t order) : c_(order + 1, cplx(0.0)) {}
    explicit PowerSeries(std::vector<cplx> coeffs) : c_(std::move(coeffs)) {
        if (c_.empty()) c_.resize(1, cplx(0.0));
    }

    static PowerSeries constant(cplx a, std::size_t order) {
        PowerSeries s(order);
        s.c_[0] = a;
        return s;
    }
    static PowerSeries variable(std::size_t order) {
        PowerSeries s(order);
        if (order >= 1) s.c_[1] = 1.0;
        return s;
    }

    std::size_t order() const { return c_.size() - 1; }
    const std::vector<cplx>& coeffs() const { return c_; }
    cplx operator[](std::size_t k) const { return k < c_.size() ? c_[k] : cplx(0.0); }
    cplx& at(std::size_t k) { return c_.at(k); }

    PowerSeries truncated(std::size_t order) const {
        std::vector<cplx> v(order + 1, cplx(0.0));
        for (std::size_t k = 0; k <= order && k < c_.size(); ++k) v[k] = c_[k];
        return PowerSeries(std::move(v));
    }

    PowerSeries operator+(const PowerSeries& o) const {
        std::size_t n = std::min(order(), o.order());
        PowerSeries r(n);
        for (std::size_t k = 0; k <= n; ++k) r.c_[k] = (*this)[k] + o[k];
        return r;
    }
    PowerSeries operator-(const PowerSeries& o) const {
        std::size_t n = std::min(order(), o.order());
        PowerSeries r(n);
        for (std::size_t k = 0; k <= n; ++k) r.c_[k] = (*this)[k] - o[k];
        return r;
    }
    PowerSeries operator*(const PowerSeries& o) const {
        std::size_t n = std::min(order(), o.order());
        PowerSeries r(n);
        for (std::size_t i = 0; i <= n; ++i)
            for (std::size_t j = 0; i + j <= n; ++j) r.c_[i + j] += (*this)[i] * o[j];
        return r;
    }
    PowerSeries operator*(cplx a) const {
        PowerSeries r = *this;
        for (auto& x : r.c_) x *= a;
        return r;
    }
    friend PowerSeries operator*(cplx a, const PowerSeries& s) { return s * a; }

    PowerSeries derivative() const {
        if (order() == 0) return PowerSeries(std::size_t(0));
        PowerSeries r(order() - 1);
        for (std::size_t k = 1; k <= order(); ++k) r.c_[k - 1] = double(k) * c_[k];
        return r;
    }

    // 1/f for f with f(0) != 0, by the standard convolution recurrence.
    PowerSeries reciprocal() const {
        if (std::abs(c_[0]) < 1e-300)
            throw std::domain_error("PowerSeries::reciprocal: vanishing constant term");
        PowerSeries r(order());
        r.c_[0] = 1.0 / c_[0];
        for (std::size_t n = 1; n <= order(); ++n) {
            cplx s = 0.0;
            for (std::size_t k = 1; k <= n; ++k) s += (*this)[k] * r.c_[n - k];
            r.c_[n] = -s / c_[0];
        }
        return r;
    }

    // f(g(z)) by Horner evaluation over series; requires g(0) = 0 so the
    // composition is again a polynomial identity up to the truncation order.
    PowerSeries compose(const PowerSeries& g) const {
        if (std::abs(g[0]) > 1e-14)
            throw std::domain_error("PowerSeries::compose: inner series must vanish at 0");
        std::size_t n = std::min(order(), g.order());
        PowerSeries r = PowerSeries::constant((*this)[order()], n);
        for (std::size_t k = order(); k-- > 0;) {
            r = r * g;
            r.c_[0] += (*this)[k];
        }
        return r;
    }

    // Compositional inverse of f = c1 z + c2 z^2 + ... with c1 != 0:
    // returns K with K(f(z)) = z to the truncation order.
    PowerSeries reversion() const {
        if (std::abs((*this)[0]) > 1e-14)
            throw std::domain_error("PowerSeries::reversion: series must vanish at 0");
        cplx c1 = (*this)[1];
        if (std::abs(c1) < 1e-300)
            throw std::domain_error("PowerSeries::reversion: vanishing linear term");
        std::size_t n = order();
        // normalize to monic: h = f/c1, find monic inverse, then rescale
        PowerSeries h = (*this) * (1.0 / c1);
        // powers h^j, j = 1..n
        std::vector<PowerSeries> pw;
        pw.reserve(n + 1);
        pw.push_back(h);
        for (std::size_t j = 2; j <= n; ++j) pw.push_back(pw.back() * h);
        PowerSeries K(n);
        if (n >= 1) K.c_[1] = 1.0;
        for (std::size_t m = 2; m <= n; ++m) {
            cplx s = 0.0;
            for (std::size_t j = 1; j < m; ++j) s += K.c_[j] * pw[j - 1][m];
            K.c_[m] = -s;  // leading coefficient of h^m is 1
        }
        // K_monic(w) inverts h; f = c1*h, so f^{-1}(w) = K_monic(w/c1)
        PowerSeries out(n);
        cplx scale = 1.0;
        for (std::size_t k = 0; k <= n; ++k) {
            out.c_[k] = K.c_[k] * scale;
            scale /= c1;
        }
        return out;
    }

    cplx evaluate(cplx z) const {
        cplx acc = c_.back();
        for (std::size_t k = c_.size() - 1; k-- > 0;) acc = acc * z + c_[k];
        return acc;
    }

private:
    std::vector<cplx> c_;
};

}  // namespace sgflow
