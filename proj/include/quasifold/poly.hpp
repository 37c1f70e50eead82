#pragma once

// Dense univariate polynomials with GMP rational coefficients.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "quasifold/error.hpp"

namespace quasifold {

/// Coefficients are stored lowest degree first; the zero polynomial has no
/// coefficients and every nonzero polynomial has a nonzero leading coefficient.
class Poly {
public:
    Poly() = default;

    explicit Poly(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) { trim(); }

    Poly(std::initializer_list<mpq_class> coeffs) : c_(coeffs) { trim(); }

    static Poly constant(const mpq_class& v) { return Poly(std::vector<mpq_class>{v}); }

    static Poly monomial(const mpq_class& v, std::size_t degree) {
        std::vector<mpq_class> c(degree + 1);
        c[degree] = v;
        return Poly(std::move(c));
    }

    bool is_zero() const noexcept { return c_.empty(); }
    bool is_constant() const noexcept { return c_.size() <= 1; }

    /// Degree of the zero polynomial is reported as -1.
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }

    const std::vector<mpq_class>& coeffs() const noexcept { return c_; }

    mpq_class coeff(std::size_t i) const { return i < c_.size() ? c_[i] : mpq_class(0); }

    mpq_class leading() const { return c_.empty() ? mpq_class(0) : c_.back(); }

    mpq_class constant_term() const { return coeff(0); }

    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    Poly monic() const {
        if (is_zero()) return *this;
        Poly r = *this;
        const mpq_class lc = leading();
        for (auto& v : r.c_) v /= lc;
        return r;
    }

    Poly operator-() const {
        Poly r = *this;
        for (auto& v : r.c_) v = -v;
        return r;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<mpq_class> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
        return Poly(std::move(c));
    }

    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<mpq_class> c(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(std::move(c));
    }

    friend Poly operator*(const mpq_class& s, const Poly& a) {
        if (s == 0) return {};
        Poly r = a;
        for (auto& v : r.c_) v *= s;
        return r;
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    /// Euclidean division; returns (quotient, remainder).
    friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw division_by_zero("polynomial division by zero");
        if (a.degree() < b.degree()) return {Poly{}, a};
        std::vector<mpq_class> rem = a.c_;
        std::vector<mpq_class> quo(a.c_.size() - b.c_.size() + 1);
        const mpq_class lc = b.leading();
        for (std::size_t k = quo.size(); k-- > 0;) {
            const mpq_class q = rem[k + b.c_.size() - 1] / lc;
            quo[k] = q;
            if (q == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) rem[k + j] -= q * b.c_[j];
        }
        rem.resize(b.c_.size() - 1);
        return {Poly(std::move(quo)), Poly(std::move(rem))};
    }

    friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

    /// Exact quotient; the caller guarantees b divides a.
    friend Poly exact_div(const Poly& a, const Poly& b) { return divmod(a, b).first; }

    /// Monic greatest common divisor (zero when both inputs are zero).
    friend Poly gcd(Poly a, Poly b) {
        while (!b.is_zero()) {
            Poly r = a % b;
            a = std::move(b);
            b = r.monic();
        }
        return a.monic();
    }

    /// Returns (g, s) with s*a = g mod m and g = gcd(a, m) monic.
    friend std::pair<Poly, Poly> inverse_mod(const Poly& a, const Poly& m) {
        Poly r0 = m, r1 = a % m;
        Poly s0{}, s1 = Poly::constant(1);
        while (!r1.is_zero()) {
            auto [q, r] = divmod(r0, r1);
            Poly s = s0 - q * s1;
            r0 = std::move(r1);
            r1 = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(s);
        }
        if (r0.is_zero()) return {Poly{}, Poly{}};
        const mpq_class lc = r0.leading();
        const mpq_class inv_lc = 1 / lc;
        return {r0.monic(), inv_lc * s0 % m};
    }

    mpq_class evaluate(const mpq_class& x) const {
        mpq_class acc = 0;
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    mpf_class evaluate(const mpf_class& x) const {
        mpf_class acc(0, x.get_prec());
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + mpf_class(c_[i], x.get_prec());
        return acc;
    }

    double evaluate(double x) const {
        double acc = 0.0;
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i].get_d();
        return acc;
    }

    /// Interval Horner evaluation over [lo, hi]; returns a bounding interval.
    std::pair<mpq_class, mpq_class> evaluate_interval(const mpq_class& lo, const mpq_class& hi) const {
        mpq_class a = 0, b = 0;
        for (std::size_t i = c_.size(); i-- > 0;) {
            const mpq_class p1 = a * lo, p2 = a * hi, p3 = b * lo, p4 = b * hi;
            a = std::min({p1, p2, p3, p4}) + c_[i];
            b = std::max({p1, p2, p3, p4}) + c_[i];
        }
        return {a, b};
    }

    /// True when every coefficient is >= 0 (resp. <= 0).
    bool nonnegative_coefficients() const {
        return std::all_of(c_.begin(), c_.end(), [](const mpq_class& v) { return sgn(v) >= 0; });
    }
    bool nonpositive_coefficients() const {
        return std::all_of(c_.begin(), c_.end(), [](const mpq_class& v) { return sgn(v) <= 0; });
    }

private:
    void trim() {
        for (auto& c : c_) c.canonicalize();
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<mpq_class> c_;
};

}  // namespace quasifold
