#pragma once

// Exact scalars over three domains: the rationals, a simple number field
// Q[x]/(p) with a designated real embedding, and the rational function field
// Q(a) in one positive parameter.

#include <gmpxx.h>

#include <cstddef>
#include <cstdio>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quasifold/error.hpp"
#include "quasifold/poly.hpp"

namespace quasifold {

enum class DomainKind { rational, number_field, rational_function };

enum class Sign { negative = -1, zero = 0, positive = 1 };

inline int to_int(Sign s) noexcept { return static_cast<int>(s); }

inline Sign sign_of(const mpq_class& v) noexcept {
    const int s = sgn(v);
    return s < 0 ? Sign::negative : (s > 0 ? Sign::positive : Sign::zero);
}

/// Parses a plain decimal ("1.4142", "-0.5", "3") or a fraction ("7/5") into an exact rational.
inline mpq_class parse_decimal(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (ch != ' ' && ch != '\t') s.push_back(ch);
    if (s.empty()) throw input_error("empty decimal literal");
    try {
        if (s.find('/') != std::string::npos) {
            mpq_class q(s, 10);
            q.canonicalize();
            if (q.get_den() == 0) throw input_error("zero denominator in '" + text + "'");
            return q;
        }
        bool negative = false;
        std::size_t i = 0;
        if (s[0] == '-' || s[0] == '+') {
            negative = s[0] == '-';
            i = 1;
        }
        std::string digits;
        std::size_t frac_digits = 0;
        bool seen_point = false;
        for (; i < s.size(); ++i) {
            if (s[i] == '.' && !seen_point) {
                seen_point = true;
            } else if (s[i] >= '0' && s[i] <= '9') {
                digits.push_back(s[i]);
                if (seen_point) ++frac_digits;
            } else {
                throw input_error("malformed decimal literal '" + text + "'");
            }
        }
        if (digits.empty()) throw input_error("malformed decimal literal '" + text + "'");
        mpz_class num(digits, 10);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_digits);
        mpq_class q(negative ? mpz_class(-num) : num, den);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw input_error("malformed decimal literal '" + text + "'");
    }
}

/// 2^-bits as an exact rational.
inline mpq_class dyadic_width(unsigned long bits) {
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, bits);
    return mpq_class(mpz_class(1), den);
}

class ScalarDomain;
using DomainPtr = std::shared_ptr<const ScalarDomain>;

/// Descriptor of the active scalar domain. Immutable once built.
class ScalarDomain {
public:
    static DomainPtr rational() {
        static const DomainPtr shared(new ScalarDomain(DomainKind::rational));
        return shared;
    }

    /// `min_poly` is monic of degree >= 2 (lowest coefficient first); `embedding`
    /// approximates the real root used for signs and numerics.
    static DomainPtr number_field(Poly min_poly, std::string symbol, const mpq_class& embedding) {
        if (min_poly.degree() < 2) throw input_error("minimal polynomial must have degree >= 2");
        if (!min_poly.is_monic()) throw input_error("minimal polynomial must be monic");
        check_symbol(symbol);
        auto d = std::shared_ptr<ScalarDomain>(new ScalarDomain(DomainKind::number_field));
        d->min_poly_ = std::move(min_poly);
        d->symbol_ = std::move(symbol);
        d->embedding_approx_ = embedding;
        d->isolate_root();
        return d;
    }

    static DomainPtr rational_function(std::string symbol, std::optional<mpq_class> default_sample,
                                       bool positive = true) {
        check_symbol(symbol);
        if (positive && default_sample && sgn(*default_sample) <= 0)
            throw input_error("default sample must be positive for a positive parameter");
        auto d = std::shared_ptr<ScalarDomain>(new ScalarDomain(DomainKind::rational_function));
        d->symbol_ = std::move(symbol);
        d->default_sample_ = std::move(default_sample);
        d->positive_ = positive;
        return d;
    }

    DomainKind kind() const noexcept { return kind_; }
    const Poly& min_poly() const noexcept { return min_poly_; }
    const std::string& symbol() const noexcept { return symbol_; }
    const mpq_class& embedding_approx() const noexcept { return embedding_approx_; }
    bool parameter_positive() const noexcept { return positive_; }
    const std::optional<mpq_class>& default_sample() const noexcept { return default_sample_; }

    std::size_t degree() const noexcept {
        return kind_ == DomainKind::number_field ? static_cast<std::size_t>(min_poly_.degree()) : 1;
    }

    /// Rational isolating interval of the designated root, refined to width below `width`.
    std::pair<mpq_class, mpq_class> root_interval(const mpq_class& width) const {
        auto [lo, hi] = root_;
        refine(lo, hi, width);
        return {lo, hi};
    }

    /// One refinement step of an isolating interval (bisection on the sign of p).
    void bisect(mpq_class& lo, mpq_class& hi) const {
        const mpq_class mid = (lo + hi) / 2;
        const int s_mid = sgn(min_poly_.evaluate(mid));
        if (s_mid == 0) {
            // p is irreducible of degree >= 2, so this only happens for reducible input.
            lo = hi = mid;
            return;
        }
        if (s_mid == sgn(min_poly_.evaluate(lo)))
            lo = mid;
        else
            hi = mid;
    }

    double root_double() const noexcept { return root_double_; }

    friend bool same_domain(const ScalarDomain& a, const ScalarDomain& b) {
        if (&a == &b) return true;
        return a.kind_ == b.kind_ && a.symbol_ == b.symbol_ && a.min_poly_ == b.min_poly_ &&
               a.embedding_approx_ == b.embedding_approx_;
    }

    std::string kind_name() const {
        switch (kind_) {
            case DomainKind::rational: return "rational";
            case DomainKind::number_field: return "number_field";
            case DomainKind::rational_function: return "rational_function";
        }
        return "unknown";
    }

private:
    explicit ScalarDomain(DomainKind kind) : kind_(kind) {}

    static void check_symbol(const std::string& s) {
        if (s.empty()) throw input_error("generator symbol must be non-empty");
        auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
        if (!alpha(s[0])) throw input_error("generator symbol '" + s + "' must start with a letter");
        for (char c : s)
            if (!alpha(c) && !(c >= '0' && c <= '9'))
                throw input_error("generator symbol '" + s + "' must be alphanumeric");
    }

    void refine(mpq_class& lo, mpq_class& hi, const mpq_class& width) const {
        while (hi - lo >= width && lo != hi) bisect(lo, hi);
    }

    void isolate_root() {
        const mpq_class e = embedding_approx_;
        mpq_class delta(1, 1000000);
        mpq_class lo, hi;
        for (int attempt = 0;; ++attempt) {
            lo = e - delta;
            hi = e + delta;
            const int s_lo = sgn(min_poly_.evaluate(lo));
            const int s_hi = sgn(min_poly_.evaluate(hi));
            if (s_lo == 0 || s_hi == 0)
                throw input_error("minimal polynomial has a rational root; it is not irreducible");
            if (s_lo != s_hi) break;
            if (attempt > 8)
                throw input_error("embedding approximation is not close to a real root of the minimal polynomial");
            delta *= 10;
        }
        refine(lo, hi, dyadic_width(96));
        root_ = {lo, hi};
        const mpq_class mid = (lo + hi) / 2;
        root_double_ = mid.get_d();
        if (mpq_class(abs(min_poly_.evaluate(mid))).get_d() >= 1e-8)
            throw input_error("refined root does not satisfy the minimal polynomial");
    }

    DomainKind kind_;
    Poly min_poly_;
    std::string symbol_;
    mpq_class embedding_approx_;
    std::pair<mpq_class, mpq_class> root_;
    double root_double_ = 0.0;
    std::optional<mpq_class> default_sample_;
    bool positive_ = false;
};

/// An exact element of a ScalarDomain, always in canonical form:
///   rational           num constant, den = 1
///   number_field       num reduced modulo min_poly, den = 1
///   rational_function  gcd(num, den) = 1, den monic
class Scalar {
public:
    /// Rational zero.
    Scalar() : dom_(ScalarDomain::rational()), den_(Poly::constant(1)) {}

    Scalar(DomainPtr dom, const mpq_class& v) : dom_(std::move(dom)), num_(Poly::constant(v)), den_(Poly::constant(1)) {}

    Scalar(DomainPtr dom, long v) : Scalar(std::move(dom), mpq_class(v)) {}

    Scalar(DomainPtr dom, int v) : Scalar(std::move(dom), mpq_class(v)) {}

    /// Builds num/den in the given domain and canonicalizes.
    static Scalar from_polys(DomainPtr dom, Poly num, Poly den) {
        if (den.is_zero()) throw division_by_zero("zero denominator");
        Scalar s;
        s.dom_ = std::move(dom);
        switch (s.dom_->kind()) {
            case DomainKind::rational:
                if (!num.is_constant() || !den.is_constant())
                    throw domain_mismatch("rational domain has no generator");
                s.num_ = Poly::constant(num.constant_term() / den.constant_term());
                s.den_ = Poly::constant(1);
                break;
            case DomainKind::number_field: {
                if (!den.is_constant()) {
                    Scalar d = from_polys(s.dom_, std::move(den), Poly::constant(1));
                    return from_polys(s.dom_, std::move(num), Poly::constant(1)) * d.inverse();
                }
                const mpq_class inv_den = 1 / den.constant_term();
                s.num_ = (inv_den * num) % s.dom_->min_poly();
                s.den_ = Poly::constant(1);
                break;
            }
            case DomainKind::rational_function: {
                if (num.is_zero()) {
                    s.num_ = Poly{};
                    s.den_ = Poly::constant(1);
                    break;
                }
                const Poly g = gcd(num, den);
                Poly n = exact_div(num, g);
                Poly d = exact_div(den, g);
                const mpq_class inv_lc = 1 / d.leading();
                s.num_ = inv_lc * n;
                s.den_ = inv_lc * d;
                break;
            }
        }
        return s;
    }

    static Scalar generator(const DomainPtr& dom) {
        if (dom->kind() == DomainKind::rational) throw domain_mismatch("rational domain has no generator");
        return from_polys(dom, Poly::monomial(1, 1), Poly::constant(1));
    }

    static Scalar zero(const DomainPtr& dom) { return Scalar(dom, 0); }
    static Scalar one(const DomainPtr& dom) { return Scalar(dom, 1); }

    const DomainPtr& domain() const noexcept { return dom_; }
    const Poly& num() const noexcept { return num_; }
    const Poly& den() const noexcept { return den_; }

    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_one() const { return den_.is_constant() && num_.is_constant() && num_.constant_term() == 1; }

    /// True when the value is a rational constant (no generator dependence).
    bool is_rational() const noexcept { return num_.is_constant() && den_.is_constant(); }

    std::optional<mpq_class> rational_value() const {
        if (!is_rational()) return std::nullopt;
        return num_.constant_term();
    }

    bool is_rational_integer() const {
        auto v = rational_value();
        return v && v->get_den() == 1;
    }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return same_domain(*a.dom_, *b.dom_) && a.num_ == b.num_ && a.den_ == b.den_;
    }

    Scalar operator-() const {
        Scalar r = *this;
        r.num_ = -r.num_;
        return r;
    }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        check_same(a, b);
        if (a.dom_->kind() != DomainKind::rational_function) {
            Scalar r = a;
            r.num_ = a.num_ + b.num_;
            return r;
        }
        if (a.den_ == b.den_) return from_polys(a.dom_, a.num_ + b.num_, a.den_);
        return from_polys(a.dom_, a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }

    friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        check_same(a, b);
        if (a.is_zero() || b.is_zero()) return zero(a.dom_);
        switch (a.dom_->kind()) {
            case DomainKind::rational: {
                Scalar r = a;
                r.num_ = Poly::constant(a.num_.constant_term() * b.num_.constant_term());
                return r;
            }
            case DomainKind::number_field: {
                Scalar r = a;
                r.num_ = (a.num_ * b.num_) % a.dom_->min_poly();
                return r;
            }
            case DomainKind::rational_function: break;
        }
        return from_polys(a.dom_, a.num_ * b.num_, a.den_ * b.den_);
    }

    friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

    Scalar inverse() const {
        if (is_zero()) throw division_by_zero("inversion of zero");
        switch (dom_->kind()) {
            case DomainKind::rational: {
                Scalar r = *this;
                r.num_ = Poly::constant(1 / num_.constant_term());
                return r;
            }
            case DomainKind::number_field: {
                auto [g, s] = inverse_mod(num_, dom_->min_poly());
                if (g.degree() != 0)
                    throw division_by_zero("zero divisor: minimal polynomial is reducible");
                Scalar r = *this;
                r.num_ = std::move(s);
                return r;
            }
            case DomainKind::rational_function: break;
        }
        return from_polys(dom_, den_, num_);
    }

    Scalar pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        Scalar result = one(dom_), base = *this;
        while (e > 0) {
            if (e & 1) result *= base;
            e >>= 1;
            if (e) base *= base;
        }
        return result;
    }

    /// Exact sign. Number fields refine the designated root until the value's
    /// interval excludes zero; parameter fields decide only from coefficient
    /// signs under the positivity assumption.
    Sign sign() const {
        if (is_zero()) return Sign::zero;
        switch (dom_->kind()) {
            case DomainKind::rational: return sign_of(num_.constant_term());
            case DomainKind::number_field: return number_field_sign();
            case DomainKind::rational_function: break;
        }
        const auto ns = coefficient_sign(num_);
        const auto ds = coefficient_sign(den_);
        if (!ns || !ds)
            throw indeterminate_sign("sign of a parameter-field element depends on the parameter value");
        return (*ns == *ds) ? Sign::positive : Sign::negative;
    }

    /// Sign with a fallback: parameter-field elements whose sign is not
    /// decidable are evaluated exactly at `sample` (default: the domain sample).
    Sign sign_or_sample(const std::optional<mpq_class>& sample) const {
        if (dom_->kind() != DomainKind::rational_function) return sign();
        if (is_zero()) return Sign::zero;
        try {
            return sign();
        } catch (const indeterminate_sign&) {
            const auto at = sample ? sample : dom_->default_sample();
            if (!at) throw;
            return sign_of(substitute_value(*at));
        }
    }

    /// Exact value of a parameter-field element at a rational parameter value.
    mpq_class substitute_value(const mpq_class& value) const {
        if (dom_->kind() == DomainKind::number_field)
            throw domain_mismatch("cannot substitute into a number-field element");
        const mpq_class d = den_.evaluate(value);
        if (d == 0) throw division_by_zero("denominator vanishes at the substituted parameter value");
        return num_.evaluate(value) / d;
    }

    /// Double approximation; parameter-field elements use `sample` or the domain default.
    double to_double(const std::optional<mpq_class>& sample = std::nullopt) const {
        switch (dom_->kind()) {
            case DomainKind::rational: return num_.constant_term().get_d();
            case DomainKind::number_field: {
                auto [lo, hi] = dom_->root_interval(dyadic_width(96));
                mpf_class x(mpq_class((lo + hi) / 2), 192);
                mpf_class v = num_.evaluate(x);
                return v.get_d();
            }
            case DomainKind::rational_function: break;
        }
        const auto& s = sample ? sample : dom_->default_sample();
        if (!s) throw input_error("no parameter sample available for numeric evaluation");
        return substitute_value(*s).get_d();
    }

    /// Decimal approximation with `digits` digits after the decimal point.
    std::string eval_numeric(int digits, const std::optional<mpq_class>& sample = std::nullopt) const {
        if (digits < 1) digits = 1;
        const unsigned long bits = static_cast<unsigned long>(digits * 3.33) + 96;
        mpf_class value(0, bits);
        switch (dom_->kind()) {
            case DomainKind::rational: value = mpf_class(num_.constant_term(), bits); break;
            case DomainKind::number_field: {
                mpz_class scale;
                mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits) + 20);
                auto [lo, hi] = dom_->root_interval(mpq_class(1, scale));
                mpf_class x(mpq_class((lo + hi) / 2), bits);
                value = num_.evaluate(x);
                break;
            }
            case DomainKind::rational_function: {
                const auto& s = sample ? sample : dom_->default_sample();
                if (!s) throw input_error("no parameter sample available for numeric evaluation");
                value = mpf_class(substitute_value(*s), bits);
                break;
            }
        }
        std::vector<char> buf(static_cast<std::size_t>(digits) + 64 + 4 * bits);
        gmp_snprintf(buf.data(), buf.size(), "%.*Ff", digits, value.get_mpf_t());
        std::string out(buf.data());
        if (out.rfind("-0.", 0) == 0 && out.find_first_not_of("-0.") == std::string::npos) out.erase(0, 1);
        return out;
    }

private:
    static void check_same(const Scalar& a, const Scalar& b) {
        if (!same_domain(*a.dom_, *b.dom_))
            throw domain_mismatch("operands belong to different scalar domains (" + a.dom_->kind_name() + ", " +
                                  b.dom_->kind_name() + ")");
    }

    std::optional<Sign> coefficient_sign(const Poly& p) const {
        if (p.is_constant()) return sign_of(p.constant_term());
        if (!dom_->parameter_positive()) return std::nullopt;
        if (p.nonnegative_coefficients()) return Sign::positive;
        if (p.nonpositive_coefficients()) return Sign::negative;
        return std::nullopt;
    }

    Sign number_field_sign() const {
        auto [lo, hi] = dom_->root_interval(dyadic_width(64));
        for (int step = 0; step < 100000; ++step) {
            auto [vlo, vhi] = num_.evaluate_interval(lo, hi);
            if (sgn(vlo) > 0) return Sign::positive;
            if (sgn(vhi) < 0) return Sign::negative;
            if (lo == hi) break;
            dom_->bisect(lo, hi);
        }
        throw indeterminate_sign("sign refinement did not terminate (reducible minimal polynomial?)");
    }

    DomainPtr dom_;
    Poly num_;
    Poly den_;
};

}  // namespace quasifold
