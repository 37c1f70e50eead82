#pragma once

// Text grammar for scalars:
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := unary (('*'|'/') unary)*
//   unary  := '-' unary | factor
//   factor := base ('^' ['-'] integer)?
//   base   := integer | symbol | '(' expr ')'
// A rational literal "p/q" is read as a quotient of two integers.

#include <gmpxx.h>

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>

#include "quasifold/error.hpp"
#include "quasifold/poly.hpp"
#include "quasifold/scalar.hpp"

namespace quasifold {

namespace detail {

class ScalarParser {
public:
    ScalarParser(std::string_view text, DomainPtr dom) : text_(text), dom_(std::move(dom)) {}

    Scalar parse() {
        skip_ws();
        if (pos_ == text_.size()) throw parse_error("empty scalar expression", pos_);
        Scalar v = expr();
        skip_ws();
        if (pos_ != text_.size()) throw parse_error(std::string("unexpected character '") + text_[pos_] + "'", pos_);
        return v;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Scalar expr() {
        Scalar acc = term();
        for (;;) {
            if (accept('+'))
                acc += term();
            else if (accept('-'))
                acc -= term();
            else
                return acc;
        }
    }

    Scalar term() {
        Scalar acc = unary();
        for (;;) {
            if (accept('*')) {
                acc *= unary();
            } else if (accept('/')) {
                const std::size_t at = pos_;
                Scalar d = unary();
                if (d.is_zero()) throw division_by_zero("division by zero at position " + std::to_string(at));
                acc /= d;
            } else {
                return acc;
            }
        }
    }

    Scalar unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return factor();
    }

    Scalar factor() {
        Scalar b = base();
        if (accept('^')) {
            const bool negative = accept('-');
            skip_ws();
            const std::size_t at = pos_;
            const mpz_class e = integer();
            if (abs(e) > 100000) throw parse_error("exponent too large", at);
            if (negative && b.is_zero()) throw division_by_zero("negative power of zero at position " + std::to_string(at));
            const long k = e.get_si();
            b = b.pow(negative ? -k : k);
        }
        return b;
    }

    Scalar base() {
        skip_ws();
        if (pos_ >= text_.size()) throw parse_error("unexpected end of expression", pos_);
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Scalar v = expr();
            if (!accept(')')) throw parse_error("expected ')'", pos_);
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return Scalar(dom_, mpq_class(integer()));
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            const std::string name(text_.substr(start, pos_ - start));
            if (dom_->kind() == DomainKind::rational || name != dom_->symbol())
                throw parse_error("symbol '" + name + "' does not belong to the " + dom_->kind_name() + " domain",
                                  start);
            return Scalar::generator(dom_);
        }
        throw parse_error(std::string("unexpected character '") + c + "'", pos_);
    }

    mpz_class integer() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) throw parse_error("expected an integer", pos_);
        return mpz_class(std::string(text_.substr(start, pos_ - start)), 10);
    }

    std::string_view text_;
    DomainPtr dom_;
    std::size_t pos_ = 0;
};

inline std::string format_rational(const mpq_class& q) { return q.get_str(10); }

inline std::size_t term_count(const Poly& p) {
    std::size_t n = 0;
    for (const auto& c : p.coeffs())
        if (c != 0) ++n;
    return n;
}

/// Polynomial in `symbol`, highest degree first: "2*phi^2 - phi + 1/2".
inline std::string format_poly(const Poly& p, const std::string& symbol) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (std::size_t k = p.coeffs().size(); k-- > 0;) {
        const mpq_class& c = p.coeffs()[k];
        if (c == 0) continue;
        const bool negative = sgn(c) < 0;
        const mpq_class mag = abs(c);
        std::string body;
        if (k == 0) {
            body = format_rational(mag);
        } else {
            if (mag != 1) body = format_rational(mag) + "*";
            body += symbol;
            if (k > 1) body += "^" + std::to_string(k);
        }
        if (first)
            out = (negative ? "-" : "") + body;
        else
            out += (negative ? " - " : " + ") + body;
        first = false;
    }
    return out;
}

}  // namespace detail

/// Reads a scalar in the given domain.
inline Scalar parse_scalar(std::string_view text, const DomainPtr& dom) {
    return detail::ScalarParser(text, dom).parse();
}

/// Canonical text of a scalar; parse_scalar(format_scalar(x)) == x.
inline std::string format_scalar(const Scalar& x) {
    const auto& sym = x.domain()->symbol();
    if (x.den().is_constant() && x.den().constant_term() == 1) return detail::format_poly(x.num(), sym);
    std::string n = detail::format_poly(x.num(), sym);
    std::string d = detail::format_poly(x.den(), sym);
    if (detail::term_count(x.num()) > 1) n = "(" + n + ")";
    if (detail::term_count(x.den()) > 1) d = "(" + d + ")";
    return n + "/" + d;
}

/// Short display form. Number-field elements whose reciprocal prints shorter
/// are written as "1/y" or "-1/y" (so 1/phi rather than phi - 1); everything
/// else uses the canonical text. The result always parses back to x.
inline std::string display_scalar(const Scalar& x) {
    std::string best = format_scalar(x);
    if (x.domain()->kind() != DomainKind::number_field || x.is_zero() || x.is_rational()) return best;
    const Scalar inv = x.inverse();
    const bool negative = inv.sign() == Sign::negative;
    const Scalar mag = negative ? -inv : inv;
    std::string d = format_scalar(mag);
    if (detail::term_count(mag.num()) > 1 || d.find('*') != std::string::npos || d.find('/') != std::string::npos)
        d = "(" + d + ")";
    std::string alt = (negative ? "-1/" : "1/") + d;
    if (alt.size() < best.size()) best = std::move(alt);
    return best;
}

/// True when a display string is a single token, optionally negated
/// ("a", "-a", "2", "-1"), so it can follow "^" without parentheses.
inline bool is_atomic_text(const std::string& s) {
    std::size_t i = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isalnum(static_cast<unsigned char>(s[i])) && s[i] != '_') return false;
    return true;
}

}  // namespace quasifold
