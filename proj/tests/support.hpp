#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "quasifold/quasifold.hpp"

namespace qtest {

using namespace quasifold;

inline DomainPtr golden() { return ScalarDomain::number_field(Poly{-1, -1, 1}, "phi", mpq_class(809, 500)); }

/// alpha = sqrt(2 + phi), alpha^4 - 5 alpha^2 + 5 = 0
inline DomainPtr kite_field() { return ScalarDomain::number_field(Poly{5, 0, -5, 0, 1}, "alpha", mpq_class(951, 500)); }

inline DomainPtr param() { return ScalarDomain::rational_function("a", parse_decimal("1.4142135623"), true); }

inline Scalar S(const DomainPtr& d, const std::string& text) { return parse_scalar(text, d); }

inline mpq_class random_rational(std::mt19937_64& rng, int num = 9, int den = 5) {
    std::uniform_int_distribution<int> n(-num, num), q(1, den);
    return mpq_class(n(rng), q(rng));
}

/// Random element of the domain: small coefficients, low degree; over Q(a) a
/// random ratio with a nonzero denominator.
inline Scalar random_scalar(std::mt19937_64& rng, const DomainPtr& d) {
    auto poly = [&](int max_deg) {
        std::uniform_int_distribution<int> deg(0, max_deg);
        std::vector<mpq_class> c;
        const int k = deg(rng);
        for (int i = 0; i <= k; ++i) c.push_back(random_rational(rng));
        return Poly(c);
    };
    switch (d->kind()) {
        case DomainKind::rational:
            return Scalar(d, random_rational(rng));
        case DomainKind::number_field:
            return Scalar::from_polys(d, poly(d->degree() - 1), Poly::constant(1));
        case DomainKind::rational_function: {
            Poly den = poly(2);
            while (den.is_zero()) den = poly(2);
            return Scalar::from_polys(d, poly(2), den);
        }
    }
    return Scalar();
}

inline Scalar random_nonzero(std::mt19937_64& rng, const DomainPtr& d) {
    Scalar s = random_scalar(rng, d);
    while (s.is_zero()) s = random_scalar(rng, d);
    return s;
}

}  // namespace qtest

namespace qtest {

/// The 20 maximal cones of the dodecahedron: vertex, fixed point, index set.
struct DodecahedronRow {
    const char* vertex[3];
    const char* fixed_point;
    Cone cone;
};

inline const std::vector<DodecahedronRow>& dodecahedron_table() {
    static const std::vector<DodecahedronRow> rows = {
        {{"-1", "-1", "-1"}, "[0:0:0:1:1:1:1:1:1:1:1:1]", {1, 2, 3}},
        {{"0", "-phi", "-1/phi"}, "[0:0:1:0:1:1:1:1:1:1:1:1]", {1, 2, 4}},
        {{"-phi", "-1/phi", "0"}, "[0:1:0:1:1:0:1:1:1:1:1:1]", {1, 3, 6}},
        {{"0", "-phi", "1/phi"}, "[0:1:1:0:1:1:1:1:1:1:0:1]", {1, 4, 11}},
        {{"-1", "-1", "1"}, "[0:1:1:1:1:0:1:1:1:1:0:1]", {1, 6, 11}},
        {{"-1/phi", "0", "-phi"}, "[1:0:0:1:0:1:1:1:1:1:1:1]", {2, 3, 5}},
        {{"1", "-1", "-1"}, "[1:0:1:0:1:1:1:1:1:1:1:0]", {2, 4, 12}},
        {{"1/phi", "0", "-phi"}, "[1:0:1:1:0:1:1:1:1:1:1:0]", {2, 5, 12}},
        {{"-1", "1", "-1"}, "[1:1:0:1:0:1:1:1:1:0:1:1]", {3, 5, 10}},
        {{"-phi", "1/phi", "0"}, "[1:1:0:1:1:0:1:1:1:0:1:1]", {3, 6, 10}},
        {{"1", "-1", "1"}, "[1:1:1:0:1:1:1:1:0:1:0:1]", {4, 9, 11}},
        {{"phi", "-1/phi", "0"}, "[1:1:1:0:1:1:1:1:0:1:1:0]", {4, 9, 12}},
        {{"0", "phi", "-1/phi"}, "[1:1:1:1:0:1:0:1:1:0:1:1]", {5, 7, 10}},
        {{"1", "1", "-1"}, "[1:1:1:1:0:1:0:1:1:1:1:0]", {5, 7, 12}},
        {{"-1", "1", "1"}, "[1:1:1:1:1:0:1:0:1:0:1:1]", {6, 8, 10}},
        {{"-1/phi", "0", "phi"}, "[1:1:1:1:1:0:1:0:1:1:0:1]", {6, 8, 11}},
        {{"1", "1", "1"}, "[1:1:1:1:1:1:0:0:0:1:1:1]", {7, 8, 9}},
        {{"0", "phi", "1/phi"}, "[1:1:1:1:1:1:0:0:1:0:1:1]", {7, 8, 10}},
        {{"phi", "1/phi", "0"}, "[1:1:1:1:1:1:0:1:0:1:1:0]", {7, 9, 12}},
        {{"1/phi", "0", "phi"}, "[1:1:1:1:1:1:1:0:0:1:0:1]", {8, 9, 11}},
    };
    return rows;
}

inline FundamentalTriple gallery_triple(const std::string& name) {
    return with_witnesses(prepare(load_gallery(name)).triple);
}

/// Fan over Q from integer ray coordinates with the standard lattice.
inline FundamentalTriple rational_fan(const std::vector<std::vector<long>>& rays, const std::vector<Cone>& cones) {
    const auto q = ScalarDomain::rational();
    FundamentalTriple t;
    const std::size_t n = rays.front().size();
    t.fan.dim = n;
    for (const auto& r : rays) {
        Vec v;
        for (long x : r) v.push_back(Scalar(q, x));
        t.fan.rays.push_back(v);
    }
    t.fan.max_cones = cones;
    t.lattice.generators = Mat::identity(q, n);
    t.witnesses.resize(rays.size());
    return t;
}

}  // namespace qtest

namespace quasifold {

inline void PrintTo(const Poly& p, std::ostream* os) { *os << detail::format_poly(p, "x"); }
inline void PrintTo(const Scalar& s, std::ostream* os) { *os << format_scalar(s); }
inline void PrintTo(const Vec& v, std::ostream* os) { *os << detail::format_point(v); }

}  // namespace quasifold
