#include <gtest/gtest.h>

#include <random>

#include "quasifold/poly.hpp"

using quasifold::Poly;

namespace {

Poly random_poly(std::mt19937_64& rng, int max_deg) {
    std::uniform_int_distribution<int> deg(0, max_deg), c(-6, 6), q(1, 4);
    std::vector<mpq_class> v;
    for (int i = 0, k = deg(rng); i <= k; ++i) v.push_back(mpq_class(c(rng), q(rng)));
    return Poly(v);
}

}  // namespace

TEST(Poly, TrimsAndReportsDegree) {
    EXPECT_EQ(Poly({1, 2, 0, 0}).degree(), 1);
    EXPECT_TRUE(Poly({0, 0}).is_zero());
    EXPECT_EQ(Poly().degree(), -1);
    EXPECT_EQ(Poly::monomial(3, 4).coeff(4), 3);
}

TEST(Poly, Arithmetic) {
    const Poly x{0, 1};
    const Poly p = x * x - x - Poly::constant(1);
    EXPECT_EQ(p, Poly({-1, -1, 1}));
    EXPECT_EQ((x + Poly::constant(1)) * (x - Poly::constant(1)), Poly({-1, 0, 1}));
    EXPECT_EQ(mpq_class(1, 2) * Poly({2, 4}), Poly({1, 2}));
}

TEST(Poly, DivmodReconstructs) {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 300; ++t) {
        const Poly a = random_poly(rng, 6);
        Poly b = random_poly(rng, 3);
        if (b.is_zero()) continue;
        const auto [q, r] = divmod(a, b);
        EXPECT_EQ(q * b + r, a);
        EXPECT_LT(r.degree(), b.degree() == 0 ? 0 : b.degree());
    }
}

TEST(Poly, GcdDividesBothAndIsMonic) {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 200; ++t) {
        const Poly common = random_poly(rng, 2);
        const Poly a = common * random_poly(rng, 3), b = common * random_poly(rng, 3);
        if (a.is_zero() || b.is_zero()) continue;
        const Poly g = gcd(a, b);
        EXPECT_TRUE(g.is_monic());
        EXPECT_TRUE((a % g).is_zero());
        EXPECT_TRUE((b % g).is_zero());
        if (!common.is_zero()) EXPECT_TRUE((g % common.monic()).is_zero());
    }
}

TEST(Poly, InverseModuloIrreducible) {
    const Poly m{-1, -1, 1};  // x^2 - x - 1
    std::mt19937_64 rng(3);
    for (int t = 0; t < 100; ++t) {
        const Poly a = random_poly(rng, 1);
        if (a.is_zero()) continue;
        const auto [g, s] = inverse_mod(a, m);
        EXPECT_EQ(g, Poly::constant(1));
        EXPECT_EQ((s * a) % m, Poly::constant(1));
    }
}

TEST(Poly, EvaluationAndIntervalEnclosure) {
    const Poly p{-1, -1, 1};
    EXPECT_EQ(p.evaluate(mpq_class(2)), 1);
    EXPECT_DOUBLE_EQ(p.evaluate(2.0), 1.0);
    const auto [lo, hi] = p.evaluate_interval(mpq_class(3, 2), mpq_class(2));
    for (const mpq_class x : {mpq_class(3, 2), mpq_class(7, 4), mpq_class(2)}) {
        EXPECT_LE(lo, p.evaluate(x));
        EXPECT_GE(hi, p.evaluate(x));
    }
}

TEST(Poly, CoefficientSigns) {
    EXPECT_TRUE(Poly({1, 0, 2}).nonnegative_coefficients());
    EXPECT_FALSE(Poly({1, -1}).nonnegative_coefficients());
    EXPECT_TRUE(Poly({-1, 0, -3}).nonpositive_coefficients());
}
