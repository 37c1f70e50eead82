#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "support.hpp"

using namespace qtest;

namespace {

std::vector<DomainPtr> all_domains() { return {ScalarDomain::rational(), golden(), kite_field(), param()}; }

/// Independent root oracle: plain rational bisection of x^2 - x - 1 on [1, 2].
mpq_class golden_by_bisection(int steps) {
    mpq_class lo = 1, hi = 2;
    for (int i = 0; i < steps; ++i) {
        const mpq_class mid = (lo + hi) / 2;
        if (mid * mid - mid - 1 < 0) lo = mid; else hi = mid;
    }
    return (lo + hi) / 2;
}

}  // namespace

TEST(Scalar, GoldenRootMatchesBisectionOracle) {
    const auto d = golden();
    const mpq_class oracle = golden_by_bisection(80);
    const mpq_class width = dyadic_width(70);
    const auto [lo, hi] = d->root_interval(width);
    EXPECT_LT(lo * lo - lo - 1, 0);
    EXPECT_GT(hi * hi - hi - 1, 0);
    EXPECT_LE(hi - lo, width);
    EXPECT_LE(abs(oracle - lo), width);
    EXPECT_EQ(Scalar::generator(d).eval_numeric(12), "1.618033988750");
    EXPECT_NEAR(d->root_double(), 1.6180339887498949, 1e-15);
}

TEST(Scalar, KiteRootIsSqrtTwoPlusPhi) {
    const auto d = kite_field();
    EXPECT_NEAR(d->root_double(), std::sqrt(2.0 + (1 + std::sqrt(5.0)) / 2), 1e-14);
    const Scalar alpha = Scalar::generator(d);
    const Scalar phi = alpha * alpha - Scalar(d, 2);
    EXPECT_EQ(phi * phi, phi + Scalar::one(d));
    EXPECT_EQ(phi.inverse(), alpha * alpha - Scalar(d, 3));
}

TEST(Scalar, RejectsEmbeddingFarFromRoot) {
    EXPECT_THROW(ScalarDomain::number_field(Poly{-1, -1, 1}, "phi", mpq_class(40)), quasifold::error);
}

TEST(Scalar, FieldAxiomsOnRandomElements) {
    for (const auto& d : all_domains()) {
        std::mt19937_64 rng(2024);
        for (int t = 0; t < 1000; ++t) {
            const Scalar x = random_scalar(rng, d), y = random_scalar(rng, d), z = random_scalar(rng, d);
            ASSERT_EQ((x + y) + z, x + (y + z)) << d->kind_name();
            ASSERT_EQ(x + y, y + x);
            ASSERT_EQ((x * y) * z, x * (y * z));
            ASSERT_EQ(x * y, y * x);
            ASSERT_EQ(x * (y + z), x * y + x * z);
            ASSERT_EQ(x - x, Scalar::zero(d));
            if (!x.is_zero()) ASSERT_EQ(x * x.inverse(), Scalar::one(d));
        }
    }
}

TEST(Scalar, ParseFormatRoundTrip) {
    for (const auto& d : all_domains()) {
        std::mt19937_64 rng(99);
        for (int t = 0; t < 1000; ++t) {
            const Scalar x = random_scalar(rng, d);
            ASSERT_EQ(parse_scalar(format_scalar(x), d), x) << format_scalar(x);
            ASSERT_EQ(parse_scalar(display_scalar(x), d), x) << display_scalar(x);
        }
    }
}

TEST(Scalar, CanonicalText) {
    const auto g = golden();
    const auto a = param();
    EXPECT_EQ(format_scalar(S(g, "1/phi")), "phi - 1");
    EXPECT_EQ(display_scalar(S(g, "1/phi")), "1/phi");
    EXPECT_EQ(display_scalar(S(g, "-1/phi")), "-1/phi");
    EXPECT_EQ(format_scalar(S(g, "phi^2")), "phi + 1");
    EXPECT_EQ(format_scalar(S(g, "phi/2")), "1/2*phi");
    EXPECT_EQ(format_scalar(S(a, "-1/a")), "-1/a");
    EXPECT_EQ(format_scalar(S(a, "(a+1)/(a^2-2)")), "(a + 1)/(a^2 - 2)");
    EXPECT_EQ(format_scalar(S(a, "(a^2 - 1)/(a - 1)")), "a + 1");
    EXPECT_EQ(format_scalar(S(ScalarDomain::rational(), "-6/4")), "-3/2");
}

TEST(Scalar, GrammarCoversUnaryMinusAndNegativePowers) {
    const auto g = golden();
    EXPECT_EQ(S(g, "phi^-1"), S(g, "phi - 1"));
    EXPECT_EQ(S(g, "-(phi)^-2"), -(S(g, "phi").pow(2).inverse()));
    EXPECT_EQ(S(g, "2*phi + 1/3"), Scalar(g, 2) * Scalar::generator(g) + Scalar(g, mpq_class(1, 3)));
    EXPECT_EQ(S(g, "  phi*phi  "), S(g, "phi+1"));
}

TEST(Scalar, ParseErrorsCarryPosition) {
    const auto g = golden();
    try {
        parse_scalar("phi + ", g);
        FAIL();
    } catch (const quasifold::parse_error& e) {
        EXPECT_EQ(e.position(), 6u);
    }
    EXPECT_THROW(parse_scalar("a + 1", g), quasifold::parse_error);
    EXPECT_THROW(parse_scalar("phi ^ 1/2 )", g), quasifold::parse_error);
    EXPECT_THROW(parse_scalar("1/(phi - phi)", g), quasifold::division_by_zero);
    EXPECT_THROW(parse_scalar("phi^100001", g), quasifold::parse_error);
}

TEST(Scalar, DomainsDoNotMix) {
    EXPECT_THROW(S(golden(), "phi") + S(param(), "a"), quasifold::domain_mismatch);
    EXPECT_THROW(Scalar::zero(golden()).inverse(), quasifold::division_by_zero);
}

TEST(Scalar, NumberFieldSignsAgreeWithFloatingPoint) {
    for (const auto& d : {golden(), kite_field()}) {
        std::mt19937_64 rng(5);
        for (int t = 0; t < 500; ++t) {
            const Scalar x = random_scalar(rng, d);
            const double v = x.to_double();
            if (std::abs(v) < 1e-9) continue;
            EXPECT_EQ(x.sign(), v > 0 ? Sign::positive : Sign::negative) << format_scalar(x);
        }
    }
    const auto g = golden();
    EXPECT_EQ((S(g, "phi") - Scalar(g, mpq_class(1618, 1000))).sign(), Sign::positive);
    EXPECT_EQ((S(g, "phi") - Scalar(g, mpq_class(1619, 1000))).sign(), Sign::negative);
    EXPECT_EQ(Scalar::zero(g).sign(), Sign::zero);
}

TEST(Scalar, ParameterSigns) {
    const auto a = param();
    EXPECT_EQ(S(a, "a").sign(), Sign::positive);
    EXPECT_EQ(S(a, "-a/(a+1)").sign(), Sign::negative);
    EXPECT_EQ(S(a, "(a^2 + 1)/(a + 3)").sign(), Sign::positive);
    EXPECT_THROW(S(a, "a - 1").sign(), quasifold::indeterminate_sign);
    EXPECT_EQ(S(a, "a - 1").sign_or_sample(std::nullopt), Sign::positive);  // default sample 1.414...
    EXPECT_EQ(S(a, "a - 1").sign_or_sample(mpq_class(1, 2)), Sign::negative);
    EXPECT_EQ(S(a, "a^2 - 1").substitute_value(2), 3);
}
