#include <gtest/gtest.h>

#include "support.hpp"

using namespace qtest;
using namespace quasifold::numeric;

namespace {

TrialConfig quick(std::uint64_t seed = 1, std::size_t samples = 40) {
    TrialConfig cfg;
    cfg.seed = seed;
    cfg.samples = samples;
    return cfg;
}

TrialConfig faulty(std::size_t row, std::size_t col) {
    TrialConfig cfg = quick(7, 100);
    cfg.fault = Fault{row, col, 1e-3};
    cfg.stop_on_failure = true;
    return cfg;
}

}  // namespace

TEST(Verify, GalleryPassesEveryCheck) {
    for (const auto& name : gallery_names()) {
        const auto t = gallery_triple(name);
        const auto s = verify_all(t, quick(3, name == "dodecahedron" ? 10 : 40));
        ASSERT_EQ(s.checks.size(), 4u);
        for (const auto& c : s.checks) {
            EXPECT_TRUE(c.ok()) << name << " " << c.check << ": "
                                << (c.failures.empty() ? "" : c.failures.front().detail);
            EXPECT_LT(c.max_deviation, 1e-9) << name << " " << c.check;
        }
    }
}

TEST(Verify, SeveralSeedsOnSmallExamples) {
    for (const std::string name : {"quasisphere", "cp2-11a", "kite"})
        for (std::uint64_t seed : {11u, 12u, 13u}) EXPECT_TRUE(verify_all(gallery_triple(name), quick(seed)).ok()) << name;
}

TEST(Verify, ProofElementSkipsDisjointCones) {
    const auto t = gallery_triple("quasisphere");
    const auto r = check_proof_group_element(t, {1}, {2}, quick());
    EXPECT_EQ(r.skipped, 1u);
    EXPECT_EQ(r.trials, 0u);
    EXPECT_TRUE(r.ok());
}

TEST(Verify, DeterministicPerSeed) {
    const auto t = gallery_triple("kite");
    auto cfg = quick(5);
    cfg.fault = Fault{0, 1, 1e-3};
    const auto a = check_transition_equivariance(t, {1, 4}, {2, 4}, cfg);
    const auto b = check_transition_equivariance(t, {1, 4}, {2, 4}, cfg);
    ASSERT_EQ(a.failures.size(), b.failures.size());
    for (std::size_t i = 0; i < a.failures.size(); ++i) {
        EXPECT_EQ(a.failures[i].seed, b.failures[i].seed);
        EXPECT_EQ(a.failures[i].deviation, b.failures[i].deviation);
    }
    EXPECT_EQ(a.max_deviation, b.max_deviation);
}

TEST(Verify, FaultInClassSourceIsDetected) {
    for (const std::string name : {"quasisphere", "cp2-11a", "kite"}) {
        const auto t = gallery_triple(name);
        const std::size_t n = t.dim(), cols = t.lattice.size() + t.ray_count() - n;
        for (const auto& cone : t.fan.max_cones)
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < cols; ++c)
                    EXPECT_FALSE(check_class_well_defined(t, cone, faulty(r, c)).ok())
                        << name << " {" << cone_label(cone) << "} (" << r << "," << c << ")";
    }
}

TEST(Verify, FaultInTransitionIsDetected) {
    for (const std::string name : {"quasisphere", "cp2-11a", "hirzebruch", "kite"}) {
        const auto t = gallery_triple(name);
        const std::size_t n = t.dim();
        for (const auto& from : t.fan.max_cones)
            for (const auto& to : t.fan.max_cones) {
                if (from == to) continue;
                for (std::size_t r = 0; r < n; ++r)
                    for (std::size_t c = 0; c < n; ++c) {
                        const auto cfg = faulty(r, c);
                        EXPECT_FALSE(check_transition_equivariance(t, from, to, cfg).ok()) << name;
                        if (cone_intersection(from, to).empty()) continue;
                        EXPECT_FALSE(check_proof_group_element(t, from, to, cfg).ok()) << name;
                    }
            }
    }
}

TEST(Verify, FaultInRelationsIsDetected) {
    for (const std::string name : {"quasisphere", "cp2-11a", "kite"}) {
        const auto t = gallery_triple(name);
        const std::size_t n = t.dim(), rels = t.ray_count() - n;
        for (const auto& cone : t.fan.max_cones)
            for (std::size_t r = 0; r < rels; ++r)
                for (std::size_t c = 0; c < n; ++c)
                    EXPECT_FALSE(check_lemma_decomposition(t, cone, faulty(r, c)).ok()) << name;
    }
}

TEST(Verify, FailuresCarryReproducibleSeeds) {
    const auto t = gallery_triple("cp2-11a");
    auto cfg = quick(9, 5);
    cfg.fault = Fault{1, 0, 1e-2};
    const auto r = check_transition_equivariance(t, {2, 3}, {1, 3}, cfg);
    ASSERT_FALSE(r.failures.empty());
    for (const auto& f : r.failures) {
        EXPECT_EQ(f.target, "{2,3}->{1,3}");
        EXPECT_TRUE(f.kind == "mismatch" || f.kind == "search_exhausted");
        EXPECT_GE(f.deviation, cfg.tolerance);
    }
}

TEST(Verify, InputErrors) {
    const auto t = gallery_triple("cp2-11a");
    auto bad = quick();
    bad.tolerance = 0;
    EXPECT_THROW(Verifier(t, bad), input_error);
    bad = quick();
    bad.samples = 0;
    EXPECT_THROW(Verifier(t, bad), input_error);
    bad = quick();
    bad.word_length = 0;
    EXPECT_THROW(Verifier(t, bad), input_error);
    bad = quick();
    bad.integer_box = 0;
    EXPECT_THROW(Verifier(t, bad), input_error);

    json j = json::parse(gallery_source("cp2-11a"));
    j["domain"].erase("default_sample");
    const auto t2 = prepare(parse_document(j)).triple;
    EXPECT_THROW(Verifier(t2, quick()), input_error);
    auto with = quick();
    with.parameter_sample = mpq_class(3, 2);
    EXPECT_NO_THROW(Verifier(t2, with));
}

TEST(Membership, HermiteSearchAgreesWithBruteForce) {
    // Golden-ratio chart of the dodecahedron: theta = C m for small m is a member;
    // theta shifted off the group is not.
    const auto t = gallery_triple("dodecahedron");
    const auto chart = build_chart(t, {1, 2, 3});
    const auto c = to_real(chart.gamma_raw, std::nullopt);
    std::vector<Witness> w;
    for (int j : chart.cone) w.push_back(*t.witnesses[static_cast<std::size_t>(j - 1)]);
    const GammaMembership gm(c, w, 4);
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 50; ++trial) {
        const auto m = random_word(rng, 6, 3);
        RVec theta(3, 0.0);
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t g = 0; g < 6; ++g) theta[i] += c[i][g] * static_cast<double>(m[g]);
            theta[i] = frac(theta[i]);
        }
        EXPECT_TRUE(gm.find(theta, 1e-9).found);
        EXPECT_TRUE(member_of_subgroup(theta, c, 3, 1e-9).first);
        RVec off = theta;
        off[trial % 3] += 1e-3;
        EXPECT_FALSE(gm.find(off, 1e-9).found);
    }
}

TEST(Membership, IntegerLatticeHasOneClass) {
    // C = identity on Z^2: every integer vector is a member, 1/2 is not.
    const RMat c = {{1, 0}, {0, 1}};
    const GammaMembership gm(c, {{1, 0}, {0, 1}}, 2);
    EXPECT_TRUE(gm.find({0.0, 0.0}, 1e-12).found);
    EXPECT_FALSE(gm.find({0.5, 0.0}, 1e-12).found);
    // Index-two sublattice: C = diag(1/2, 1) with witnesses 2 e1, e2.
    const GammaMembership half({{0.5, 0}, {0, 1}}, {{2, 0}, {0, 1}}, 2);
    EXPECT_TRUE(half.find({0.5, 0.0}, 1e-12).found);
    EXPECT_FALSE(half.find({0.25, 0.0}, 1e-12).found);
}

TEST(Numeric, SplitmixAndWords) {
    EXPECT_NE(splitmix(1), splitmix(2));
    std::mt19937_64 rng(1);
    for (int i = 0; i < 200; ++i) {
        const auto w = random_word(rng, 5, 3);
        std::int64_t l1 = 0;
        for (auto x : w) l1 += x < 0 ? -x : x;
        EXPECT_LE(l1, 3);
        std::int64_t v = 0;
        bump(rng, v);
        EXPECT_NE(v, 0);
    }
    const auto z = sample_log_point(rng, 4);
    for (const auto& x : z) {
        const double mod = std::abs(expi(x));
        EXPECT_GE(mod, 0.5 - 1e-12);
        EXPECT_LE(mod, 2.0 + 1e-12);
    }
}
