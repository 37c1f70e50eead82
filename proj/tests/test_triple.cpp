#include <gtest/gtest.h>

#include <map>

#include "support.hpp"

using namespace qtest;

TEST(Triple, GalleryEntriesValidate) {
    for (const auto& name : gallery_names()) {
        const auto prepared = prepare(load_gallery(name));
        const auto rep = validate(prepared.triple);
        EXPECT_TRUE(rep.ok()) << name;
        for (const auto& c : rep.checks) EXPECT_TRUE(c.passed) << name << ": " << c.name << " " << c.detail;
        EXPECT_EQ(rep.witnesses.size(), prepared.triple.ray_count());
    }
}

TEST(Triple, DependentRaysFailSimpliciality) {
    auto t = rational_fan({{1, 0}, {2, 0}, {0, 1}, {-1, -1}}, {{1, 2}, {2, 3}, {3, 4}, {1, 4}});
    const auto rep = validate(t);
    EXPECT_FALSE(rep.ok());
    const auto* s = rep.find("simpliciality");
    ASSERT_NE(s, nullptr);
    EXPECT_FALSE(s->passed);
    EXPECT_NE(s->detail.find("{1,2}"), std::string::npos);
}

TEST(Triple, WrongConeSizeAndUnusedRay) {
    auto t = rational_fan({{1, 0}, {0, 1}, {-1, -1}, {5, 7}}, {{1, 2}, {2, 3}, {1, 3}});
    const auto rep = validate(t);
    const auto* s = rep.find("simpliciality");
    EXPECT_FALSE(s->passed);
    EXPECT_NE(s->detail.find("ray 4"), std::string::npos);
    t.fan.max_cones.push_back({1, 2, 3});
    EXPECT_FALSE(validate(t).find("simpliciality")->passed);
}

TEST(Triple, WitnessRecoveryFindsShortestCombination) {
    auto t = gallery_triple("quasisphere");
    t.witnesses.assign(2, std::nullopt);
    EXPECT_EQ(ray_membership(t, 1), (Witness{0, 1}));
    EXPECT_EQ(ray_membership(t, 2), (Witness{-1, 0}));
}

TEST(Triple, BadWitnessIsRejected) {
    auto t = gallery_triple("dodecahedron");
    t.witnesses[3] = Witness{1, 0, 0, 0, 0, 0};
    EXPECT_THROW(ray_membership(t, 4), quasifold::no_witness_found);
    EXPECT_FALSE(validate(t).find("quasirationality")->passed);
}

TEST(Triple, NonQuasirationalRayReportsRationalSolution) {
    const auto g = golden();
    FundamentalTriple t;
    t.fan.dim = 1;
    t.fan.rays = {{S(g, "1/2")}, {S(g, "-1")}};
    t.fan.max_cones = {{1}, {2}};
    t.lattice.generators = Mat::from_columns(g, {{S(g, "1")}, {S(g, "phi")}}, 1);
    t.witnesses.resize(2);
    try {
        ray_membership(t, 1);
        FAIL();
    } catch (const quasifold::no_witness_found& e) {
        EXPECT_NE(std::string(e.what()).find("m1 = 1/2"), std::string::npos) << e.what();
    }
    EXPECT_FALSE(validate(t).ok());
}

TEST(Triple, DodecahedronAdjacencyAgainstTable) {
    // Oracle: shared-index counts straight from the table of index sets.
    std::map<std::size_t, std::size_t> oracle;
    const auto& rows = dodecahedron_table();
    for (std::size_t a = 0; a < rows.size(); ++a)
        for (std::size_t b = a + 1; b < rows.size(); ++b) ++oracle[cone_intersection(rows[a].cone, rows[b].cone).size()];
    EXPECT_EQ(oracle[1], 60u);
    EXPECT_EQ(oracle[2], 30u);
    EXPECT_EQ(oracle[0], 100u);

    std::map<std::size_t, std::size_t> got;
    std::size_t disjoint = 0;
    for (const auto& p : cone_adjacency(gallery_triple("dodecahedron"))) {
        ++got[p.shared.size()];
        if (p.disjoint) ++disjoint;
        EXPECT_EQ(p.h, 3 - p.shared.size());
    }
    EXPECT_EQ(got, oracle);
    EXPECT_EQ(disjoint, oracle[0]);
}

TEST(Triple, SupportProbeFindsGapsAndOverlaps) {
    // Missing cone: the third quadrant is uncovered.
    auto gap = rational_fan({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}, {{1, 2}, {2, 3}, {1, 4}});
    const auto r1 = validate(gap);
    EXPECT_TRUE(r1.ok());  // advisory only
    EXPECT_GT(r1.probe.gaps, 0u);
    EXPECT_FALSE(r1.find("support_probe")->passed);
    EXPECT_TRUE(r1.find("support_probe")->advisory);

    auto overlap = rational_fan({{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {1, 1}}, {{1, 2}, {2, 3}, {3, 4}, {1, 4}, {1, 5}});
    EXPECT_GT(validate(overlap).probe.overlaps, 0u);
}

TEST(Triple, ProbeIsDeterministicPerSeed) {
    auto gap = rational_fan({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}, {{1, 2}, {2, 3}, {1, 4}});
    ValidationOptions o;
    o.seed = 42;
    EXPECT_EQ(validate(gap, o).probe.gaps, validate(gap, o).probe.gaps);
}
