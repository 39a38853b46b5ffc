#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <thread>

#include "ddstream/analysis.hpp"
#include "ddstream/synth_graphs.hpp"
#include "test_util.hpp"

using namespace ddstream;

TEST(Analysis, QForKnownValues) {
    EXPECT_EQ(q_for(0.3, 0.1), 17u);
    EXPECT_EQ(q_for(0.999, 0.5), 1u);
    EXPECT_EQ(q_for(0.1, 0.05), 185u);
    EXPECT_THROW((void)q_for(0.0, 0.1), std::invalid_argument);
    EXPECT_THROW((void)q_for(0.3, 1.0), std::invalid_argument);
}

TEST(Analysis, QForIsTheSmallestSatisfyingValue) {
    for (double eps : {0.05, 0.1, 0.2, 0.3, 0.5, 0.8}) {
        for (double delta : {0.01, 0.05, 0.1, 0.3, 0.9}) {
            auto q = q_for(eps, delta);
            EXPECT_LE(2.0 * std::exp(-2.0 * q * eps * eps), delta);
            if (q > 1) EXPECT_GT(2.0 * std::exp(-2.0 * (q - 1) * eps * eps), delta);
        }
    }
}

TEST(Analysis, HalvingEpsilonRoughlyQuadruplesQ) {
    for (double eps : {0.05, 0.1, 0.2}) {
        const double ratio = static_cast<double>(q_for(eps / 2, 0.1)) / q_for(eps, 0.1);
        EXPECT_NEAR(ratio, 4.0, 4.0 / q_for(eps, 0.1) + 0.01);
    }
}

TEST(Analysis, AllowedViolationRate) {
    EXPECT_NEAR(allowed_violation_rate(0.1, 1000), 0.1 + 3 * std::sqrt(0.09 / 1000), 1e-15);
}

TEST(Analysis, HoeffdingValidationOnTwoTierHub) {
    auto ev = two_tier_hub(8, 6);
    auto g = StaticGraph::build(ev);
    BoundParams p;
    p.trials = 2000;
    auto r = hoeffding_validate(ev, g, NodeId{0}, p);
    EXPECT_EQ(r.q_used, 17u);
    EXPECT_EQ(r.bounds, (DegreeBounds{1, 6}));
    EXPECT_NEAR(r.exact, 3.3, 1e-12);
    EXPECT_NEAR(r.bound_per_node.at(0), 0.3 * 5 * 8 * 0.1, 1e-12);
    EXPECT_FALSE(r.degenerate);
    EXPECT_TRUE(r.within_contract());
    auto again = hoeffding_validate(ev, g, NodeId{0}, p);
    EXPECT_EQ(r.violations, again.violations);
    EXPECT_EQ(r.max_abs_error, again.max_abs_error);
}

TEST(Analysis, DegenerateNodesNeverErr) {
    // Each leaf of the hub graph has only degree-0 feeders: a == b.
    auto ev = two_tier_hub(8, 6);
    auto g = StaticGraph::build(ev);
    std::vector<NodeId> leaves{1, 2, 3, 4, 5, 6, 7, 8};
    auto rs = hoeffding_validate(ev, g, leaves, BoundParams{});
    for (const auto& r : rs) {
        EXPECT_TRUE(r.degenerate);
        EXPECT_EQ(r.violations, 0u);
        EXPECT_EQ(r.degenerate_nonzero_errors, 0u);
    }
}

TEST(Analysis, HoeffdingValidationErrors) {
    auto g = StaticGraph::build(star(3));
    BoundParams p;
    p.trials = 999;
    EXPECT_THROW((void)hoeffding_validate(g, 0, p), std::invalid_argument);
    EXPECT_THROW((void)hoeffding_validate(g, 1, BoundParams{}), std::domain_error);
}

TEST(Analysis, ReplayEventsRebuildsTheGraph) {
    auto g = StaticGraph::build(ddstream::testing::random_stream(12, 50, 2));
    auto h = StaticGraph::build(replay_events(g));
    for (NodeId u = 0; u < 12; ++u) EXPECT_EQ(exact_dd(g, u, 0.1), exact_dd(h, u, 0.1));
}

TEST(Analysis, MeanError) {
    auto ev = path(6);
    auto g = StaticGraph::build(ev);
    AdjSketch s({3, 0.1, 1, SketchMode::kUniform});
    for (const auto& e : ev) s.next(e);
    std::vector<NodeId> nodes{1, 2, 3, 4, 5};
    auto r = mean_error(g, s, nodes, 0.1);
    ASSERT_TRUE(r.mean_error);
    EXPECT_EQ(*r.mean_error, 0.0);
    EXPECT_FALSE(mean_error(g, s, {}, 0.1).mean_error);

    auto ht = heavy_tail(200, 4, 3);
    auto hg = StaticGraph::build(ht);
    AdjSketch hs({2, 0.1, 3, SketchMode::kUniform});
    for (const auto& e : ht) hs.next(e);
    std::vector<NodeId> all;
    for (NodeId u = 0; u < 200; ++u) all.push_back(u);
    auto hr = mean_error(hg, hs, all, 0.1);
    ASSERT_TRUE(hr.mean_error);
    EXPECT_GE(*hr.mean_error, 0.0);
    for (auto& [u, err] : hr.per_node_abs_error) EXPECT_GE(err, 0.0);
}

TEST(Analysis, SpaceAccountingExamples) {
    auto a = space_accounting(100, 1000, 8);
    EXPECT_EQ(a.sketch_cells, 100u + 900u);
    EXPECT_EQ(a.full_graph_cells, 1100u);
    EXPECT_TRUE(a.advantage);
    EXPECT_TRUE(a.predicate);
    auto b = space_accounting(100, 1000, 9);  // q = d_in - 1
    EXPECT_FALSE(b.advantage);
    EXPECT_FALSE(b.predicate);
    auto c = space_accounting(0, 0, 1);
    EXPECT_FALSE(c.advantage);
}

TEST(Analysis, SpaceAdvantageMatchesPredicate) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 2000; ++i) {
        std::size_t n = 1 + rng() % 500;
        std::uint64_t m = rng() % 20000;
        std::size_t q = 1 + rng() % 60;
        auto r = space_accounting(n, m, q);
        EXPECT_EQ(r.advantage, r.predicate) << n << " " << m << " " << q;
    }
}

TEST(Analysis, SpaceReportOfASketch) {
    auto ev = heavy_tail(100, 5, 1);
    auto g = StaticGraph::build(ev);
    AdjSketch s({2, 0.1, 1, SketchMode::kUniform});
    for (const auto& e : ev) s.next(e);
    auto r = space_report(s, g);
    EXPECT_EQ(r.n, 100u);
    EXPECT_EQ(r.m, 495u);
    EXPECT_EQ(r.allocated_degree_cells, s.row_count());
    EXPECT_LE(r.allocated_slot_cells, r.n * r.q);
}

TEST(Analysis, PhaseTimer) {
    PhaseTimer t;
    {
        auto s = t.scope("a");
        std::this_thread::sleep_for(std::chrono::milliseconds(2));
    }
    { auto s = t.scope("b"); }
    { auto s = t.scope("a"); }
    ASSERT_EQ(t.phases().size(), 2u);
    EXPECT_EQ(t.phases()[0].phase, "a");
    EXPECT_GE(t.seconds("a"), 0.002);
    EXPECT_GE(t.seconds("b"), 0.0);
    EXPECT_EQ(t.seconds("missing"), 0.0);
}
