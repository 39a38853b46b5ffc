#include <gtest/gtest.h>

#include "ddstream/exact_oracle.hpp"
#include "ddstream/synth_graphs.hpp"
#include "test_util.hpp"

using namespace ddstream;

namespace {

EdgeEvent edge(NodeId t, NodeId h) { return {t, h, 0, std::nullopt}; }

}  // namespace

TEST(ExactOracle, StarCenter) {
    auto g = StaticGraph::build(star(3));
    EXPECT_NEAR(exact_dd(g, 0, 0.1), 0.3, 1e-15);
    for (NodeId leaf = 1; leaf <= 3; ++leaf) EXPECT_EQ(exact_dd(g, leaf, 0.1), 0.0);
}

TEST(ExactOracle, ThreeCycle) {
    auto g = StaticGraph::build(cycle(3));
    for (NodeId u = 0; u < 3; ++u) EXPECT_NEAR(exact_dd(g, u, 0.1), 0.2, 1e-15);
}

TEST(ExactOracle, IsolatedAndUnknownNodes) {
    auto g = StaticGraph::build(std::vector<EdgeEvent>{edge(0, 1)}, 5);
    EXPECT_EQ(g.node_count(), 5u);
    EXPECT_EQ(exact_dd(g, 4, 0.1), 0.0);
    EXPECT_EQ(exact_dd(g, 1000, 0.1), 0.0);
    EXPECT_EQ(g.in_degree(1000), 0u);
    EXPECT_TRUE(g.in_neighbors(1000).empty());
}

TEST(ExactOracle, MultigraphCountsParallelEdges) {
    // Two parallel 0->1 edges; node 0 has in-degree 1 from node 2.
    auto g = StaticGraph::build(std::vector<EdgeEvent>{edge(0, 1), edge(0, 1), edge(2, 0)});
    EXPECT_EQ(g.in_degree(1), 2u);
    EXPECT_NEAR(exact_dd(g, 1, 0.1), 0.1 * (2 + 1 + 1), 1e-15);
    // Self-loop contributes its own in-degree.
    auto s = StaticGraph::build(std::vector<EdgeEvent>{edge(3, 3)});
    EXPECT_NEAR(exact_dd(s, 3, 0.5), 0.5 * (1 + 1), 1e-15);
}

TEST(ExactOracle, LinearInLambda) {
    auto g = StaticGraph::build(ddstream::testing::random_stream(20, 100, 3));
    for (NodeId u = 0; u < 20; ++u) {
        EXPECT_EQ(exact_dd(g, u, 0.0), 0.0);
        EXPECT_NEAR(exact_dd(g, u, 0.4), 4.0 * exact_dd(g, u, 0.1), 1e-12);
    }
}

TEST(ExactOracle, NeighborDegreeBounds) {
    // u=0 <- {1 (deg 3), 2 (deg 1)}
    std::vector<EdgeEvent> ev{edge(1, 0), edge(2, 0), edge(3, 1), edge(4, 1), edge(5, 1), edge(6, 2)};
    auto g = StaticGraph::build(ev);
    EXPECT_EQ(neighbor_degree_bounds(g, 0), (DegreeBounds{1, 3}));
    EXPECT_THROW((void)neighbor_degree_bounds(g, 3), std::domain_error);

    auto hub = StaticGraph::build(two_tier_hub(8, 6));
    EXPECT_EQ(neighbor_degree_bounds(hub, 0), (DegreeBounds{1, 6}));

    // A node whose in-neighbors all share degree 5 or 2.
    std::vector<EdgeEvent> flat;
    for (NodeId t = 10; t < 15; ++t) flat.push_back(edge(t, 1));
    flat.push_back(edge(1, 0));
    auto f = StaticGraph::build(flat);
    EXPECT_EQ(neighbor_degree_bounds(f, 0), (DegreeBounds{5, 5}));
    auto c = StaticGraph::build(std::vector<EdgeEvent>{edge(1, 0), edge(2, 0), edge(3, 1), edge(4, 1),
                                                       edge(5, 2), edge(6, 2)});
    EXPECT_EQ(neighbor_degree_bounds(c, 0), (DegreeBounds{2, 2}));
}

TEST(ExactOracle, TopkOrderAndTies) {
    // Star with 3 leaves plus a 3-cycle on 4,5,6: scores 0.3, then 0.2 x3.
    auto ev = star(3);
    for (auto e : cycle(3)) ev.push_back(edge(e.tail + 4, e.head + 4));
    auto g = StaticGraph::build(ev);
    auto top = exact_topk(g, 3, 0.1);
    ASSERT_EQ(top.size(), 3u);
    EXPECT_EQ(top[0].node, 0u);
    EXPECT_EQ(top[1].node, 4u);
    EXPECT_EQ(top[2].node, 5u);
    EXPECT_EQ(exact_topk(g, 100, 0.1).size(), g.node_count());
    EXPECT_TRUE(exact_topk(g, 0, 0.1).empty());
}

TEST(ExactOracle, TopkIsSortedPrefix) {
    auto g = StaticGraph::build(heavy_tail(300, 3, 7));
    auto all = exact_topk(g, g.node_count(), 0.1);
    auto top = exact_topk(g, 25, 0.1);
    ASSERT_EQ(top.size(), 25u);
    for (std::size_t i = 0; i < top.size(); ++i) EXPECT_EQ(top[i], all[i]);
    for (std::size_t i = 1; i < all.size(); ++i) EXPECT_FALSE(ranks_before(all[i], all[i - 1]));
}

TEST(ExactOracle, IncrementalAddMatchesBuild) {
    auto ev = ddstream::testing::random_stream(15, 70, 1);
    StaticGraph inc;
    for (const auto& e : ev) inc.add(e);
    auto g = StaticGraph::build(ev);
    EXPECT_EQ(inc.edge_count(), g.edge_count());
    for (NodeId u = 0; u < 15; ++u) EXPECT_EQ(exact_dd(inc, u, 0.1), exact_dd(g, u, 0.1));
}
