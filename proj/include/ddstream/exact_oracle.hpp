#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ddstream/graph_stream.hpp"

namespace ddstream {

/// Full in-adjacency of the stream seen so far (multigraph: parallel edges
/// and self-loops are kept). Ground truth only; memory is O(n + m).
class StaticGraph {
public:
    StaticGraph() = default;

    /// `node_count` reserves ids that may not appear in any event.
    static StaticGraph build(std::span<const EdgeEvent> events, std::size_t node_count = 0);

    void add(const EdgeEvent& event);
    void reserve_nodes(std::size_t n);

    [[nodiscard]] std::span<const NodeId> in_neighbors(NodeId u) const noexcept;
    [[nodiscard]] std::uint64_t in_degree(NodeId u) const noexcept;
    [[nodiscard]] std::size_t node_count() const noexcept { return in_adj_.size(); }
    [[nodiscard]] std::uint64_t edge_count() const noexcept { return edge_count_; }
    [[nodiscard]] bool contains(NodeId u) const noexcept { return u < in_adj_.size(); }

private:
    std::vector<std::vector<NodeId>> in_adj_;
    std::uint64_t edge_count_ = 0;
};

/// lambda * (d_u + sum over the in-neighbor multiset of their in-degrees).
/// Unknown nodes give 0.
double exact_dd(const StaticGraph& g, NodeId u, double lambda);

/// (a_u, b_u): min and max in-degree among u's in-neighbors.
struct DegreeBounds {
    std::uint64_t min = 0;
    std::uint64_t max = 0;
    friend bool operator==(const DegreeBounds&, const DegreeBounds&) = default;
};

/// Throws std::domain_error when u has no in-neighbors.
DegreeBounds neighbor_degree_bounds(const StaticGraph& g, NodeId u);

struct RankedNode {
    NodeId node = kNoNode;
    double score = 0.0;
    friend bool operator==(const RankedNode&, const RankedNode&) = default;
};

/// Orders by score descending, then node id ascending.
inline bool ranks_before(const RankedNode& a, const RankedNode& b) noexcept {
    return a.score != b.score ? a.score > b.score : a.node < b.node;
}

/// All nodes ranked by exact diffusion degree, truncated to min(k, n).
std::vector<RankedNode> exact_topk(const StaticGraph& g, std::size_t k, double lambda);

}  // namespace ddstream
