#include "ddstream/exact_oracle.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ddstream {

StaticGraph StaticGraph::build(std::span<const EdgeEvent> events, std::size_t node_count) {
    StaticGraph g;
    g.reserve_nodes(node_count);
    for (const auto& e : events) g.add(e);
    return g;
}

void StaticGraph::reserve_nodes(std::size_t n) {
    if (n > in_adj_.size()) in_adj_.resize(n);
}

void StaticGraph::add(const EdgeEvent& event) {
    if (event.tail == kNoNode || event.head == kNoNode) {
        throw std::invalid_argument("graph: invalid node id");
    }
    reserve_nodes(std::size_t{std::max(event.tail, event.head)} + 1);
    in_adj_[event.head].push_back(event.tail);
    ++edge_count_;
}

std::span<const NodeId> StaticGraph::in_neighbors(NodeId u) const noexcept {
    if (u >= in_adj_.size()) return {};
    return in_adj_[u];
}

std::uint64_t StaticGraph::in_degree(NodeId u) const noexcept {
    return u < in_adj_.size() ? in_adj_[u].size() : 0;
}

double exact_dd(const StaticGraph& g, NodeId u, double lambda) {
    std::uint64_t total = g.in_degree(u);
    for (NodeId i : g.in_neighbors(u)) total += g.in_degree(i);
    return lambda * static_cast<double>(total);
}

DegreeBounds neighbor_degree_bounds(const StaticGraph& g, NodeId u) {
    auto nbrs = g.in_neighbors(u);
    if (nbrs.empty()) {
        throw std::domain_error("node " + std::to_string(u) +
                                " has no in-neighbors; degree bounds undefined");
    }
    DegreeBounds b{g.in_degree(nbrs.front()), g.in_degree(nbrs.front())};
    for (NodeId i : nbrs) {
        b.min = std::min(b.min, g.in_degree(i));
        b.max = std::max(b.max, g.in_degree(i));
    }
    return b;
}

std::vector<RankedNode> exact_topk(const StaticGraph& g, std::size_t k, double lambda) {
    std::vector<RankedNode> ranked;
    ranked.reserve(g.node_count());
    for (NodeId u = 0; u < g.node_count(); ++u) ranked.push_back({u, exact_dd(g, u, lambda)});
    const auto keep = std::min(k, ranked.size());
    std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(keep),
                      ranked.end(), ranks_before);
    ranked.resize(keep);
    return ranked;
}

}  // namespace ddstream
