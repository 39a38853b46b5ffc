#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "ddstream/graph_stream.hpp"

namespace ddstream {

enum class GraphKind { kStar, kCycle, kPath, kTwoTierHub, kHeavyTail };

/// Deterministic synthetic streams. Ids are dense; seq is the event index.
///
///  kStar(size=h):        leaves 1..h each send one edge to center 0.
///                        in-degree: center h, leaves 0.
///  kCycle(size=n):       i -> (i+1) mod n. Every node has in-degree 1.
///  kPath(size=n):        i -> i+1 for i < n-1. Node 0 in-degree 0, others 1.
///  kTwoTierHub(size=h, max_degree=b):
///                        hub 0 receives one edge from each leaf 1..h; leaf i
///                        (0-based j = i-1) receives 1 + floor(j*(b-1)/(h-1))
///                        edges from fresh feeder nodes (in-degree 0), so leaf
///                        in-degrees span [1, b]. Hub edges come first.
///  kHeavyTail(size=n, edges_per_node=m0, seed):
///                        nodes arrive in id order; each node i >= 1 sends m0
///                        edges i -> t, t drawn from [0, i) with probability
///                        proportional to (in-degree(t) + 1) at draw time.
///                        m0*(n-1) events; parallel edges allowed.
struct GeneratorSpec {
    GraphKind kind = GraphKind::kStar;
    std::size_t size = 1;
    std::size_t max_degree = 1;
    std::size_t edges_per_node = 1;
    std::uint64_t seed = 0;
};

/// Throws std::invalid_argument for size < 1 and kind-specific bad sizes.
std::vector<EdgeEvent> generate(const GeneratorSpec& spec);

std::vector<EdgeEvent> star(std::size_t leaves);
std::vector<EdgeEvent> cycle(std::size_t n);
std::vector<EdgeEvent> path(std::size_t n);
std::vector<EdgeEvent> two_tier_hub(std::size_t leaves, std::size_t max_leaf_degree);
std::vector<EdgeEvent> heavy_tail(std::size_t n, std::size_t edges_per_node, std::uint64_t seed);

GraphKind parse_graph_kind(std::string_view name);

}  // namespace ddstream
