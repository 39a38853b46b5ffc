#include "ddstream/synth_graphs.hpp"

#include <random>
#include <stdexcept>
#include <string>

#include "ddstream/rswr_sampler.hpp"

namespace ddstream {

namespace {

void push(std::vector<EdgeEvent>& out, std::size_t tail, std::size_t head) {
    out.push_back({static_cast<NodeId>(tail), static_cast<NodeId>(head), out.size(), std::nullopt});
}

void require(bool ok, const char* message) {
    if (!ok) throw std::invalid_argument(message);
}

}  // namespace

std::vector<EdgeEvent> star(std::size_t leaves) {
    require(leaves >= 1, "star: need at least one leaf");
    std::vector<EdgeEvent> out;
    for (std::size_t i = 1; i <= leaves; ++i) push(out, i, 0);
    return out;
}

std::vector<EdgeEvent> cycle(std::size_t n) {
    require(n >= 1, "cycle: size must be >= 1");
    std::vector<EdgeEvent> out;
    for (std::size_t i = 0; i < n; ++i) push(out, i, (i + 1) % n);
    return out;
}

std::vector<EdgeEvent> path(std::size_t n) {
    require(n >= 1, "path: size must be >= 1");
    std::vector<EdgeEvent> out;
    for (std::size_t i = 0; i + 1 < n; ++i) push(out, i, i + 1);
    return out;
}

std::vector<EdgeEvent> two_tier_hub(std::size_t leaves, std::size_t max_leaf_degree) {
    require(leaves >= 1, "two-tier-hub: need at least one leaf");
    require(max_leaf_degree >= 1, "two-tier-hub: max leaf degree must be >= 1");
    std::vector<EdgeEvent> out;
    for (std::size_t i = 1; i <= leaves; ++i) push(out, i, 0);
    std::size_t next_feeder = leaves + 1;
    for (std::size_t j = 0; j < leaves; ++j) {
        std::size_t degree = leaves == 1 ? max_leaf_degree
                                         : 1 + j * (max_leaf_degree - 1) / (leaves - 1);
        for (std::size_t r = 0; r < degree; ++r) push(out, next_feeder++, j + 1);
    }
    return out;
}

std::vector<EdgeEvent> heavy_tail(std::size_t n, std::size_t edges_per_node, std::uint64_t seed) {
    require(n >= 1, "heavy-tail: size must be >= 1");
    require(edges_per_node >= 1, "heavy-tail: edges per node must be >= 1");
    Rng rng(seed);
    std::vector<EdgeEvent> out;
    out.reserve((n - 1) * edges_per_node);
    // Each node appears once, plus once per in-edge received.
    std::vector<NodeId> urn;
    urn.reserve(n + (n - 1) * edges_per_node);
    urn.push_back(0);
    for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t r = 0; r < edges_per_node; ++r) {
            std::uniform_int_distribution<std::size_t> pick(0, urn.size() - 1);
            NodeId target = urn[pick(rng)];
            push(out, i, target);
            urn.push_back(target);
        }
        urn.push_back(static_cast<NodeId>(i));
    }
    return out;
}

std::vector<EdgeEvent> generate(const GeneratorSpec& spec) {
    switch (spec.kind) {
        case GraphKind::kStar: return star(spec.size);
        case GraphKind::kCycle: return cycle(spec.size);
        case GraphKind::kPath: return path(spec.size);
        case GraphKind::kTwoTierHub: return two_tier_hub(spec.size, spec.max_degree);
        case GraphKind::kHeavyTail: return heavy_tail(spec.size, spec.edges_per_node, spec.seed);
    }
    throw std::invalid_argument("generate: unknown kind");
}

GraphKind parse_graph_kind(std::string_view name) {
    if (name == "star") return GraphKind::kStar;
    if (name == "cycle") return GraphKind::kCycle;
    if (name == "path") return GraphKind::kPath;
    if (name == "two-tier-hub") return GraphKind::kTwoTierHub;
    if (name == "heavy-tail") return GraphKind::kHeavyTail;
    throw std::invalid_argument("unknown graph kind '" + std::string(name) + "'");
}

}  // namespace ddstream
