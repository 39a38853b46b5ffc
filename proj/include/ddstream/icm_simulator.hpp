#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ddstream/exact_oracle.hpp"

namespace ddstream {

/// Which endpoint of a stream edge e(tail, head) attempts the other.
///  kHeadToTail: head attempts tail (the sketch's convention).
///  kTailToHead: tail attempts head ("follows" datasets).
enum class Orientation { kHeadToTail, kTailToHead };

struct CascadeConfig {
    double lambda = 0.1;
    std::size_t runs = 1;
    std::uint64_t seed = 0;
    Orientation orientation = Orientation::kHeadToTail;
};

struct SpreadReport {
    double mean_spread = 0.0;
    /// Sample standard deviation over runs (0 for a single run).
    double std_spread = 0.0;
    std::vector<std::size_t> per_run;
    std::size_t seed_set_size = 0;
};

/// Independent Cascade Monte Carlo over a fixed graph.
///
/// Rounds are synchronous: nodes activated in round t make their attempts in
/// round t+1, one attempt per incident edge (parallel edges attempt
/// separately), each succeeding with probability lambda. The coin of an edge
/// is a pure function of (seed, run, edge), so two seed sets simulated with
/// the same seed see the same live edges, and a run's result does not depend
/// on evaluation order.
class CascadeSimulator {
public:
    CascadeSimulator(const StaticGraph& g, Orientation orientation);

    /// Throws std::out_of_range for seeds outside the graph. Duplicate seeds
    /// count once.
    [[nodiscard]] SpreadReport simulate(std::span<const NodeId> seeds, double lambda,
                                        std::size_t runs, std::uint64_t seed) const;

    [[nodiscard]] std::size_t node_count() const noexcept { return offsets_.size() - 1; }

private:
    std::size_t run_once(std::span<const NodeId> seeds, double lambda, std::uint64_t run_key,
                         std::vector<std::uint32_t>& stamp, std::uint32_t epoch,
                         std::vector<NodeId>& frontier, std::vector<NodeId>& next) const;

    std::vector<std::size_t> offsets_;  // CSR over influence direction
    std::vector<NodeId> targets_;
};

SpreadReport simulate(const StaticGraph& g, std::span<const NodeId> seeds,
                      const CascadeConfig& cfg);

struct NamedSeedSet {
    std::string name;
    std::vector<NodeId> seeds;
};

struct NamedSpread {
    std::string name;
    SpreadReport report;
};

/// Simulates every set. By default set i runs under a seed derived from
/// (cfg.seed, i); with `coupled` all sets share cfg.seed and therefore the
/// same edge coins, which makes spreads monotone under seed-set inclusion.
std::vector<NamedSpread> compare_seed_sets(const StaticGraph& g,
                                           std::span<const NamedSeedSet> sets,
                                           const CascadeConfig& cfg, bool coupled = false);

/// SplitMix64 finalizer; used to derive independent sub-seeds.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

}  // namespace ddstream
