#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "ddstream/graph_stream.hpp"
#include "ddstream/rswr_sampler.hpp"

namespace ddstream {

enum class SketchMode { kUniform, kWeighted };

struct SketchConfig {
    std::size_t q = 1;
    double lambda = 0.1;
    std::uint64_t seed = 0;
    SketchMode mode = SketchMode::kUniform;
};

/// Bounded-memory diffusion-degree sketch over an insert-only edge stream.
///
/// Per node u the sketch keeps an in-degree counter d_u and q sampled
/// in-neighbor slots (with replacement). Slots for a node are allocated on
/// its first in-edge, so a stream touching n distinct heads holds exactly
/// n*q slot cells. In weighted mode one extra real per node accumulates the
/// edge propagation probabilities.
///
/// The estimate for u is
///     lambda * (d_u + d_u / nCount * sum_{s in slots(u)} d_s)
/// where nCount counts non-null slots including duplicates. Its expectation
/// over the sampling randomness is the exact diffusion degree.
///
/// Mutation (next) needs a single writer; const queries may run concurrently
/// with each other but not with next.
class AdjSketch {
public:
    explicit AdjSketch(SketchConfig config);

    /// Processes e(tail, head): increments d_head, then samples tail into
    /// head's slots using the post-increment degree. Only head's row changes.
    /// Throws std::invalid_argument in weighted mode when the weight is absent.
    void next(const EdgeEvent& event);

    /// Estimate with the construction-time lambda. Unknown nodes give 0.
    [[nodiscard]] double query(NodeId u) const;
    /// Same estimate rescaled to another lambda (the state is lambda-free).
    [[nodiscard]] double query(NodeId u, double lambda) const;

    /// W_u + W_u / nCount * sum_{s in slots(u)} W_s, with W the per-node sum
    /// of in-edge propagation probabilities. Throws std::logic_error on a
    /// uniform-mode sketch.
    [[nodiscard]] double query_weighted(NodeId u) const;

    /// Number of row cells a query of u touches: the degree cell, then every
    /// slot cell, then the degree cell of each non-null slot. At most 2q+1.
    [[nodiscard]] std::size_t access_count_probe(NodeId u) const;

    [[nodiscard]] std::uint64_t degree(NodeId u) const noexcept;
    [[nodiscard]] double weight_sum(NodeId u) const noexcept;
    /// Empty span for nodes that never appeared as a head.
    [[nodiscard]] std::span<const NodeId> slots(NodeId u) const noexcept;

    /// Nodes with at least one in-edge (allocated rows).
    [[nodiscard]] std::size_t row_count() const noexcept { return row_count_; }
    [[nodiscard]] std::size_t allocated_slot_cells() const noexcept { return slot_pool_.size(); }
    [[nodiscard]] std::uint64_t events_processed() const noexcept { return events_; }
    [[nodiscard]] const SketchConfig& config() const noexcept { return config_; }

    /// FNV-1a over the full logical state, generator included.
    [[nodiscard]] std::uint64_t state_hash() const;

    /// Versioned text snapshot. Reals are hex floats, so load(save(s)) == s.
    void save(std::ostream& out) const;
    static AdjSketch load(std::istream& in);

    friend bool operator==(const AdjSketch& a, const AdjSketch& b);

private:
    static constexpr std::uint32_t kNoBlock = 0xffffffffU;

    struct Row {
        std::uint64_t degree = 0;
        std::uint32_t block = kNoBlock;  // slot_pool_[block*q, block*q + q)
    };

    template <class T>
    struct ScanResult {
        std::size_t n_count = 0;
        T sum{};
    };

    /// Walks u's slots exactly as a query does; `accesses` (optional)
    /// receives the number of row cells read.
    template <class T, class Value>
    ScanResult<T> scan(NodeId u, Value neighbor_value, std::size_t* accesses = nullptr) const;

    Row& row_for_update(NodeId u);

    SketchConfig config_;
    Rng rng_;
    std::vector<Row> rows_;
    std::vector<NodeId> slot_pool_;
    std::vector<double> weight_sums_;
    std::size_t row_count_ = 0;
    std::uint64_t events_ = 0;
};

}  // namespace ddstream
