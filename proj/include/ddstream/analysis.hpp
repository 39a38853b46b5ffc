#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ddstream/dds_sketch.hpp"
#include "ddstream/exact_oracle.hpp"

namespace ddstream {

/// Smallest q with 2*exp(-2*q*eps^2) <= delta, i.e. ceil(ln(2/delta) / (2 eps^2)).
/// Throws std::invalid_argument unless eps and delta lie in (0, 1).
std::size_t q_for(double epsilon, double delta);

/// Violation rate allowed by the sampling contract: delta + 3*sqrt(delta(1-delta)/trials).
double allowed_violation_rate(double delta, std::size_t trials);

struct BoundParams {
    double epsilon = 0.3;
    double delta = 0.1;
    std::size_t trials = 1000;
    double lambda = 0.1;
    std::uint64_t base_seed = 0;
};

struct BoundCheckResult {
    NodeId node = kNoNode;
    std::size_t q_used = 0;
    double epsilon = 0.0;
    double delta = 0.0;
    std::size_t trials = 0;
    std::size_t violations = 0;
    double empirical_rate = 0.0;
    /// node -> eps * (b_u - a_u) * d_u * lambda
    std::map<NodeId, double> bound_per_node;
    DegreeBounds bounds;
    std::uint64_t degree = 0;
    double exact = 0.0;
    double max_abs_error = 0.0;
    /// a_u == b_u: the radius is 0, the node is left out of the rate and
    /// trials with any nonzero error are counted separately.
    bool degenerate = false;
    std::size_t degenerate_nonzero_errors = 0;

    [[nodiscard]] bool within_contract() const {
        return degenerate || empirical_rate <= allowed_violation_rate(delta, trials);
    }
};

/// Builds `trials` sketches over `events` (q = q_for(eps, delta), trial t seeded
/// from (base_seed, t)) and counts, per node, the trials where
/// |estimate - exact| > eps * (b_u - a_u) * d_u * lambda.
///
/// Throws std::invalid_argument for trials < 1000 and std::domain_error for
/// nodes with no in-neighbors.
std::vector<BoundCheckResult> hoeffding_validate(std::span<const EdgeEvent> events,
                                                 const StaticGraph& g,
                                                 std::span<const NodeId> nodes,
                                                 const BoundParams& params);

BoundCheckResult hoeffding_validate(std::span<const EdgeEvent> events, const StaticGraph& g,
                                    NodeId u, const BoundParams& params);

/// Same check, replaying g's edges grouped by head.
BoundCheckResult hoeffding_validate(const StaticGraph& g, NodeId u, const BoundParams& params);

/// g's edges as a stream, heads in id order, each head's in-neighbors in
/// insertion order.
std::vector<EdgeEvent> replay_events(const StaticGraph& g);

struct ErrorReport {
    std::map<NodeId, double> per_node_abs_error;
    /// Mean over the requested list; empty when the list is empty.
    std::optional<double> mean_error;
};

ErrorReport mean_error(const StaticGraph& g, const AdjSketch& sketch,
                       std::span<const NodeId> nodes, double lambda);

struct SpaceReport {
    std::size_t n = 0;
    std::uint64_t m = 0;
    std::size_t q = 0;
    double d_in = 0.0;
    /// Idealized accounting: n + n(q+1) against n + m.
    std::uint64_t sketch_cells = 0;
    std::uint64_t full_graph_cells = 0;
    bool advantage = false;
    /// q < d_in - 1; must agree with `advantage`.
    bool predicate = false;
    /// What the sketch actually holds: one degree cell per allocated row
    /// plus q slot cells per allocated row.
    std::uint64_t allocated_degree_cells = 0;
    std::uint64_t allocated_slot_cells = 0;
};

SpaceReport space_accounting(std::size_t n, std::uint64_t m, std::size_t q);
SpaceReport space_report(const AdjSketch& sketch, const StaticGraph& g);

struct PhaseTiming {
    std::string phase;
    double seconds = 0.0;
};

/// Wall-clock phase durations on a monotonic clock. Re-entering a phase adds
/// to its total; phases keep first-entry order.
class PhaseTimer {
public:
    class Scope {
    public:
        Scope(PhaseTimer& timer, std::string phase);
        Scope(const Scope&) = delete;
        Scope& operator=(const Scope&) = delete;
        ~Scope();

    private:
        PhaseTimer& timer_;
        std::string phase_;
        std::chrono::steady_clock::time_point start_;
    };

    Scope scope(std::string phase) { return Scope(*this, std::move(phase)); }
    void record(const std::string& phase, double seconds);
    [[nodiscard]] const std::vector<PhaseTiming>& phases() const noexcept { return phases_; }
    [[nodiscard]] double seconds(const std::string& phase) const;

private:
    std::vector<PhaseTiming> phases_;
};

}  // namespace ddstream
