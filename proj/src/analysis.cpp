#include "ddstream/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ddstream/icm_simulator.hpp"

namespace ddstream {

namespace {

bool hoeffding_holds(std::size_t q, double epsilon, double delta) {
    return 2.0 * std::exp(-2.0 * static_cast<double>(q) * epsilon * epsilon) <= delta;
}

}  // namespace

std::size_t q_for(double epsilon, double delta) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("q_for: epsilon not in (0,1)");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("q_for: delta not in (0,1)");
    auto q = static_cast<std::size_t>(
        std::max(1.0, std::ceil(std::log(2.0 / delta) / (2.0 * epsilon * epsilon))));
    // Pin the ceiling against the inequality itself so rounding in log/ceil
    // cannot leave q off by one.
    while (q > 1 && hoeffding_holds(q - 1, epsilon, delta)) --q;
    while (!hoeffding_holds(q, epsilon, delta)) ++q;
    return q;
}

double allowed_violation_rate(double delta, std::size_t trials) {
    return delta + 3.0 * std::sqrt(delta * (1.0 - delta) / static_cast<double>(trials));
}

std::vector<EdgeEvent> replay_events(const StaticGraph& g) {
    std::vector<EdgeEvent> out;
    out.reserve(g.edge_count());
    for (NodeId u = 0; u < g.node_count(); ++u) {
        for (NodeId t : g.in_neighbors(u)) out.push_back({t, u, out.size(), std::nullopt});
    }
    return out;
}

std::vector<BoundCheckResult> hoeffding_validate(std::span<const EdgeEvent> events,
                                                 const StaticGraph& g,
                                                 std::span<const NodeId> nodes,
                                                 const BoundParams& params) {
    if (params.trials < 1000) throw std::invalid_argument("hoeffding_validate: trials must be >= 1000");
    const std::size_t q = q_for(params.epsilon, params.delta);

    std::vector<BoundCheckResult> results;
    results.reserve(nodes.size());
    for (NodeId u : nodes) {
        BoundCheckResult r;
        r.node = u;
        r.q_used = q;
        r.epsilon = params.epsilon;
        r.delta = params.delta;
        r.trials = params.trials;
        r.bounds = neighbor_degree_bounds(g, u);
        r.degree = g.in_degree(u);
        r.exact = exact_dd(g, u, params.lambda);
        r.degenerate = r.bounds.min == r.bounds.max;
        r.bound_per_node[u] = params.epsilon *
                              static_cast<double>(r.bounds.max - r.bounds.min) *
                              static_cast<double>(r.degree) * params.lambda;
        results.push_back(std::move(r));
    }

    for (std::size_t t = 0; t < params.trials; ++t) {
        AdjSketch sketch({q, params.lambda, mix_seed(params.base_seed, t), SketchMode::kUniform});
        for (const auto& e : events) sketch.next(e);
        for (auto& r : results) {
            const double err = std::abs(sketch.query(r.node) - r.exact);
            r.max_abs_error = std::max(r.max_abs_error, err);
            if (r.degenerate) {
                if (err > 0.0) ++r.degenerate_nonzero_errors;
            } else if (err > r.bound_per_node[r.node]) {
                ++r.violations;
            }
        }
    }
    for (auto& r : results) {
        r.empirical_rate = static_cast<double>(r.violations) / static_cast<double>(r.trials);
    }
    return results;
}

BoundCheckResult hoeffding_validate(std::span<const EdgeEvent> events, const StaticGraph& g,
                                    NodeId u, const BoundParams& params) {
    return hoeffding_validate(events, g, std::span<const NodeId>(&u, 1), params).front();
}

BoundCheckResult hoeffding_validate(const StaticGraph& g, NodeId u, const BoundParams& params) {
    auto events = replay_events(g);
    return hoeffding_validate(events, g, u, params);
}

ErrorReport mean_error(const StaticGraph& g, const AdjSketch& sketch,
                       std::span<const NodeId> nodes, double lambda) {
    ErrorReport report;
    if (nodes.empty()) return report;
    double total = 0.0;
    for (NodeId u : nodes) {
        const double err = std::abs(sketch.query(u, lambda) - exact_dd(g, u, lambda));
        report.per_node_abs_error[u] = err;
        total += err;
    }
    report.mean_error = total / static_cast<double>(nodes.size());
    return report;
}

SpaceReport space_accounting(std::size_t n, std::uint64_t m, std::size_t q) {
    SpaceReport r;
    r.n = n;
    r.m = m;
    r.q = q;
    r.d_in = n == 0 ? 0.0 : static_cast<double>(m) / static_cast<double>(n);
    r.sketch_cells = n + static_cast<std::uint64_t>(n) * (q + 1);
    r.full_graph_cells = n + m;
    r.advantage = r.sketch_cells < r.full_graph_cells;
    r.predicate = static_cast<double>(q) < r.d_in - 1.0;
    return r;
}

SpaceReport space_report(const AdjSketch& sketch, const StaticGraph& g) {
    auto r = space_accounting(g.node_count(), g.edge_count(), sketch.config().q);
    r.allocated_degree_cells = sketch.row_count();
    r.allocated_slot_cells = sketch.allocated_slot_cells();
    return r;
}

PhaseTimer::Scope::Scope(PhaseTimer& timer, std::string phase)
    : timer_(timer), phase_(std::move(phase)), start_(std::chrono::steady_clock::now()) {}

PhaseTimer::Scope::~Scope() {
    std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_;
    timer_.record(phase_, elapsed.count());
}

void PhaseTimer::record(const std::string& phase, double seconds) {
    auto it = std::find_if(phases_.begin(), phases_.end(),
                           [&](const PhaseTiming& p) { return p.phase == phase; });
    if (it == phases_.end()) {
        phases_.push_back({phase, seconds});
    } else {
        it->seconds += seconds;
    }
}

double PhaseTimer::seconds(const std::string& phase) const {
    for (const auto& p : phases_) {
        if (p.phase == phase) return p.seconds;
    }
    return 0.0;
}

}  // namespace ddstream
