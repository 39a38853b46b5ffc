#include "ddstream/icm_simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ddstream {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

bool edge_live(std::uint64_t run_key, std::size_t edge, double lambda) {
    std::uint64_t h = splitmix64(run_key ^ splitmix64(edge));
    double u = static_cast<double>(h >> 11) * 0x1.0p-53;
    return u < lambda;
}

std::size_t distinct_count(std::span<const NodeId> seeds) {
    std::vector<NodeId> sorted(seeds.begin(), seeds.end());
    std::sort(sorted.begin(), sorted.end());
    return static_cast<std::size_t>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    return splitmix64(splitmix64(a) ^ (b + 0x632be59bd9b4e019ULL));
}

CascadeSimulator::CascadeSimulator(const StaticGraph& g, Orientation orientation) {
    const std::size_t n = g.node_count();
    offsets_.assign(n + 1, 0);
    if (orientation == Orientation::kHeadToTail) {
        for (NodeId u = 0; u < n; ++u) offsets_[u + 1] = offsets_[u] + g.in_degree(u);
        targets_.reserve(offsets_[n]);
        for (NodeId u = 0; u < n; ++u) {
            auto nbrs = g.in_neighbors(u);
            targets_.insert(targets_.end(), nbrs.begin(), nbrs.end());
        }
    } else {
        for (NodeId u = 0; u < n; ++u) {
            for (NodeId t : g.in_neighbors(u)) ++offsets_[t + 1];
        }
        for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] += offsets_[i];
        targets_.resize(offsets_[n]);
        auto fill = offsets_;
        for (NodeId u = 0; u < n; ++u) {
            for (NodeId t : g.in_neighbors(u)) targets_[fill[t]++] = u;
        }
    }
}

std::size_t CascadeSimulator::run_once(std::span<const NodeId> seeds, double lambda,
                                       std::uint64_t run_key, std::vector<std::uint32_t>& stamp,
                                       std::uint32_t epoch, std::vector<NodeId>& frontier,
                                       std::vector<NodeId>& next) const {
    frontier.clear();
    std::size_t active = 0;
    for (NodeId s : seeds) {
        if (stamp[s] == epoch) continue;
        stamp[s] = epoch;
        frontier.push_back(s);
        ++active;
    }
    while (!frontier.empty()) {
        next.clear();
        for (NodeId u : frontier) {
            for (std::size_t e = offsets_[u]; e < offsets_[u + 1]; ++e) {
                NodeId v = targets_[e];
                if (stamp[v] == epoch) continue;
                if (!edge_live(run_key, e, lambda)) continue;
                stamp[v] = epoch;
                next.push_back(v);
                ++active;
            }
        }
        frontier.swap(next);
    }
    return active;
}

SpreadReport CascadeSimulator::simulate(std::span<const NodeId> seeds, double lambda,
                                        std::size_t runs, std::uint64_t seed) const {
    if (runs < 1) throw std::invalid_argument("simulate: runs must be >= 1");
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw std::invalid_argument("simulate: lambda must lie in [0, 1]");
    }
    const std::size_t n = node_count();
    for (NodeId s : seeds) {
        if (s >= n) throw std::out_of_range("simulate: unknown seed node " + std::to_string(s));
    }

    SpreadReport report;
    report.seed_set_size = distinct_count(seeds);
    report.per_run.reserve(runs);
    std::vector<std::uint32_t> stamp(n, 0);
    std::vector<NodeId> frontier;
    std::vector<NodeId> next;
    std::uint32_t epoch = 0;
    for (std::size_t r = 0; r < runs; ++r) {
        if (++epoch == 0) {
            std::fill(stamp.begin(), stamp.end(), 0);
            epoch = 1;
        }
        report.per_run.push_back(
            run_once(seeds, lambda, mix_seed(seed, r), stamp, epoch, frontier, next));
    }

    double sum = 0.0;
    for (auto v : report.per_run) sum += static_cast<double>(v);
    report.mean_spread = sum / static_cast<double>(runs);
    if (runs > 1) {
        double ss = 0.0;
        for (auto v : report.per_run) {
            double d = static_cast<double>(v) - report.mean_spread;
            ss += d * d;
        }
        report.std_spread = std::sqrt(ss / static_cast<double>(runs - 1));
    }
    return report;
}

SpreadReport simulate(const StaticGraph& g, std::span<const NodeId> seeds,
                      const CascadeConfig& cfg) {
    return CascadeSimulator(g, cfg.orientation).simulate(seeds, cfg.lambda, cfg.runs, cfg.seed);
}

std::vector<NamedSpread> compare_seed_sets(const StaticGraph& g,
                                           std::span<const NamedSeedSet> sets,
                                           const CascadeConfig& cfg, bool coupled) {
    CascadeSimulator sim(g, cfg.orientation);
    std::vector<NamedSpread> out;
    out.reserve(sets.size());
    for (std::size_t i = 0; i < sets.size(); ++i) {
        auto seed = coupled ? cfg.seed : mix_seed(cfg.seed, i);
        out.push_back({sets[i].name, sim.simulate(sets[i].seeds, cfg.lambda, cfg.runs, seed)});
    }
    return out;
}

}  // namespace ddstream
