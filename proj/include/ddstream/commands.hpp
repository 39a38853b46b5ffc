#pragma once

// Library side of the `ddstream` command-line tool. Each cmd_* reads its
// input, writes its outputs under out_dir and returns what it wrote, so the
// pipeline can be driven from tests and bindings without a subprocess.
//
// CSV conventions: comma separated, one header row, '\n' line ends, labels
// quoted only when they contain a comma or quote. Reals use the shortest
// decimal form that round-trips to the same double.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ddstream/analysis.hpp"
#include "ddstream/graph_stream.hpp"
#include "ddstream/icm_simulator.hpp"
#include "ddstream/synth_graphs.hpp"
#include "ddstream/topk_tracker.hpp"

namespace ddstream::cmd {

/// Bad arguments (exit code 1). Everything else thrown is a data error (2).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Slot budget request: a fixed q, "d_in-2" (average in-degree minus two,
/// needs a counting pass), or an (epsilon, delta) pair.
struct QSetting {
    std::optional<std::size_t> fixed;
    bool from_avg_in_degree = false;
    std::optional<double> epsilon;
    std::optional<double> delta;
};

/// Accepts a positive integer or the literal "d_in-2".
QSetting parse_q(std::string_view text);

/// Throws UsageError unless exactly one form is given. d_in-2 resolves to
/// max(1, floor(m/n - 2)).
std::size_t resolve_q(const QSetting& setting, const StreamCounts& counts);
[[nodiscard]] bool needs_counts(const QSetting& setting);

struct CommonArgs {
    std::filesystem::path input;
    StreamOptions stream;
    double lambda = 0.1;
    std::uint64_t seed = 1;
    std::filesystem::path out_dir = ".";
    Orientation orientation = Orientation::kHeadToTail;
};

/// Writes sketch.snapshot, estimates.csv (node,degree,estimate), sketch.json.
struct SketchArgs : CommonArgs {
    QSetting q;
};
struct SketchOutcome {
    std::size_t q = 0;
    std::vector<std::filesystem::path> written;
};
SketchOutcome cmd_sketch(const SketchArgs& args, std::ostream& log);

/// Writes exact.csv (node,degree,dd).
std::vector<std::filesystem::path> cmd_exact(const CommonArgs& args, std::ostream& log);

/// Writes topk.csv (method,round,k,rank,node,score). DD rows use round 0;
/// DDS round r runs the tracker with sketch seed `seed + r`.
struct TopkArgs : CommonArgs {
    QSetting q;
    std::vector<std::size_t> k_list;
    std::size_t rounds = 1;
    MembershipLookup lookup = MembershipLookup::kIndexed;
};
std::vector<std::filesystem::path> cmd_topk(const TopkArgs& args, std::ostream& log);

/// Writes simulate.json and simulate.csv (run,spread).
struct SimulateArgs : CommonArgs {
    std::vector<std::string> seeds;
    std::size_t runs = 1000;
};
SpreadReport cmd_simulate(const SimulateArgs& args, std::ostream& log);

/// Writes spread_vs_k.csv (k,method,mean_spread,std_spread),
/// mean_error_vs_k.csv (k,mean_error), seeds.csv (k,method,round,rank,node,score),
/// experiment.json and timing.json. The CSVs depend only on the input and
/// seeds; wall-clock data goes to timing.json alone. Nothing is left behind
/// when a step fails.
struct ExperimentSpec : CommonArgs {
    QSetting q;
    std::vector<std::size_t> k_list;
    std::size_t icm_runs = 1000;
    std::size_t rounds = 5;
};

struct ExperimentRow {
    std::size_t k = 0;
    SpreadReport dd;
    SpreadReport dds;  // per-run spreads pooled over rounds
    double mean_error = 0.0;  // averaged over rounds
    std::vector<RankedNode> dd_seeds;
    std::vector<std::vector<RankedNode>> dds_seeds;  // one list per round
};

struct ExperimentResult {
    std::size_t q = 0;
    std::size_t node_count = 0;
    std::uint64_t edge_count = 0;
    std::vector<ExperimentRow> rows;
    PhaseTimer timing;
};

/// Validates spec (k-list non-empty and strictly ascending, rounds and runs
/// >= 1) and runs the pipeline on an already-parsed stream.
ExperimentResult run_experiment(const EdgeList& input, const ExperimentSpec& spec);
ExperimentResult cmd_experiment(const ExperimentSpec& spec, std::ostream& log);

/// Writes bound.csv and bound.json. No nodes means every node with an
/// in-edge.
struct BoundArgs : CommonArgs {
    double epsilon = 0.3;
    double delta = 0.1;
    std::size_t trials = 1000;
    std::vector<std::string> nodes;
};
std::vector<BoundCheckResult> cmd_validate_bound(const BoundArgs& args, std::ostream& log);

/// Writes space.json.
struct SpaceArgs : CommonArgs {
    QSetting q;
};
SpaceReport cmd_space_report(const SpaceArgs& args, std::ostream& log);

/// Writes a synthetic stream in edge-list format.
void cmd_generate(const GeneratorSpec& spec, const std::filesystem::path& output);

Orientation parse_orientation(std::string_view text);
Delimiter parse_delimiter(std::string_view text);

std::string csv_field(std::string_view text);

}  // namespace ddstream::cmd
