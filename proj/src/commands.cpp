#include "ddstream/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "ddstream/dds_sketch.hpp"
#include "ddstream/exact_oracle.hpp"
#include "ddstream/format.hpp"

namespace ddstream::cmd {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Output {
    std::string name;
    std::string content;
};

std::vector<fs::path> write_outputs(const fs::path& dir, const std::vector<Output>& outputs) {
    fs::create_directories(dir);
    std::vector<fs::path> written;
    try {
        for (const auto& o : outputs) {
            auto p = dir / o.name;
            std::ofstream f(p, std::ios::binary | std::ios::trunc);
            written.push_back(p);
            f << o.content;
            f.close();
            if (!f) throw std::runtime_error("cannot write " + p.string());
        }
    } catch (...) {
        std::error_code ec;
        for (const auto& p : written) fs::remove(p, ec);
        throw;
    }
    return written;
}

std::string label_of(const NodeInterner& interner, NodeId id) {
    return id < interner.size() ? interner.resolve(id) : std::to_string(id);
}

const char* orientation_name(Orientation o) {
    return o == Orientation::kHeadToTail ? "head-to-tail" : "tail-to-head";
}

void validate_lambda(double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw UsageError("--lambda must lie in [0, 1]");
}

void validate_k_list(const std::vector<std::size_t>& k_list) {
    if (k_list.empty()) throw UsageError("--k-list must not be empty");
    for (std::size_t i = 0; i < k_list.size(); ++i) {
        if (k_list[i] < 1) throw UsageError("k must be >= 1");
        if (i > 0 && k_list[i] <= k_list[i - 1]) throw UsageError("--k-list must be ascending");
    }
}

struct LoadedGraph {
    EdgeList list;
    StaticGraph graph;
};

LoadedGraph load_graph(const CommonArgs& args) {
    LoadedGraph lg;
    lg.list = read_edge_list(args.input, args.stream);
    lg.graph = StaticGraph::build(lg.list.events, lg.list.interner.size());
    return lg;
}

std::vector<NodeId> nodes_of(const std::vector<RankedNode>& ranked) {
    std::vector<NodeId> out;
    out.reserve(ranked.size());
    for (const auto& r : ranked) out.push_back(r.node);
    return out;
}

SpreadReport pool(const std::vector<SpreadReport>& reports) {
    SpreadReport out;
    if (reports.empty()) return out;
    out.seed_set_size = reports.front().seed_set_size;
    for (const auto& r : reports) {
        out.per_run.insert(out.per_run.end(), r.per_run.begin(), r.per_run.end());
        out.seed_set_size = std::min(out.seed_set_size, r.seed_set_size);
    }
    double sum = 0.0;
    for (auto v : out.per_run) sum += static_cast<double>(v);
    const auto n = static_cast<double>(out.per_run.size());
    out.mean_spread = sum / n;
    if (out.per_run.size() > 1) {
        double ss = 0.0;
        for (auto v : out.per_run) ss += (static_cast<double>(v) - out.mean_spread) *
                                         (static_cast<double>(v) - out.mean_spread);
        out.std_spread = std::sqrt(ss / (n - 1.0));
    }
    return out;
}

/// Runs top-k trackers for every k over one sketch per round. All
/// trackers share the round's sketch: each edge updates the sketch once and
/// the head's fresh estimate is offered to every tracker.
void dds_rounds(std::span<const EdgeEvent> events, std::size_t q, double lambda,
                std::uint64_t seed, std::size_t rounds, const std::vector<std::size_t>& k_list,
                MembershipLookup lookup,
                const std::function<void(std::size_t, const AdjSketch&,
                                         const std::vector<TopKTracker>&)>& on_round) {
    for (std::size_t r = 0; r < rounds; ++r) {
        AdjSketch sketch({q, lambda, seed + r, SketchMode::kUniform});
        std::vector<TopKTracker> trackers;
        trackers.reserve(k_list.size());
        for (auto k : k_list) trackers.emplace_back(k, lookup);
        for (const auto& e : events) {
            sketch.next(e);
            const double estimate = sketch.query(e.head);
            for (auto& t : trackers) t.offer(e.head, estimate);
        }
        on_round(r, sketch, trackers);
    }
}

std::size_t resolve_q_for_file(const QSetting& setting, const CommonArgs& args) {
    StreamCounts counts;
    if (needs_counts(setting)) counts = count_stream(args.input, args.stream);
    return resolve_q(setting, counts);
}

}  // namespace

std::string csv_field(std::string_view text) {
    if (text.find_first_of(",\"\n") == std::string_view::npos) return std::string(text);
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

QSetting parse_q(std::string_view text) {
    QSetting s;
    if (text == "d_in-2") {
        s.from_avg_in_degree = true;
        return s;
    }
    if (text.empty() || text.find_first_not_of("0123456789") != std::string_view::npos) {
        throw UsageError("--q must be a positive integer or d_in-2");
    }
    std::size_t value = 0;
    std::size_t pos = 0;
    try {
        value = std::stoull(std::string(text), &pos);
    } catch (const std::exception&) {
        throw UsageError("--q must be a positive integer or d_in-2");
    }
    if (pos != text.size() || value < 1) throw UsageError("--q must be a positive integer or d_in-2");
    s.fixed = value;
    return s;
}

bool needs_counts(const QSetting& setting) { return setting.from_avg_in_degree; }

std::size_t resolve_q(const QSetting& setting, const StreamCounts& counts) {
    if (setting.epsilon.has_value() != setting.delta.has_value()) {
        throw UsageError("--epsilon and --delta must be given together");
    }
    const int forms = (setting.fixed ? 1 : 0) + (setting.from_avg_in_degree ? 1 : 0) +
                      (setting.epsilon ? 1 : 0);
    if (forms != 1) throw UsageError("give exactly one of --q or --epsilon/--delta");
    if (setting.fixed) {
        if (*setting.fixed < 1) throw UsageError("--q must be >= 1");
        return *setting.fixed;
    }
    if (setting.epsilon) {
        try {
            return q_for(*setting.epsilon, *setting.delta);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    if (counts.node_count == 0) return 1;
    const double d_in =
        static_cast<double>(counts.event_count) / static_cast<double>(counts.node_count);
    return static_cast<std::size_t>(std::max(1.0, std::floor(d_in - 2.0)));
}

Orientation parse_orientation(std::string_view text) {
    if (text == "head-to-tail") return Orientation::kHeadToTail;
    if (text == "tail-to-head") return Orientation::kTailToHead;
    throw UsageError("--orientation must be head-to-tail or tail-to-head");
}

Delimiter parse_delimiter(std::string_view text) {
    if (text == "auto") return Delimiter::kAuto;
    if (text == "whitespace") return Delimiter::kWhitespace;
    if (text == "comma") return Delimiter::kComma;
    throw UsageError("--delimiter must be auto, whitespace or comma");
}

SketchOutcome cmd_sketch(const SketchArgs& args, std::ostream& log) {
    validate_lambda(args.lambda);
    SketchOutcome outcome;
    outcome.q = resolve_q_for_file(args.q, args);
    log << "q = " << outcome.q << '\n';

    const SketchMode mode = args.stream.weighted ? SketchMode::kWeighted : SketchMode::kUniform;
    AdjSketch sketch({outcome.q, args.lambda, args.seed, mode});
    NodeInterner interner;
    EdgeStreamReader reader(args.input, interner, args.stream);
    while (auto e = reader.next()) sketch.next(*e);

    std::ostringstream snapshot;
    sketch.save(snapshot);

    std::ostringstream csv;
    csv << "node,degree,estimate\n";
    for (NodeId u = 0; u < interner.size(); ++u) {
        const double estimate =
            mode == SketchMode::kWeighted ? sketch.query_weighted(u) : sketch.query(u);
        csv << csv_field(interner.resolve(u)) << ',' << sketch.degree(u) << ','
            << format_double(estimate) << '\n';
    }

    json summary = {
        {"q", outcome.q},
        {"lambda", args.lambda},
        {"seed", args.seed},
        {"mode", mode == SketchMode::kWeighted ? "weighted" : "uniform"},
        {"directed", args.stream.directed},
        {"node_count", interner.size()},
        {"event_count", sketch.events_processed()},
        {"allocated_rows", sketch.row_count()},
        {"allocated_slot_cells", sketch.allocated_slot_cells()},
    };
    outcome.written = write_outputs(args.out_dir, {{"sketch.snapshot", snapshot.str()},
                                                   {"estimates.csv", csv.str()},
                                                   {"sketch.json", summary.dump(2) + "\n"}});
    return outcome;
}

std::vector<fs::path> cmd_exact(const CommonArgs& args, std::ostream& log) {
    validate_lambda(args.lambda);
    auto lg = load_graph(args);
    std::ostringstream csv;
    csv << "node,degree,dd\n";
    for (NodeId u = 0; u < lg.list.interner.size(); ++u) {
        csv << csv_field(lg.list.interner.resolve(u)) << ',' << lg.graph.in_degree(u) << ','
            << format_double(exact_dd(lg.graph, u, args.lambda)) << '\n';
    }
    log << "exact diffusion degree for " << lg.list.interner.size() << " nodes\n";
    return write_outputs(args.out_dir, {{"exact.csv", csv.str()}});
}

std::vector<fs::path> cmd_topk(const TopkArgs& args, std::ostream& log) {
    validate_lambda(args.lambda);
    validate_k_list(args.k_list);
    if (args.rounds < 1) throw UsageError("--rounds must be >= 1");
    auto lg = load_graph(args);
    const std::size_t q = resolve_q(args.q, {lg.list.interner.size(), lg.list.events.size()});
    log << "q = " << q << '\n';
    const auto& names = lg.list.interner;
    if (args.k_list.back() > lg.graph.node_count()) {
        log << "warning: k = " << args.k_list.back() << " exceeds node count "
            << lg.graph.node_count() << "; emitting all nodes\n";
    }

    std::ostringstream csv;
    csv << "method,round,k,rank,node,score\n";
    auto emit = [&](const char* method, std::size_t round, std::size_t k,
                    const std::vector<RankedNode>& ranked) {
        for (std::size_t i = 0; i < ranked.size(); ++i) {
            csv << method << ',' << round << ',' << k << ',' << i + 1 << ','
                << csv_field(label_of(names, ranked[i].node)) << ','
                << format_double(ranked[i].score) << '\n';
        }
    };
    for (auto k : args.k_list) emit("DD", 0, k, exact_topk(lg.graph, k, args.lambda));
    dds_rounds(lg.list.events, q, args.lambda, args.seed, args.rounds, args.k_list, args.lookup,
               [&](std::size_t r, const AdjSketch&, const std::vector<TopKTracker>& trackers) {
                   for (std::size_t i = 0; i < trackers.size(); ++i) {
                       emit("DDS", r, args.k_list[i], trackers[i].query());
                   }
               });
    return write_outputs(args.out_dir, {{"topk.csv", csv.str()}});
}

SpreadReport cmd_simulate(const SimulateArgs& args, std::ostream& log) {
    validate_lambda(args.lambda);
    if (args.runs < 1) throw UsageError("--icm-runs must be >= 1");
    auto lg = load_graph(args);
    std::vector<NodeId> seeds;
    for (const auto& label : args.seeds) {
        auto id = lg.list.interner.find(label);
        if (!id) throw std::out_of_range("unknown seed node '" + label + "'");
        seeds.push_back(*id);
    }
    auto report = simulate(lg.graph, seeds,
                           {args.lambda, args.runs, args.seed, args.orientation});

    std::ostringstream csv;
    csv << "run,spread\n";
    for (std::size_t r = 0; r < report.per_run.size(); ++r) {
        csv << r << ',' << report.per_run[r] << '\n';
    }
    json j = {
        {"seeds", args.seeds},
        {"seed_set_size", report.seed_set_size},
        {"lambda", args.lambda},
        {"runs", args.runs},
        {"seed", args.seed},
        {"orientation", orientation_name(args.orientation)},
        {"mean_spread", report.mean_spread},
        {"std_spread", report.std_spread},
    };
    write_outputs(args.out_dir, {{"simulate.json", j.dump(2) + "\n"}, {"simulate.csv", csv.str()}});
    log << "mean spread " << format_double(report.mean_spread) << " (std "
        << format_double(report.std_spread) << ", " << args.runs << " runs)\n";
    return report;
}

ExperimentResult run_experiment(const EdgeList& input, const ExperimentSpec& spec) {
    validate_lambda(spec.lambda);
    validate_k_list(spec.k_list);
    if (spec.rounds < 1) throw UsageError("--rounds must be >= 1");
    if (spec.icm_runs < 1) throw UsageError("--icm-runs must be >= 1");

    ExperimentResult res;
    res.node_count = input.interner.size();
    res.edge_count = input.events.size();
    res.q = resolve_q(spec.q, {res.node_count, res.edge_count});
    auto& timer = res.timing;

    StaticGraph g;
    {
        auto t = timer.scope("exact_build");
        g = StaticGraph::build(input.events, res.node_count);
    }
    res.rows.resize(spec.k_list.size());
    {
        auto t = timer.scope("dd_topk");
        for (std::size_t i = 0; i < spec.k_list.size(); ++i) {
            res.rows[i].k = spec.k_list[i];
            res.rows[i].dd_seeds = exact_topk(g, spec.k_list[i], spec.lambda);
        }
    }

    std::vector<double> error_sums(spec.k_list.size(), 0.0);
    {
        auto t = timer.scope("dds_stream");
        dds_rounds(input.events, res.q, spec.lambda, spec.seed, spec.rounds, spec.k_list,
                   MembershipLookup::kIndexed,
                   [&](std::size_t, const AdjSketch& sketch,
                       const std::vector<TopKTracker>& trackers) {
                       for (std::size_t i = 0; i < trackers.size(); ++i) {
                           auto seeds = trackers[i].query();
                           auto nodes = nodes_of(seeds);
                           auto err = mean_error(g, sketch, nodes, spec.lambda);
                           error_sums[i] += err.mean_error.value_or(0.0);
                           res.rows[i].dds_seeds.push_back(std::move(seeds));
                       }
                   });
    }
    for (std::size_t i = 0; i < res.rows.size(); ++i) {
        res.rows[i].mean_error = error_sums[i] / static_cast<double>(spec.rounds);
    }

    {
        auto t = timer.scope("simulation");
        CascadeSimulator sim(g, spec.orientation);
        // Common random numbers: every seed set is scored on the same edge coins.
        const std::uint64_t icm_seed = mix_seed(spec.seed, 0x1c3);
        for (auto& row : res.rows) {
            row.dd = sim.simulate(nodes_of(row.dd_seeds), spec.lambda, spec.icm_runs, icm_seed);
            std::vector<SpreadReport> per_round;
            for (const auto& seeds : row.dds_seeds) {
                per_round.push_back(
                    sim.simulate(nodes_of(seeds), spec.lambda, spec.icm_runs, icm_seed));
            }
            row.dds = pool(per_round);
        }
    }
    return res;
}

ExperimentResult cmd_experiment(const ExperimentSpec& spec, std::ostream& log) {
    PhaseTimer ingest;
    EdgeList input;
    {
        auto t = ingest.scope("ingest");
        input = read_edge_list(spec.input, spec.stream);
    }
    auto res = run_experiment(input, spec);
    res.timing.record("ingest", ingest.seconds("ingest"));
    log << "q = " << res.q << ", n = " << res.node_count << ", m = " << res.edge_count << '\n';
    const auto& names = input.interner;

    std::ostringstream spread;
    std::ostringstream error;
    std::ostringstream seeds;
    spread << "k,method,mean_spread,std_spread\n";
    error << "k,mean_error\n";
    seeds << "k,method,round,rank,node,score\n";
    for (const auto& row : res.rows) {
        spread << row.k << ",DD," << format_double(row.dd.mean_spread) << ','
               << format_double(row.dd.std_spread) << '\n';
        spread << row.k << ",DDS," << format_double(row.dds.mean_spread) << ','
               << format_double(row.dds.std_spread) << '\n';
        error << row.k << ',' << format_double(row.mean_error) << '\n';
        auto emit = [&](const char* method, std::size_t round, const std::vector<RankedNode>& r) {
            for (std::size_t i = 0; i < r.size(); ++i) {
                seeds << row.k << ',' << method << ',' << round << ',' << i + 1 << ','
                      << csv_field(label_of(names, r[i].node)) << ','
                      << format_double(r[i].score) << '\n';
            }
        };
        emit("DD", 0, row.dd_seeds);
        for (std::size_t r = 0; r < row.dds_seeds.size(); ++r) emit("DDS", r, row.dds_seeds[r]);
        log << "k = " << row.k << ": DD " << format_double(row.dd.mean_spread) << ", DDS "
            << format_double(row.dds.mean_spread) << ", mean error "
            << format_double(row.mean_error) << '\n';
    }

    json meta = {
        {"input", spec.input.string()},
        {"directed", spec.stream.directed},
        {"q", res.q},
        {"lambda", spec.lambda},
        {"k_list", spec.k_list},
        {"icm_runs", spec.icm_runs},
        {"rounds", spec.rounds},
        {"seed", spec.seed},
        {"orientation", orientation_name(spec.orientation)},
        {"node_count", res.node_count},
        {"edge_count", res.edge_count},
    };
    json timing = json::object();
    for (const auto& p : res.timing.phases()) timing[p.phase] = p.seconds;

    write_outputs(spec.out_dir, {{"spread_vs_k.csv", spread.str()},
                                 {"mean_error_vs_k.csv", error.str()},
                                 {"seeds.csv", seeds.str()},
                                 {"experiment.json", meta.dump(2) + "\n"},
                                 {"timing.json", timing.dump(2) + "\n"}});
    return res;
}

std::vector<BoundCheckResult> cmd_validate_bound(const BoundArgs& args, std::ostream& log) {
    validate_lambda(args.lambda);
    if (args.trials < 1000) throw UsageError("--trials must be >= 1000");
    if (!(args.epsilon > 0.0 && args.epsilon < 1.0) || !(args.delta > 0.0 && args.delta < 1.0)) {
        throw UsageError("--epsilon and --delta must lie in (0, 1)");
    }
    auto lg = load_graph(args);
    std::vector<NodeId> nodes;
    if (args.nodes.empty()) {
        for (NodeId u = 0; u < lg.graph.node_count(); ++u) {
            if (lg.graph.in_degree(u) > 0) nodes.push_back(u);
        }
    } else {
        for (const auto& label : args.nodes) {
            auto id = lg.list.interner.find(label);
            if (!id) throw std::out_of_range("unknown node '" + label + "'");
            nodes.push_back(*id);
        }
    }
    BoundParams params{args.epsilon, args.delta, args.trials, args.lambda, args.seed};
    auto results = hoeffding_validate(lg.list.events, lg.graph, nodes, params);

    std::ostringstream csv;
    csv << "node,degree,a_u,b_u,radius,violations,trials,empirical_rate,allowed_rate,degenerate,"
           "max_abs_error\n";
    json per_node = json::array();
    const double allowed = allowed_violation_rate(args.delta, args.trials);
    std::size_t failures = 0;
    for (const auto& r : results) {
        const auto& label = lg.list.interner.resolve(r.node);
        const double radius = r.bound_per_node.at(r.node);
        csv << csv_field(label) << ',' << r.degree << ',' << r.bounds.min << ',' << r.bounds.max
            << ',' << format_double(radius) << ',' << r.violations << ',' << r.trials << ','
            << format_double(r.empirical_rate) << ',' << format_double(allowed) << ','
            << (r.degenerate ? 1 : 0) << ',' << format_double(r.max_abs_error) << '\n';
        per_node.push_back({{"node", label},
                            {"violations", r.violations},
                            {"empirical_rate", r.empirical_rate},
                            {"degenerate", r.degenerate},
                            {"degenerate_nonzero_errors", r.degenerate_nonzero_errors},
                            {"within_contract", r.within_contract()}});
        if (!r.within_contract()) ++failures;
    }
    json j = {
        {"q", results.empty() ? q_for(args.epsilon, args.delta) : results.front().q_used},
        {"epsilon", args.epsilon},
        {"delta", args.delta},
        {"trials", args.trials},
        {"lambda", args.lambda},
        {"seed", args.seed},
        {"allowed_rate", allowed},
        {"nodes", per_node},
        {"failures", failures},
    };
    write_outputs(args.out_dir, {{"bound.csv", csv.str()}, {"bound.json", j.dump(2) + "\n"}});
    log << results.size() << " nodes checked, " << failures << " outside the bound contract\n";
    return results;
}

SpaceReport cmd_space_report(const SpaceArgs& args, std::ostream& log) {
    validate_lambda(args.lambda);
    auto lg = load_graph(args);
    const std::size_t q = resolve_q(args.q, {lg.list.interner.size(), lg.list.events.size()});
    AdjSketch sketch({q, args.lambda, args.seed, SketchMode::kUniform});
    for (const auto& e : lg.list.events) sketch.next(e);
    auto r = space_report(sketch, lg.graph);
    json j = {
        {"n", r.n},
        {"m", r.m},
        {"q", r.q},
        {"d_in", r.d_in},
        {"sketch_cells", r.sketch_cells},
        {"full_graph_cells", r.full_graph_cells},
        {"advantage", r.advantage},
        {"q_below_d_in_minus_1", r.predicate},
        {"allocated_degree_cells", r.allocated_degree_cells},
        {"allocated_slot_cells", r.allocated_slot_cells},
    };
    write_outputs(args.out_dir, {{"space.json", j.dump(2) + "\n"}});
    log << "sketch " << r.sketch_cells << " cells vs graph " << r.full_graph_cells
        << " cells: advantage " << (r.advantage ? "yes" : "no") << '\n';
    return r;
}

void cmd_generate(const GeneratorSpec& spec, const fs::path& output) {
    auto events = generate(spec);
    std::ostringstream text;
    write_edge_list(text, events);
    if (output.has_parent_path()) fs::create_directories(output.parent_path());
    std::ofstream f(output, std::ios::binary | std::ios::trunc);
    f << text.str();
    f.close();
    if (!f) throw std::runtime_error("cannot write " + output.string());
}

}  // namespace ddstream::cmd
