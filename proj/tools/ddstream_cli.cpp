// ddstream: command-line front end for the diffusion-degree stream sketch.
//
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ddstream/commands.hpp"

namespace {

using namespace ddstream;
using namespace ddstream::cmd;

struct CommonFlags {
    std::string input;
    bool undirected = false;
    bool weighted = false;
    std::string delimiter = "auto";
    double lambda = 0.1;
    std::uint64_t seed = 1;
    std::string out_dir = ".";
    std::string orientation = "head-to-tail";

    std::optional<std::string> q;
    std::optional<double> epsilon;
    std::optional<double> delta;

    [[nodiscard]] CommonArgs common() const {
        CommonArgs a;
        a.input = input;
        a.stream.directed = !undirected;
        a.stream.weighted = weighted;
        a.stream.delimiter = parse_delimiter(delimiter);
        a.lambda = lambda;
        a.seed = seed;
        a.out_dir = out_dir;
        a.orientation = parse_orientation(orientation);
        return a;
    }

    [[nodiscard]] QSetting q_setting() const {
        QSetting s;
        if (q) s = parse_q(*q);
        s.epsilon = epsilon;
        s.delta = delta;
        return s;
    }
};

void add_input_flags(CLI::App* app, CommonFlags& f) {
    app->add_option("--input,-i", f.input, "Edge-list file (tail head [weight] per line)")
        ->required()
        ->check(CLI::ExistingFile);
    auto* directed = app->add_flag("--directed", "Each line is one directed edge (default)");
    app->add_flag("--undirected", f.undirected, "Each line yields both directions")
        ->excludes(directed);
    app->add_flag("--weighted", f.weighted, "Third column is the edge propagation probability");
    app->add_option("--delimiter", f.delimiter, "auto|whitespace|comma")->capture_default_str();
    app->add_option("--lambda", f.lambda, "Diffusion probability")->capture_default_str();
    app->add_option("--seed", f.seed, "Base RNG seed")->capture_default_str();
    app->add_option("--out-dir,-o", f.out_dir, "Output directory")->capture_default_str();
}

void add_q_flags(CLI::App* app, CommonFlags& f) {
    app->add_option("--q", f.q, "Slots per node: positive integer or d_in-2");
    app->add_option("--epsilon", f.epsilon, "Error term; with --delta selects q");
    app->add_option("--delta", f.delta, "Failure probability; with --epsilon selects q");
}

void add_orientation_flag(CLI::App* app, CommonFlags& f) {
    app->add_option("--orientation", f.orientation, "head-to-tail|tail-to-head")
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Diffusion-degree estimation on insert-only edge streams"};
    app.set_config("--config", "", "TOML/INI file with option defaults (flags win)");
    app.require_subcommand(1);

    CommonFlags f;
    std::vector<std::size_t> k_list{5, 10, 20, 30, 40, 50};
    std::size_t rounds = 5;
    std::size_t icm_runs = 1000;
    std::vector<std::string> seeds;
    std::vector<std::string> nodes;
    std::size_t trials = 1000;
    bool literal_scan = false;

    auto* sketch = app.add_subcommand("sketch", "Stream a file through the sketch");
    add_input_flags(sketch, f);
    add_q_flags(sketch, f);

    auto* exact = app.add_subcommand("exact", "Exact diffusion degree of every node");
    add_input_flags(exact, f);

    auto* topk = app.add_subcommand("topk", "Top-k seed sets from the sketch and the exact ranking");
    add_input_flags(topk, f);
    add_q_flags(topk, f);
    topk->add_option("--k-list,-k", k_list, "Seed set sizes, ascending")->delimiter(',');
    topk->add_option("--rounds", rounds, "Independent sketch rounds")->capture_default_str();
    topk->add_flag("--literal-scan", literal_scan, "Find heap members by linear scan");

    auto* sim = app.add_subcommand("simulate", "Independent Cascade spread of a seed set");
    add_input_flags(sim, f);
    add_orientation_flag(sim, f);
    sim->add_option("--seeds", seeds, "Seed node labels")->delimiter(',')->required();
    sim->add_option("--icm-runs", icm_runs, "Monte Carlo runs")->capture_default_str();

    auto* exp = app.add_subcommand("experiment", "Spread, mean error and timing versus k");
    add_input_flags(exp, f);
    add_q_flags(exp, f);
    add_orientation_flag(exp, f);
    exp->add_option("--k-list,-k", k_list, "Seed set sizes, ascending")->delimiter(',');
    exp->add_option("--rounds", rounds, "Independent sketch rounds")->capture_default_str();
    exp->add_option("--icm-runs", icm_runs, "Monte Carlo runs per seed set")->capture_default_str();

    auto* bound = app.add_subcommand("validate-bound", "Empirical check of the sampling error bound");
    add_input_flags(bound, f);
    bound->add_option("--epsilon", f.epsilon, "Error term")->required();
    bound->add_option("--delta", f.delta, "Failure probability")->required();
    bound->add_option("--trials", trials, "Independent sketch builds (>= 1000)")
        ->capture_default_str();
    bound->add_option("--node", nodes, "Node label to check (repeatable; default: all)");

    auto* space = app.add_subcommand("space-report", "Sketch versus adjacency-list cell counts");
    add_input_flags(space, f);
    add_q_flags(space, f);

    GeneratorSpec gen;
    std::string kind = "heavy-tail";
    std::string output;
    auto* generate = app.add_subcommand("generate", "Write a synthetic edge stream");
    generate->add_option("--kind", kind, "star|cycle|path|two-tier-hub|heavy-tail")
        ->capture_default_str();
    generate->add_option("--size", gen.size, "Leaves or node count")->required();
    generate->add_option("--max-degree", gen.max_degree, "two-tier-hub: largest leaf in-degree")
        ->capture_default_str();
    generate->add_option("--edges-per-node", gen.edges_per_node, "heavy-tail: edges per arrival")
        ->capture_default_str();
    generate->add_option("--seed", gen.seed, "heavy-tail: RNG seed")->capture_default_str();
    generate->add_option("--output,-o", output, "Destination file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*sketch) {
            SketchArgs a{f.common(), f.q_setting()};
            cmd_sketch(a, std::cout);
        } else if (*exact) {
            cmd_exact(f.common(), std::cout);
        } else if (*topk) {
            TopkArgs a{f.common(), f.q_setting(), k_list, rounds,
                       literal_scan ? MembershipLookup::kLinearScan : MembershipLookup::kIndexed};
            cmd_topk(a, std::cout);
        } else if (*sim) {
            SimulateArgs a{f.common(), seeds, icm_runs};
            cmd_simulate(a, std::cout);
        } else if (*exp) {
            ExperimentSpec s{f.common(), f.q_setting(), k_list, icm_runs, rounds};
            cmd_experiment(s, std::cout);
        } else if (*bound) {
            BoundArgs a{f.common(), *f.epsilon, *f.delta, trials, nodes};
            cmd_validate_bound(a, std::cout);
        } else if (*space) {
            SpaceArgs a{f.common(), f.q_setting()};
            cmd_space_report(a, std::cout);
        } else if (*generate) {
            gen.kind = parse_graph_kind(kind);
            cmd_generate(gen, output);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
