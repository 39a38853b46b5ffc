#include <gtest/gtest.h>

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ddstream/commands.hpp"
#include "ddstream/synth_graphs.hpp"
#include "test_util.hpp"

using namespace ddstream;
using namespace ddstream::cmd;
using ddstream::testing::read_file;
using ddstream::testing::TempDir;
using ddstream::testing::write_file;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

void write_events(const std::filesystem::path& p, const std::vector<EdgeEvent>& ev) {
    std::ostringstream s;
    write_edge_list(s, ev);
    write_file(p, s.str());
}

template <class Args>
Args with_io(const TempDir& dir, const std::string& input, const std::string& out) {
    Args a{};
    a.input = dir / input;
    a.out_dir = dir / out;
    return a;
}

}  // namespace

TEST(Commands, ParseQ) {
    EXPECT_EQ(parse_q("7").fixed, 7u);
    EXPECT_TRUE(parse_q("d_in-2").from_avg_in_degree);
    EXPECT_THROW(parse_q("0"), UsageError);
    EXPECT_THROW(parse_q("-3"), UsageError);
    EXPECT_THROW(parse_q("2x"), UsageError);
    EXPECT_THROW(parse_q("abc"), UsageError);
}

TEST(Commands, ResolveQ) {
    QSetting eps;
    eps.epsilon = 0.3;
    eps.delta = 0.1;
    EXPECT_EQ(resolve_q(eps, {}), 17u);
    QSetting avg = parse_q("d_in-2");
    EXPECT_EQ(resolve_q(avg, {100, 1000}), 8u);
    EXPECT_EQ(resolve_q(avg, {100, 250}), 1u);
    EXPECT_EQ(resolve_q(avg, {0, 0}), 1u);
    QSetting none;
    EXPECT_THROW(resolve_q(none, {}), UsageError);
    QSetting both = parse_q("3");
    both.epsilon = 0.3;
    both.delta = 0.1;
    EXPECT_THROW(resolve_q(both, {}), UsageError);
    QSetting half;
    half.epsilon = 0.3;
    EXPECT_THROW(resolve_q(half, {}), UsageError);
}

TEST(Commands, CsvField) {
    EXPECT_EQ(csv_field("abc"), "abc");
    EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
    EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
}

TEST(Commands, ExactOnThreeCycle) {
    TempDir dir;
    write_file(dir / "g.txt", "a b\nb c\nc a\n");
    auto a = with_io<CommonArgs>(dir, "g.txt", "out");
    std::ostringstream log;
    cmd_exact(a, log);
    auto rows = lines_of(read_file(dir / "out" / "exact.csv"));
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[0], "node,degree,dd");
    EXPECT_EQ(rows[1], "a,1,0.2");
    EXPECT_EQ(rows[2], "b,1,0.2");
    EXPECT_EQ(rows[3], "c,1,0.2");
}

TEST(Commands, ExactEmptyFileAndZeroLambda) {
    TempDir dir;
    write_file(dir / "empty.txt", "# nothing\n");
    auto a = with_io<CommonArgs>(dir, "empty.txt", "out");
    std::ostringstream log;
    cmd_exact(a, log);
    EXPECT_EQ(read_file(dir / "out" / "exact.csv"), "node,degree,dd\n");

    write_events(dir / "ht.txt", heavy_tail(50, 2, 1));
    auto z = with_io<CommonArgs>(dir, "ht.txt", "zero");
    z.lambda = 0.0;
    cmd_exact(z, log);
    auto rows = lines_of(read_file(dir / "zero" / "exact.csv"));
    for (std::size_t i = 1; i < rows.size(); ++i) {
        EXPECT_EQ(rows[i].substr(rows[i].rfind(',') + 1), "0");
    }
}

TEST(Commands, SketchOutputsAndQSelection) {
    TempDir dir;
    write_events(dir / "ht.txt", heavy_tail(200, 6, 2));
    auto a = with_io<SketchArgs>(dir, "ht.txt", "s1");
    a.q.epsilon = 0.3;
    a.q.delta = 0.1;
    std::ostringstream log;
    auto out = cmd_sketch(a, log);
    EXPECT_EQ(out.q, 17u);
    EXPECT_NE(log.str().find("q = 17"), std::string::npos);
    EXPECT_TRUE(std::filesystem::exists(dir / "s1" / "sketch.snapshot"));
    auto summary = nlohmann::json::parse(read_file(dir / "s1" / "sketch.json"));
    EXPECT_EQ(summary["q"], 17);
    EXPECT_EQ(summary["event_count"], 6 * 199);

    auto b = with_io<SketchArgs>(dir, "ht.txt", "s2");
    b.q = parse_q("d_in-2");
    EXPECT_EQ(cmd_sketch(b, log).q, 3u);  // floor(1194/200 - 2)

    auto c = with_io<SketchArgs>(dir, "ht.txt", "s3");
    c.q = parse_q("d_in-2");
    cmd_sketch(c, log);
    EXPECT_EQ(read_file(dir / "s2" / "estimates.csv"), read_file(dir / "s3" / "estimates.csv"));
    EXPECT_EQ(read_file(dir / "s2" / "sketch.snapshot"), read_file(dir / "s3" / "sketch.snapshot"));

    auto snap = std::ifstream(dir / "s2" / "sketch.snapshot");
    auto loaded = AdjSketch::load(snap);
    EXPECT_EQ(loaded.config().q, 3u);

    auto bad = with_io<SketchArgs>(dir, "ht.txt", "bad");
    EXPECT_THROW(cmd_sketch(bad, log), UsageError);
    bad.q = parse_q("2");
    bad.lambda = 1.5;
    EXPECT_THROW(cmd_sketch(bad, log), UsageError);
}

TEST(Commands, SketchWeighted) {
    TempDir dir;
    write_file(dir / "w.txt", "a u 0.2\nc a 0.4\n");
    auto a = with_io<SketchArgs>(dir, "w.txt", "out");
    a.stream.weighted = true;
    a.q = parse_q("2");
    std::ostringstream log;
    cmd_sketch(a, log);
    auto rows = lines_of(read_file(dir / "out" / "estimates.csv"));
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[2].substr(0, 4), "u,1,");
    EXPECT_NEAR(std::stod(rows[2].substr(4)), 0.28, 1e-15);
}

TEST(Commands, SketchMalformedInput) {
    TempDir dir;
    write_file(dir / "bad.txt", "a b\nlonely\n");
    auto a = with_io<SketchArgs>(dir, "bad.txt", "out");
    a.q = parse_q("2");
    std::ostringstream log;
    try {
        cmd_sketch(a, log);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
    }
    EXPECT_FALSE(std::filesystem::exists(dir / "out" / "estimates.csv"));
}

TEST(Commands, TopkRoundsAndWarning) {
    TempDir dir;
    write_events(dir / "ht.txt", heavy_tail(30, 3, 4));
    auto a = with_io<TopkArgs>(dir, "ht.txt", "out");
    a.q = parse_q("2");
    a.k_list = {5, 40};
    a.rounds = 5;
    std::ostringstream log;
    cmd_topk(a, log);
    EXPECT_NE(log.str().find("warning"), std::string::npos);
    auto text = read_file(dir / "out" / "topk.csv");
    auto rows = lines_of(text);
    EXPECT_EQ(rows[0], "method,round,k,rank,node,score");
    std::set<std::string> rounds;
    std::size_t dd_rows = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].rfind("DDS,", 0) == 0) rounds.insert(rows[i].substr(4, rows[i].find(',', 4) - 4));
        if (rows[i].rfind("DD,", 0) == 0) ++dd_rows;
    }
    EXPECT_EQ(rounds.size(), 5u);
    EXPECT_EQ(dd_rows, 5u + 30u);

    // DD rows do not depend on the seed.
    auto b = a;
    b.out_dir = dir / "out2";
    b.seed = 99;
    cmd_topk(b, log);
    auto dd_only = [](const std::string& t) {
        std::string out;
        for (auto& l : lines_of(t)) {
            if (l.rfind("DD,", 0) == 0) out += l + "\n";
        }
        return out;
    };
    EXPECT_EQ(dd_only(text), dd_only(read_file(dir / "out2" / "topk.csv")));

    auto bad = a;
    bad.k_list = {10, 5};
    EXPECT_THROW(cmd_topk(bad, log), UsageError);
}

TEST(Commands, TopkLookupModesAgree) {
    TempDir dir;
    write_events(dir / "ht.txt", heavy_tail(300, 4, 6));
    auto a = with_io<TopkArgs>(dir, "ht.txt", "idx");
    a.q = parse_q("2");
    a.k_list = {5, 10};
    a.rounds = 2;
    auto b = a;
    b.out_dir = dir / "scan";
    b.lookup = MembershipLookup::kLinearScan;
    std::ostringstream log;
    cmd_topk(a, log);
    cmd_topk(b, log);
    EXPECT_EQ(read_file(dir / "idx" / "topk.csv"), read_file(dir / "scan" / "topk.csv"));
}

TEST(Commands, Simulate) {
    TempDir dir;
    write_file(dir / "g.txt", "leaf hub\n");
    auto a = with_io<SimulateArgs>(dir, "g.txt", "out");
    a.seeds = {"hub"};
    a.runs = 100;
    a.lambda = 1.0;
    std::ostringstream log;
    auto r = cmd_simulate(a, log);
    EXPECT_EQ(r.mean_spread, 2.0);
    auto j = nlohmann::json::parse(read_file(dir / "out" / "simulate.json"));
    EXPECT_EQ(j["mean_spread"], 2.0);
    EXPECT_EQ(lines_of(read_file(dir / "out" / "simulate.csv")).size(), 101u);
    a.seeds = {"nobody"};
    EXPECT_THROW(cmd_simulate(a, log), std::out_of_range);
}

TEST(Commands, ExperimentZeroLambdaSpreadsK) {
    TempDir dir;
    write_events(dir / "ht.txt", heavy_tail(100, 4, 3));
    auto s = with_io<ExperimentSpec>(dir, "ht.txt", "out");
    s.q = parse_q("2");
    s.lambda = 0.0;
    s.k_list = {1, 5, 10};
    s.icm_runs = 20;
    s.rounds = 2;
    std::ostringstream log;
    auto res = cmd_experiment(s, log);
    for (const auto& row : res.rows) {
        EXPECT_EQ(row.dd.mean_spread, static_cast<double>(row.k));
        EXPECT_EQ(row.dds.mean_spread, static_cast<double>(row.k));
        EXPECT_EQ(row.mean_error, 0.0);
    }
    auto timing = nlohmann::json::parse(read_file(dir / "out" / "timing.json"));
    for (const char* phase : {"ingest", "exact_build", "dd_topk", "dds_stream", "simulation"}) {
        ASSERT_TRUE(timing.contains(phase)) << phase;
        EXPECT_GE(timing[phase].get<double>(), 0.0);
    }
}

TEST(Commands, ExperimentIsReproducible) {
    TempDir dir;
    write_events(dir / "ht.txt", heavy_tail(300, 5, 8));
    auto a = with_io<ExperimentSpec>(dir, "ht.txt", "a");
    a.q = parse_q("d_in-2");
    a.k_list = {5, 10};
    a.icm_runs = 200;
    a.rounds = 3;
    auto b = a;
    b.out_dir = dir / "b";
    std::ostringstream log;
    cmd_experiment(a, log);
    cmd_experiment(b, log);
    for (const char* f : {"spread_vs_k.csv", "mean_error_vs_k.csv", "seeds.csv", "experiment.json"}) {
        EXPECT_EQ(read_file(dir / "a" / f), read_file(dir / "b" / f)) << f;
    }
    auto rows = lines_of(read_file(dir / "a" / "mean_error_vs_k.csv"));
    ASSERT_EQ(rows.size(), 3u);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        EXPECT_GE(std::stod(rows[i].substr(rows[i].find(',') + 1)), 0.0);
    }
}

TEST(Commands, ExperimentLeavesNoPartialOutputs) {
    TempDir dir;
    write_events(dir / "ht.txt", heavy_tail(60, 3, 1));
    auto s = with_io<ExperimentSpec>(dir, "ht.txt", "out");
    s.q = parse_q("2");
    s.k_list = {3};
    s.icm_runs = 10;
    s.rounds = 1;
    // A directory where seeds.csv should go makes the third write fail.
    std::filesystem::create_directories(dir / "out" / "seeds.csv");
    std::ostringstream log;
    EXPECT_THROW(cmd_experiment(s, log), std::runtime_error);
    EXPECT_FALSE(std::filesystem::exists(dir / "out" / "spread_vs_k.csv"));
    EXPECT_FALSE(std::filesystem::exists(dir / "out" / "mean_error_vs_k.csv"));
    EXPECT_FALSE(std::filesystem::exists(dir / "out" / "timing.json"));
}

TEST(Commands, ValidateBound) {
    TempDir dir;
    write_events(dir / "hub.txt", two_tier_hub(8, 6));
    auto a = with_io<BoundArgs>(dir, "hub.txt", "out");
    a.epsilon = 0.3;
    a.delta = 0.1;
    a.trials = 1000;
    a.nodes = {"0"};
    std::ostringstream log;
    auto rs = cmd_validate_bound(a, log);
    ASSERT_EQ(rs.size(), 1u);
    EXPECT_EQ(rs[0].q_used, 17u);
    auto j = nlohmann::json::parse(read_file(dir / "out" / "bound.json"));
    EXPECT_EQ(j["q"], 17);
    EXPECT_EQ(j["failures"], 0);
    a.trials = 10;
    EXPECT_THROW(cmd_validate_bound(a, log), UsageError);
}

TEST(Commands, SpaceReport) {
    TempDir dir;
    write_events(dir / "ht.txt", heavy_tail(100, 11, 5));
    auto a = with_io<SpaceArgs>(dir, "ht.txt", "out");
    a.q = parse_q("2");
    std::ostringstream log;
    auto r = cmd_space_report(a, log);
    EXPECT_EQ(r.m, 1089u);
    EXPECT_TRUE(r.advantage);
    EXPECT_EQ(r.advantage, r.predicate);
    auto j = nlohmann::json::parse(read_file(dir / "out" / "space.json"));
    EXPECT_EQ(j["advantage"], true);
}

TEST(Commands, Generate) {
    TempDir dir;
    cmd_generate({GraphKind::kStar, 3, 1, 1, 0}, dir / "sub" / "star.txt");
    EXPECT_EQ(read_file(dir / "sub" / "star.txt"), "1 0\n2 0\n3 0\n");
}
