#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ddstream/analysis.hpp"
#include "ddstream/dds_sketch.hpp"
#include "ddstream/exact_oracle.hpp"
#include "ddstream/graph_stream.hpp"
#include "ddstream/icm_simulator.hpp"
#include "ddstream/synth_graphs.hpp"
#include "ddstream/topk_tracker.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace ddstream;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Diffusion-degree sketch, exact oracle, top-k tracker and cascade simulator";

    py::class_<EdgeEvent>(m, "EdgeEvent")
        .def(py::init([](NodeId tail, NodeId head, std::uint64_t seq, std::optional<double> w) {
                 return EdgeEvent{tail, head, seq, w};
             }),
             "tail"_a, "head"_a, "seq"_a = 0, "weight"_a = std::nullopt)
        .def_readwrite("tail", &EdgeEvent::tail)
        .def_readwrite("head", &EdgeEvent::head)
        .def_readwrite("seq", &EdgeEvent::seq)
        .def_readwrite("weight", &EdgeEvent::weight)
        .def("__eq__", [](const EdgeEvent& a, const EdgeEvent& b) { return a == b; })
        .def("__repr__", [](const EdgeEvent& e) {
            return "EdgeEvent(" + std::to_string(e.tail) + ", " + std::to_string(e.head) +
                   ", seq=" + std::to_string(e.seq) + ")";
        });

    m.def(
        "read_edge_list",
        [](const std::string& path, bool directed, bool weighted) {
            auto list = read_edge_list(path, {Delimiter::kAuto, directed, weighted});
            std::vector<std::string> labels;
            labels.reserve(list.interner.size());
            for (NodeId i = 0; i < list.interner.size(); ++i) labels.push_back(list.interner.resolve(i));
            return py::make_tuple(list.events, labels);
        },
        "path"_a, "directed"_a = true, "weighted"_a = false,
        "Parse an edge-list file. Returns (events, labels) where labels[id] is the node label.");

    py::enum_<SketchMode>(m, "SketchMode")
        .value("UNIFORM", SketchMode::kUniform)
        .value("WEIGHTED", SketchMode::kWeighted);

    py::class_<AdjSketch>(m, "AdjSketch")
        .def(py::init([](std::size_t q, double lambda_, std::uint64_t seed, SketchMode mode) {
                 return AdjSketch({q, lambda_, seed, mode});
             }),
             "q"_a, "lambda_"_a = 0.1, "seed"_a = 0, "mode"_a = SketchMode::kUniform)
        .def("next", &AdjSketch::next, "event"_a)
        .def("extend",
             [](AdjSketch& s, const std::vector<EdgeEvent>& events) {
                 for (const auto& e : events) s.next(e);
             })
        .def("query", py::overload_cast<NodeId>(&AdjSketch::query, py::const_), "u"_a)
        .def("query_scaled", py::overload_cast<NodeId, double>(&AdjSketch::query, py::const_),
             "u"_a, "lambda_"_a)
        .def("query_weighted", &AdjSketch::query_weighted, "u"_a)
        .def("access_count_probe", &AdjSketch::access_count_probe, "u"_a)
        .def("degree", &AdjSketch::degree, "u"_a)
        .def("weight_sum", &AdjSketch::weight_sum, "u"_a)
        .def("slots",
             [](const AdjSketch& s, NodeId u) {
                 std::vector<std::optional<NodeId>> out;
                 for (NodeId v : s.slots(u)) {
                     out.push_back(v == kNoNode ? std::nullopt : std::optional<NodeId>(v));
                 }
                 return out;
             })
        .def_property_readonly("row_count", &AdjSketch::row_count)
        .def_property_readonly("allocated_slot_cells", &AdjSketch::allocated_slot_cells)
        .def_property_readonly("events_processed", &AdjSketch::events_processed)
        .def("state_hash", &AdjSketch::state_hash)
        .def("dumps",
             [](const AdjSketch& s) {
                 std::ostringstream out;
                 s.save(out);
                 return out.str();
             })
        .def_static("loads",
                    [](const std::string& text) {
                        std::istringstream in(text);
                        return AdjSketch::load(in);
                    })
        .def("__eq__", [](const AdjSketch& a, const AdjSketch& b) { return a == b; });

    py::class_<StaticGraph>(m, "StaticGraph")
        .def(py::init<>())
        .def_static(
            "build",
            [](const std::vector<EdgeEvent>& events, std::size_t node_count) {
                return StaticGraph::build(events, node_count);
            },
            "events"_a, "node_count"_a = 0)
        .def("add", &StaticGraph::add)
        .def("in_degree", &StaticGraph::in_degree)
        .def("in_neighbors",
             [](const StaticGraph& g, NodeId u) {
                 auto s = g.in_neighbors(u);
                 return std::vector<NodeId>(s.begin(), s.end());
             })
        .def_property_readonly("node_count", &StaticGraph::node_count)
        .def_property_readonly("edge_count", &StaticGraph::edge_count);

    m.def("exact_dd", &exact_dd, "g"_a, "u"_a, "lambda_"_a);
    m.def(
        "neighbor_degree_bounds",
        [](const StaticGraph& g, NodeId u) {
            auto b = neighbor_degree_bounds(g, u);
            return py::make_tuple(b.min, b.max);
        },
        "g"_a, "u"_a, "Returns (a_u, b_u): min and max in-degree among in-neighbors.");

    py::class_<RankedNode>(m, "RankedNode")
        .def_readonly("node", &RankedNode::node)
        .def_readonly("score", &RankedNode::score)
        .def("__repr__", [](const RankedNode& r) {
            return "RankedNode(" + std::to_string(r.node) + ", " + std::to_string(r.score) + ")";
        });
    m.def("exact_topk", &exact_topk, "g"_a, "k"_a, "lambda_"_a);

    py::enum_<MembershipLookup>(m, "MembershipLookup")
        .value("INDEXED", MembershipLookup::kIndexed)
        .value("LINEAR_SCAN", MembershipLookup::kLinearScan);

    py::class_<TopKTracker>(m, "TopKTracker")
        .def(py::init<std::size_t, MembershipLookup>(), "k"_a,
             "lookup"_a = MembershipLookup::kIndexed)
        .def("next", &TopKTracker::next, "sketch"_a, "event"_a)
        .def("offer", &TopKTracker::offer, "node"_a, "estimate"_a)
        .def("query", &TopKTracker::query)
        .def("contains", &TopKTracker::contains)
        .def("__len__", &TopKTracker::size);

    py::enum_<Orientation>(m, "Orientation")
        .value("HEAD_TO_TAIL", Orientation::kHeadToTail)
        .value("TAIL_TO_HEAD", Orientation::kTailToHead);

    py::class_<CascadeConfig>(m, "CascadeConfig")
        .def(py::init([](double lambda_, std::size_t runs, std::uint64_t seed, Orientation o) {
                 return CascadeConfig{lambda_, runs, seed, o};
             }),
             "lambda_"_a = 0.1, "runs"_a = 1, "seed"_a = 0,
             "orientation"_a = Orientation::kHeadToTail)
        .def_readwrite("lambda_", &CascadeConfig::lambda)
        .def_readwrite("runs", &CascadeConfig::runs)
        .def_readwrite("seed", &CascadeConfig::seed)
        .def_readwrite("orientation", &CascadeConfig::orientation);

    py::class_<SpreadReport>(m, "SpreadReport")
        .def_readonly("mean_spread", &SpreadReport::mean_spread)
        .def_readonly("std_spread", &SpreadReport::std_spread)
        .def_readonly("per_run", &SpreadReport::per_run)
        .def_readonly("seed_set_size", &SpreadReport::seed_set_size);
    m.def(
        "simulate",
        [](const StaticGraph& g, const std::vector<NodeId>& seeds, const CascadeConfig& cfg) {
            return simulate(g, seeds, cfg);
        },
        "g"_a, "seeds"_a, "cfg"_a);

    m.def("q_for", &q_for, "epsilon"_a, "delta"_a);
    m.def(
        "mean_error",
        [](const StaticGraph& g, const AdjSketch& s, const std::vector<NodeId>& nodes,
           double lambda_) { return mean_error(g, s, nodes, lambda_).mean_error; },
        "g"_a, "sketch"_a, "nodes"_a, "lambda_"_a,
        "Mean |estimate - exact| over nodes; None for an empty list.");

    py::class_<SpaceReport>(m, "SpaceReport")
        .def_readonly("n", &SpaceReport::n)
        .def_readonly("m", &SpaceReport::m)
        .def_readonly("q", &SpaceReport::q)
        .def_readonly("d_in", &SpaceReport::d_in)
        .def_readonly("sketch_cells", &SpaceReport::sketch_cells)
        .def_readonly("full_graph_cells", &SpaceReport::full_graph_cells)
        .def_readonly("advantage", &SpaceReport::advantage)
        .def_readonly("predicate", &SpaceReport::predicate)
        .def_readonly("allocated_degree_cells", &SpaceReport::allocated_degree_cells)
        .def_readonly("allocated_slot_cells", &SpaceReport::allocated_slot_cells);
    m.def("space_accounting", &space_accounting, "n"_a, "m"_a, "q"_a);
    m.def("space_report", &space_report, "sketch"_a, "g"_a);

    m.def(
        "generate",
        [](const std::string& kind, std::size_t size, std::size_t max_degree,
           std::size_t edges_per_node, std::uint64_t seed) {
            return generate({parse_graph_kind(kind), size, max_degree, edges_per_node, seed});
        },
        "kind"_a, "size"_a, "max_degree"_a = 1, "edges_per_node"_a = 1, "seed"_a = 0);
}
