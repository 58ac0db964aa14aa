#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "urm/embed.hpp"
#include "urm/exact.hpp"
#include "urm/forests.hpp"
#include "urm/gadget.hpp"
#include "urm/graph.hpp"
#include "urm/io.hpp"
#include "urm/linegraph.hpp"
#include "urm/treewidth.hpp"
#include "urm/twsolve.hpp"
#include "urm/verify.hpp"

namespace py = pybind11;

namespace {

std::vector<std::pair<int, int>> edge_pairs(const std::vector<urm::Edge>& edges) {
    std::vector<std::pair<int, int>> out;
    out.reserve(edges.size());
    for (const urm::Edge& e : edges) out.emplace_back(e.u, e.v);
    return out;
}

urm::Graph graph_from_pairs(int n, const std::vector<std::pair<int, int>>& edges) {
    urm::Graph g(n);
    for (auto [a, b] : edges) g.add_edge(a, b);
    return g;
}

urm::Matching matching_from_pairs(const urm::Graph& g,
                                  const std::vector<std::pair<int, int>>& edges) {
    std::vector<urm::Edge> out;
    out.reserve(edges.size());
    for (auto [a, b] : edges) out.emplace_back(a, b);
    return urm::Matching(g, std::move(out));
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "uniquely restricted matching toolkit";

    py::class_<urm::Graph>(m, "Graph")
        .def(py::init<int>(), py::arg("vertex_count"))
        .def(py::init(&graph_from_pairs), py::arg("vertex_count"), py::arg("edges"))
        .def("add_edge", &urm::Graph::add_edge)
        .def_property_readonly("vertex_count", &urm::Graph::vertex_count)
        .def_property_readonly("edge_count", &urm::Graph::edge_count)
        .def_property_readonly("edges",
                               [](const urm::Graph& g) { return edge_pairs(g.edges()); })
        .def("neighbors", [](const urm::Graph& g, int v) { return g.neighbors(v); })
        .def("has_edge", &urm::Graph::has_edge)
        .def("connected", &urm::Graph::connected)
        .def("__repr__", [](const urm::Graph& g) {
            std::ostringstream out;
            out << "Graph(" << g.vertex_count() << " vertices, " << g.edge_count()
                << " edges)";
            return out.str();
        });

    m.def("parse_graph", &urm::parse_graph_text, py::arg("text"));
    m.def("write_graph", [](const urm::Graph& g) {
        std::ostringstream out;
        urm::write_graph(out, g);
        return out.str();
    });
    m.def("random_graph", &urm::random_graph, py::arg("n"), py::arg("p"), py::arg("seed"));

    m.def(
        "verify",
        [](const urm::Graph& g, const std::vector<std::pair<int, int>>& edges) {
            urm::Matching mt = matching_from_pairs(g, edges);
            urm::UrmCertificate cert = urm::verify_urm_cycle(g, mt);
            py::dict out;
            out["uniquely_restricted"] = cert.uniquely_restricted;
            if (cert.cycle) out["cycle"] = *cert.cycle;
            return out;
        },
        py::arg("graph"), py::arg("matching"),
        "alternating-cycle verdict with a cycle witness when negative");

    m.def(
        "verify_by_enumeration",
        [](const urm::Graph& g, const std::vector<std::pair<int, int>>& edges, int cap) {
            urm::Matching mt = matching_from_pairs(g, edges);
            return urm::verify_urm_pm(g, mt, cap).uniquely_restricted;
        },
        py::arg("graph"), py::arg("matching"), py::arg("cap") = 40);

    auto solution_dict = [](const urm::UrmSolution& sol) {
        py::dict out;
        out["size"] = sol.size;
        out["optimal"] = sol.optimal;
        out["witness"] = edge_pairs(sol.matching.edges());
        out["nodes"] = sol.nodes_explored;
        return out;
    };

    m.def(
        "max_urm_brute",
        [solution_dict](const urm::Graph& g, int cap) {
            return solution_dict(urm::max_urm_brute(g, cap));
        },
        py::arg("graph"), py::arg("vertex_cap") = 16);

    m.def(
        "max_urm_bb",
        [solution_dict](const urm::Graph& g, std::uint64_t max_nodes, std::int64_t max_ms) {
            urm::SearchBudget budget;
            if (max_nodes > 0) budget.max_nodes = max_nodes;
            budget.max_millis = max_ms;
            return solution_dict(urm::max_urm_bb(g, budget));
        },
        py::arg("graph"), py::arg("max_nodes") = 0, py::arg("max_ms") = -1);

    m.def(
        "solve_treewidth",
        [solution_dict](const urm::Graph& g) {
            return solution_dict(urm::solve_treewidth(g));
        },
        py::arg("graph"));

    m.def(
        "line_graph",
        [](const urm::Graph& h) {
            auto res = urm::line_graph(h);
            return py::make_tuple(res.line, edge_pairs(res.vertex_to_edge));
        },
        py::arg("graph"));

    m.def(
        "root_graph",
        [](const urm::Graph& g) -> py::object {
            auto res = urm::root_graph(g);
            if (!res) return py::none();
            return py::make_tuple(res->root, edge_pairs(res->vertex_to_edge));
        },
        py::arg("graph"));

    m.def(
        "urm_line_decide",
        [](const urm::Graph& host, int target, double delta, std::uint64_t seed) {
            urm::LineDecision d = urm::urm_line_decide(host, target, delta, seed);
            py::dict out;
            out["accepted"] = d.accepted;
            if (d.witness) out["witness"] = edge_pairs(d.witness->edges());
            return out;
        },
        py::arg("host"), py::arg("target"), py::arg("delta") = 1e-3, py::arg("seed") = 1);

    m.def(
        "build_gadget",
        [](int n, const std::vector<std::vector<std::array<int, 3>>>& instances) {
            std::vector<urm::E3CInstance> in;
            for (const auto& triples : instances) {
                urm::E3CInstance inst;
                inst.universe_size = n;
                for (auto t : triples) {
                    std::sort(t.begin(), t.end());
                    inst.triples.push_back(t);
                }
                in.push_back(std::move(inst));
            }
            urm::GadgetLayout layout = urm::build_gadget(in);
            py::dict out;
            out["graph"] = layout.graph;
            out["target"] = layout.target;
            out["collection_size"] = layout.collection.size();
            out["roles"] = layout.roles;
            return out;
        },
        py::arg("n"), py::arg("instances"));

    m.def("free_tree_count", [](int s) { return urm::free_trees(s).size(); }, py::arg("s"));
    m.def("partition_count", [](int k) { return urm::integer_partitions(k).size(); },
          py::arg("k"));
}
