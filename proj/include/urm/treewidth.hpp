#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "urm/graph.hpp"

namespace urm {

struct TreeDecomposition {
    std::vector<int> parent;                // -1 for the root
    std::vector<std::vector<Vertex>> bags;  // sorted
    int root = 0;

    int node_count() const { return static_cast<int>(bags.size()); }
    int width() const;
};

// nullopt when valid; otherwise a message naming the violated axiom
// (coverage, edge coverage, or occurrence connectivity).
std::optional<std::string> validate_tree_decomposition(const TreeDecomposition& td,
                                                       const Graph& g);

// Min-fill elimination ordering; ties broken toward lower ids.
TreeDecomposition heuristic_tree_decomposition(const Graph& g);

// Decomposition file: header `s td <#bags> <maxbagsize> <n>`, one
// `b <id> <v...>` line per bag (bag ids 1-based, vertex ids 0-based),
// then one `<id1> <id2>` line per tree edge; 'c' lines are comments.
TreeDecomposition parse_td(std::istream& in);
TreeDecomposition read_td_file(const std::string& path);
void write_td(std::ostream& out, const TreeDecomposition& td, int vertex_count);

enum class NodeKind { leaf, introduce_vertex, introduce_edge, forget, join };

struct NiceNode {
    NodeKind kind = NodeKind::leaf;
    std::vector<Vertex> bag;    // sorted
    Vertex vertex = -1;         // introduce_vertex / forget payload
    Edge edge;                  // introduce_edge payload
    std::vector<int> children;
};

// Nodes are stored in evaluation order: every child precedes its parent,
// and the root is the last node.
struct NiceTreeDecomposition {
    std::vector<NiceNode> nodes;
    int root = -1;

    int width() const;
    int node_count() const { return static_cast<int>(nodes.size()); }
};

// Expands td into a nice decomposition with introduce-edge nodes, every edge
// introduced exactly once, stacked directly below the forget node of its
// earlier-forgotten endpoint. Throws contract_error when td is invalid.
NiceTreeDecomposition to_nice(const TreeDecomposition& td, const Graph& g);

// Structural checks: empty root/leaf bags, node-kind bag relations, the
// underlying decomposition axioms, exactly-once edge introduction, the
// deferred placement of every introduce-edge node, and join independence.
std::optional<std::string> validate_nice(const NiceTreeDecomposition& ntd, const Graph& g);

} // namespace urm
