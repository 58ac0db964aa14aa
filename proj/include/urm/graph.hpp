#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace urm {

using Vertex = int;

// Unordered edge, normalized so that u < v.
struct Edge {
    Vertex u;
    Vertex v;

    Edge() : u(-1), v(-1) {}
    Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Simple undirected graph over dense 0-based vertex ids.
// Immutable once built; all queries are const and thread-safe.
class Graph {
public:
    Graph() = default;
    explicit Graph(int vertex_count);

    // Throws contract_error on self-loops, duplicates, or out-of-range ids.
    void add_edge(Vertex a, Vertex b);

    int vertex_count() const { return static_cast<int>(adj_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    // Edges in insertion order.
    const std::vector<Edge>& edges() const { return edges_; }

    // Neighbors of v, sorted ascending.
    const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }

    int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }
    bool has_edge(Vertex a, Vertex b) const;

    // Optional per-vertex label side table; empty if unused.
    void set_label(Vertex v, std::string label);
    const std::string* label(Vertex v) const;

    // Sorted copy of the edge list; canonical for comparisons and line-graph numbering.
    std::vector<Edge> sorted_edges() const;

    // Induced subgraph on `keep` (ascending ids); second result maps new id -> old id.
    std::pair<Graph, std::vector<Vertex>> induced(const std::vector<Vertex>& keep) const;

    bool connected() const;

    // Connected components as ascending vertex lists.
    std::vector<std::vector<Vertex>> components() const;

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.adj_ == b.adj_;
    }

private:
    std::vector<std::vector<Vertex>> adj_;
    std::vector<Edge> edges_;
    std::vector<std::string> labels_;
};

// Endpoint-disjoint edge subset of a host graph.
// Construction validates both matching invariants against the host.
class Matching {
public:
    Matching() = default;

    // Throws contract_error if an edge is missing from g or endpoints repeat.
    Matching(const Graph& g, std::vector<Edge> edges);

    static Matching empty(const Graph& g) { return Matching(g, {}); }

    int size() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }

    bool saturates(Vertex v) const { return mate_[v] >= 0; }
    Vertex mate(Vertex v) const { return mate_[v]; }
    bool contains(const Edge& e) const;

    // M-saturated vertices, ascending.
    std::vector<Vertex> saturated() const;

    friend bool operator==(const Matching& a, const Matching& b) {
        return a.edges_ == b.edges_;
    }

private:
    std::vector<Edge> edges_; // sorted
    std::vector<int> mate_;   // -1 when unsaturated
};

// Erdos-Renyi G(n,p) from a deterministic generator; identical inputs give
// identical edge sets on every platform.
Graph random_graph(int n, double p, std::uint64_t seed);

} // namespace urm
