#pragma once

#include <optional>
#include <vector>

#include "urm/graph.hpp"

namespace urm {

struct LineGraphResult {
    Graph line;
    // vertex_to_edge[i] is the edge of the input graph represented by
    // line-graph vertex i; vertices are numbered by sorted edge order.
    std::vector<Edge> vertex_to_edge;
};

// L(H): one vertex per edge of h, adjacency iff the edges share an endpoint.
// Isolated vertices of h are ignored.
LineGraphResult line_graph(const Graph& h);

struct RootGraphResult {
    Graph root;
    // vertex_to_edge[v] is the edge of the root graph that vertex v of the
    // input corresponds to under L(root) = input.
    std::vector<Edge> vertex_to_edge;
};

// Inverse of line_graph by exhaustive clique-partition search: returns a
// graph H with L(H) equal to g under the returned correspondence, or
// nullopt when g is not a line graph. Requires g connected.
std::optional<RootGraphResult> root_graph(const Graph& g, int vertex_cap = 5000);

} // namespace urm
