#include "urm/graph.hpp"

#include <algorithm>

#include "urm/errors.hpp"
#include "urm/rng.hpp"

namespace urm {

Graph::Graph(int vertex_count) {
    if (vertex_count < 0) throw contract_error("vertex count must be non-negative");
    adj_.resize(static_cast<std::size_t>(vertex_count));
}

void Graph::add_edge(Vertex a, Vertex b) {
    const int n = vertex_count();
    if (a < 0 || a >= n || b < 0 || b >= n)
        throw contract_error("edge endpoint out of range");
    if (a == b) throw contract_error("self-loop");
    if (has_edge(a, b)) throw contract_error("duplicate edge");
    Edge e(a, b);
    edges_.push_back(e);
    auto insert_sorted = [](std::vector<Vertex>& vec, Vertex x) {
        vec.insert(std::lower_bound(vec.begin(), vec.end(), x), x);
    };
    insert_sorted(adj_[e.u], e.v);
    insert_sorted(adj_[e.v], e.u);
}

bool Graph::has_edge(Vertex a, Vertex b) const {
    if (a == b) return false;
    const auto& na = adj_[a].size() <= adj_[b].size() ? adj_[a] : adj_[b];
    Vertex other = adj_[a].size() <= adj_[b].size() ? b : a;
    return std::binary_search(na.begin(), na.end(), other);
}

void Graph::set_label(Vertex v, std::string label) {
    if (labels_.empty()) labels_.resize(adj_.size());
    labels_[v] = std::move(label);
}

const std::string* Graph::label(Vertex v) const {
    if (labels_.empty() || labels_[v].empty()) return nullptr;
    return &labels_[v];
}

std::vector<Edge> Graph::sorted_edges() const {
    std::vector<Edge> out = edges_;
    std::sort(out.begin(), out.end());
    return out;
}

std::pair<Graph, std::vector<Vertex>> Graph::induced(const std::vector<Vertex>& keep) const {
    std::vector<int> new_id(adj_.size(), -1);
    for (std::size_t i = 0; i < keep.size(); ++i) new_id[keep[i]] = static_cast<int>(i);
    Graph sub(static_cast<int>(keep.size()));
    for (const Edge& e : edges_) {
        if (new_id[e.u] >= 0 && new_id[e.v] >= 0) sub.add_edge(new_id[e.u], new_id[e.v]);
    }
    return {std::move(sub), keep};
}

bool Graph::connected() const {
    return vertex_count() <= 1 || components().size() == 1;
}

std::vector<std::vector<Vertex>> Graph::components() const {
    const int n = vertex_count();
    std::vector<int> comp(n, -1);
    std::vector<std::vector<Vertex>> out;
    std::vector<Vertex> stack;
    for (int s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        int id = static_cast<int>(out.size());
        out.emplace_back();
        comp[s] = id;
        stack.push_back(s);
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            out[id].push_back(v);
            for (Vertex w : adj_[v]) {
                if (comp[w] < 0) {
                    comp[w] = id;
                    stack.push_back(w);
                }
            }
        }
        std::sort(out[id].begin(), out[id].end());
    }
    return out;
}

Matching::Matching(const Graph& g, std::vector<Edge> edges)
    : edges_(std::move(edges)), mate_(g.vertex_count(), -1) {
    std::sort(edges_.begin(), edges_.end());
    for (const Edge& e : edges_) {
        if (!g.has_edge(e.u, e.v)) throw contract_error("matching edge not in host graph");
        if (mate_[e.u] >= 0 || mate_[e.v] >= 0)
            throw contract_error("matching edges share an endpoint");
        mate_[e.u] = e.v;
        mate_[e.v] = e.u;
    }
}

bool Matching::contains(const Edge& e) const {
    return e.u >= 0 && e.u < static_cast<int>(mate_.size()) && mate_[e.u] == e.v;
}

std::vector<Vertex> Matching::saturated() const {
    std::vector<Vertex> out;
    for (std::size_t v = 0; v < mate_.size(); ++v)
        if (mate_[v] >= 0) out.push_back(static_cast<Vertex>(v));
    return out;
}

Graph random_graph(int n, double p, std::uint64_t seed) {
    if (n < 0) throw contract_error("n must be non-negative");
    if (!(p >= 0.0 && p <= 1.0)) throw contract_error("p must lie in [0,1]");
    Graph g(n);
    Rng rng(seed);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.unit() < p) g.add_edge(i, j);
    return g;
}

} // namespace urm
