#include "urm/linegraph.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <unordered_set>

#include "urm/errors.hpp"

namespace urm {

LineGraphResult line_graph(const Graph& h) {
    std::vector<Edge> edges = h.sorted_edges();
    const int m = static_cast<int>(edges.size());
    Graph l(m);
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            const Edge& a = edges[i];
            const Edge& b = edges[j];
            if (a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v) l.add_edge(i, j);
        }
    }
    return {std::move(l), std::move(edges)};
}

namespace {

// Searches for a partition of E(g) into cliques with every vertex in at most
// two parts (the classical line-graph characterization).
class KrauszSearch {
public:
    explicit KrauszSearch(const Graph& g)
        : g_(g),
          edges_(g.sorted_edges()),
          covered_(edges_.size(), 0),
          clique_count_(g.vertex_count(), 0) {
        for (std::size_t i = 0; i < edges_.size(); ++i)
            edge_index_[{edges_[i].u, edges_[i].v}] = static_cast<int>(i);
    }

    bool run() { return cover_next(); }

    const std::vector<std::vector<Vertex>>& cliques() const { return cliques_; }

private:
    int index_of(Vertex a, Vertex b) const {
        Edge e(a, b);
        auto it = edge_index_.find({e.u, e.v});
        return it == edge_index_.end() ? -1 : it->second;
    }

    bool usable(Vertex w, const std::vector<Vertex>& s) const {
        if (clique_count_[w] >= 2) return false;
        for (Vertex x : s) {
            int idx = index_of(w, x);
            if (idx < 0 || covered_[idx]) return false;
        }
        return true;
    }

    bool place(std::vector<Vertex>& s, std::size_t next_edge) {
        // Commit s as one part of the partition.
        for (std::size_t i = 0; i < s.size(); ++i)
            for (std::size_t j = i + 1; j < s.size(); ++j)
                covered_[index_of(s[i], s[j])] = 1;
        for (Vertex w : s) ++clique_count_[w];
        cliques_.push_back(s);

        bool ok = cover_next(next_edge);

        if (!ok) {
            cliques_.pop_back();
            for (Vertex w : s) --clique_count_[w];
            for (std::size_t i = 0; i < s.size(); ++i)
                for (std::size_t j = i + 1; j < s.size(); ++j)
                    covered_[index_of(s[i], s[j])] = 0;
        }
        return ok;
    }

    bool extend(std::vector<Vertex>& s, Vertex min_next, std::size_t next_edge) {
        if (place(s, next_edge)) return true;
        for (Vertex w : g_.neighbors(s[0])) {
            if (w < min_next) continue;
            if (!usable(w, s)) continue;
            s.push_back(w);
            bool ok = extend(s, w + 1, next_edge);
            s.pop_back();
            if (ok) return true;
        }
        return false;
    }

    bool cover_next(std::size_t from = 0) {
        std::size_t i = from;
        while (i < edges_.size() && covered_[i]) ++i;
        if (i == edges_.size()) return true;
        if (failed_here(i)) return false;

        const Edge& e = edges_[i];
        bool ok = false;
        if (clique_count_[e.u] < 2 && clique_count_[e.v] < 2) {
            std::vector<Vertex> s{e.u, e.v};
            ok = extend(s, 0, i);
        }
        if (!ok) remember_failure(i);
        return ok;
    }

    bool failed_here(std::size_t edge_pos) {
        return failed_.count(state_key(edge_pos)) > 0;
    }

    void remember_failure(std::size_t edge_pos) { failed_.insert(state_key(edge_pos)); }

    std::string state_key(std::size_t edge_pos) const {
        std::string key;
        key.reserve(covered_.size() + clique_count_.size() + 8);
        key.append(reinterpret_cast<const char*>(&edge_pos), sizeof(edge_pos));
        key.append(covered_.begin(), covered_.end());
        for (int c : clique_count_) key.push_back(static_cast<char>(c));
        return key;
    }

    const Graph& g_;
    std::vector<Edge> edges_;
    std::map<std::pair<Vertex, Vertex>, int> edge_index_;
    std::vector<char> covered_;
    std::vector<int> clique_count_;
    std::vector<std::vector<Vertex>> cliques_;
    std::unordered_set<std::string> failed_;
};

} // namespace

std::optional<RootGraphResult> root_graph(const Graph& g, int vertex_cap) {
    if (g.vertex_count() > vertex_cap)
        throw resource_error("graph exceeds the root-graph vertex cap");
    if (!g.connected())
        throw contract_error("root_graph requires a connected graph; split into components first");

    if (g.vertex_count() == 0) {
        return RootGraphResult{Graph(1), {}};
    }
    if (g.vertex_count() == 1) {
        Graph h(2);
        h.add_edge(0, 1);
        return RootGraphResult{std::move(h), {Edge(0, 1)}};
    }

    KrauszSearch search(g);
    if (!search.run()) return std::nullopt;

    const auto& cliques = search.cliques();
    std::vector<std::vector<int>> member_of(g.vertex_count());
    for (std::size_t k = 0; k < cliques.size(); ++k)
        for (Vertex v : cliques[k]) member_of[v].push_back(static_cast<int>(k));

    int h_vertices = static_cast<int>(cliques.size());
    std::vector<Edge> vertex_to_edge(g.vertex_count());
    std::vector<std::pair<int, int>> pending;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (member_of[v].size() == 2) {
            pending.emplace_back(member_of[v][0], member_of[v][1]);
        } else if (member_of[v].size() == 1) {
            pending.emplace_back(member_of[v][0], h_vertices++);
        } else {
            throw internal_error("vertex left uncovered by the clique partition");
        }
    }
    Graph h(h_vertices);
    for (int v = 0; v < g.vertex_count(); ++v) {
        h.add_edge(pending[v].first, pending[v].second);
        vertex_to_edge[v] = Edge(pending[v].first, pending[v].second);
    }

    // The correspondence must realize L(h) = g exactly.
    for (int a = 0; a < g.vertex_count(); ++a) {
        for (int b = a + 1; b < g.vertex_count(); ++b) {
            const Edge& ea = vertex_to_edge[a];
            const Edge& eb = vertex_to_edge[b];
            bool share = ea.u == eb.u || ea.u == eb.v || ea.v == eb.u || ea.v == eb.v;
            if (share != g.has_edge(a, b))
                throw internal_error("clique partition does not realize the input line graph");
        }
    }
    return RootGraphResult{std::move(h), std::move(vertex_to_edge)};
}

} // namespace urm
