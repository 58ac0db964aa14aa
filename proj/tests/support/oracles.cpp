#include "support/oracles.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <map>
#include <set>
#include <unordered_set>

namespace oracles {

using urm::Edge;
using urm::Graph;
using urm::Vertex;

void for_each_matching(const Graph& g,
                       const std::function<void(const std::vector<Edge>&)>& cb) {
    std::vector<Edge> edges = g.sorted_edges();
    std::vector<char> used(g.vertex_count(), 0);
    std::vector<Edge> current;
    auto rec = [&](auto&& self, std::size_t pos) -> void {
        cb(current);
        for (std::size_t i = pos; i < edges.size(); ++i) {
            const Edge& e = edges[i];
            if (used[e.u] || used[e.v]) continue;
            used[e.u] = used[e.v] = 1;
            current.push_back(e);
            self(self, i + 1);
            current.pop_back();
            used[e.u] = used[e.v] = 0;
        }
    };
    rec(rec, 0);
}

int induced_pm_count(const Graph& g, const std::vector<Edge>& matching, int cap) {
    std::vector<char> in_set(g.vertex_count(), 0);
    for (const Edge& e : matching) in_set[e.u] = in_set[e.v] = 1;
    std::vector<Vertex> members;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (in_set[v]) members.push_back(v);

    std::vector<char> covered(g.vertex_count(), 0);
    int count = 0;
    auto rec = [&](auto&& self, std::size_t pos) -> void {
        if (count >= cap) return;
        while (pos < members.size() && covered[members[pos]]) ++pos;
        if (pos == members.size()) {
            ++count;
            return;
        }
        Vertex v = members[pos];
        for (Vertex w : g.neighbors(v)) {
            if (!in_set[w] || covered[w]) continue;
            covered[v] = covered[w] = 1;
            self(self, pos + 1);
            covered[v] = covered[w] = 0;
        }
    };
    rec(rec, 0);
    return count;
}

bool urm_by_definition(const Graph& g, const std::vector<Edge>& matching) {
    return induced_pm_count(g, matching) == 1;
}

int naive_max_urm(const Graph& g) {
    int best = 0;
    for_each_matching(g, [&](const std::vector<Edge>& m) {
        if (static_cast<int>(m.size()) > best && urm_by_definition(g, m))
            best = static_cast<int>(m.size());
    });
    return best;
}

namespace {

std::vector<int> degree_sequence(const Graph& g) {
    std::vector<int> d;
    for (int v = 0; v < g.vertex_count(); ++v) d.push_back(g.degree(v));
    std::sort(d.begin(), d.end());
    return d;
}

bool iso_backtrack(const Graph& a, const Graph& b, std::vector<int>& map,
                   std::vector<char>& used, int v) {
    if (v == a.vertex_count()) return true;
    for (int w = 0; w < b.vertex_count(); ++w) {
        if (used[w] || a.degree(v) != b.degree(w)) continue;
        bool ok = true;
        for (int prev = 0; prev < v && ok; ++prev)
            if (a.has_edge(prev, v) != b.has_edge(map[prev], w)) ok = false;
        if (!ok) continue;
        used[w] = 1;
        map[v] = w;
        if (iso_backtrack(a, b, map, used, v + 1)) return true;
        used[w] = 0;
    }
    return false;
}

} // namespace

bool isomorphic(const Graph& a, const Graph& b) {
    if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
    if (degree_sequence(a) != degree_sequence(b)) return false;
    std::vector<int> map(a.vertex_count(), -1);
    std::vector<char> used(b.vertex_count(), 0);
    return iso_backtrack(a, b, map, used, 0);
}

namespace {

Graph graph_from_mask(int n, std::uint32_t mask) {
    Graph g(n);
    int bit = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++bit)
            if (mask & (1u << bit)) g.add_edge(i, j);
    return g;
}

// Cheap isomorphism invariant: per-vertex (degree, sorted neighbor degrees,
// triangles at the vertex), sorted.
std::string invariant_of(const Graph& g) {
    std::string out;
    std::vector<std::string> rows;
    for (int v = 0; v < g.vertex_count(); ++v) {
        std::string row;
        row.push_back(static_cast<char>(g.degree(v)));
        std::vector<int> nd;
        int tri = 0;
        const auto& nb = g.neighbors(v);
        for (Vertex w : nb) nd.push_back(g.degree(w));
        std::sort(nd.begin(), nd.end());
        for (int d : nd) row.push_back(static_cast<char>(d));
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j)
                if (g.has_edge(nb[i], nb[j])) ++tri;
        row.push_back(static_cast<char>(tri));
        rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end());
    for (const auto& r : rows) {
        out += r;
        out.push_back('|');
    }
    return out;
}

std::vector<Graph> dedup_by_iso(const std::vector<Graph>& input) {
    std::map<std::string, std::vector<int>> buckets;
    std::vector<Graph> reps;
    for (const Graph& g : input) {
        std::string key = invariant_of(g);
        auto& bucket = buckets[key];
        bool fresh = true;
        for (int idx : bucket) {
            if (isomorphic(g, reps[idx])) {
                fresh = false;
                break;
            }
        }
        if (fresh) {
            bucket.push_back(static_cast<int>(reps.size()));
            reps.push_back(g);
        }
    }
    return reps;
}

struct TinyTree {
    int n = 0;
    int head[16];
    int next[32];
    int to[32];
    int edges = 0;

    void init(int count) {
        n = count;
        edges = 0;
        std::fill(head, head + n, -1);
    }
    void link(int a, int b) {
        to[edges] = b;
        next[edges] = head[a];
        head[a] = edges++;
        to[edges] = a;
        next[edges] = head[b];
        head[b] = edges++;
    }
};

int subtree_sizes(const TinyTree& t, int v, int parent, int* size, int* par) {
    size[v] = 1;
    par[v] = parent;
    for (int e = t.head[v]; e >= 0; e = t.next[e]) {
        int w = t.to[e];
        if (w == parent) continue;
        size[v] += subtree_sizes(t, w, v, size, par);
    }
    return size[v];
}

std::uint64_t packed_code(const TinyTree& t, int v, int parent, int* out_size) {
    std::uint64_t kids[16];
    int sizes[16];
    int count = 0;
    int total = 1;
    for (int e = t.head[v]; e >= 0; e = t.next[e]) {
        int w = t.to[e];
        if (w == parent) continue;
        int sz = 0;
        kids[count] = packed_code(t, w, v, &sz);
        sizes[count] = sz;
        total += sz;
        ++count;
    }
    // Insertion sort by (size, bits).
    for (int i = 1; i < count; ++i) {
        std::uint64_t kb = kids[i];
        int ks = sizes[i];
        int j = i - 1;
        while (j >= 0 && (sizes[j] > ks || (sizes[j] == ks && kids[j] > kb))) {
            kids[j + 1] = kids[j];
            sizes[j + 1] = sizes[j];
            --j;
        }
        kids[j + 1] = kb;
        sizes[j + 1] = ks;
    }
    std::uint64_t bits = 1;
    for (int i = 0; i < count; ++i) bits = (bits << (2 * sizes[i])) | kids[i];
    bits <<= 1;
    *out_size = total;
    return bits;
}

std::uint64_t free_code_of(const TinyTree& t) {
    int size[16];
    int par[16];
    subtree_sizes(t, 0, -1, size, par);
    const int n = t.n;
    int best = n + 1;
    int centroid[2];
    int centroid_count = 0;
    for (int v = 0; v < n; ++v) {
        int largest = v == 0 ? 0 : n - size[v];
        for (int e = t.head[v]; e >= 0; e = t.next[e]) {
            int w = t.to[e];
            if (par[w] == v) largest = std::max(largest, size[w]);
        }
        if (largest < best) {
            best = largest;
            centroid_count = 0;
        }
        if (largest == best && centroid_count < 2) centroid[centroid_count++] = v;
    }
    std::uint64_t code = ~0ULL;
    for (int i = 0; i < centroid_count; ++i) {
        int sz = 0;
        code = std::min(code, packed_code(t, centroid[i], -1, &sz));
    }
    return code;
}

// Distinct unlabeled trees on n vertices, one representative graph each.
std::vector<Graph> distinct_trees(int n);

using TreeEdges = std::array<std::pair<int, int>, 16>; // first n-1 entries used

// Labeled trees on n vertices from sequence codes (one code per tree).
void for_each_labeled_tree(int n, const std::function<void(const TreeEdges&)>& cb) {
    TreeEdges edges{};
    if (n == 1) {
        cb(edges);
        return;
    }
    if (n == 2) {
        edges[0] = {0, 1};
        cb(edges);
        return;
    }
    std::vector<int> code(n - 2, 0);
    int degree[16];
    for (;;) {
        // Decode: attach the smallest-index leaf to the next code element.
        for (int i = 0; i < n; ++i) degree[i] = 1;
        for (int c : code) ++degree[c];
        int ptr = 0;
        while (degree[ptr] != 1) ++ptr;
        int leaf = ptr;
        int out = 0;
        for (int c : code) {
            edges[out++] = {leaf, c};
            if (--degree[c] == 1 && c < ptr) {
                leaf = c;
            } else {
                ++ptr;
                while (degree[ptr] != 1) ++ptr;
                leaf = ptr;
            }
        }
        edges[out++] = {leaf, n - 1};
        cb(edges);
        int pos = n - 3;
        while (pos >= 0 && code[pos] == n - 1) {
            code[pos] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++code[pos];
    }
}

std::vector<Graph> distinct_trees(int n) {
    std::map<std::uint64_t, Graph> reps;
    TinyTree t;
    for_each_labeled_tree(n, [&](const TreeEdges& edges) {
        t.init(n);
        for (int i = 0; i + 1 < n; ++i) t.link(edges[i].first, edges[i].second);
        std::uint64_t code = free_code_of(t);
        if (reps.count(code)) return;
        Graph g(n);
        for (int i = 0; i + 1 < n; ++i) g.add_edge(edges[i].first, edges[i].second);
        reps.emplace(code, std::move(g));
    });
    std::vector<Graph> out;
    for (auto& [code, g] : reps) out.push_back(std::move(g));
    return out;
}

} // namespace

const std::vector<Graph>& connected_graphs(int n, int max_edges) {
    static std::map<std::pair<int, int>, std::vector<Graph>> cache;
    auto key = std::make_pair(n, max_edges);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    std::vector<Graph> all;
    const int bits = n * (n - 1) / 2;
    for (std::uint32_t mask = 0; mask < (1u << bits); ++mask) {
        if (max_edges >= 0 && std::popcount(mask) > max_edges) continue;
        Graph g = graph_from_mask(n, mask);
        if (!g.connected()) continue;
        all.push_back(std::move(g));
    }
    return cache.emplace(key, dedup_by_iso(all)).first->second;
}

std::vector<Graph> connected_graphs_by_edges(int max_edges) {
    std::vector<Graph> out;
    // Small orders by full enumeration.
    for (int n = 2; n <= 7; ++n) {
        for (const Graph& g : connected_graphs(n, max_edges))
            if (g.edge_count() >= 1) out.push_back(g);
    }
    // Larger orders are forced sparse: trees, plus one extra edge at n = 8.
    for (int n = 8; n <= max_edges + 1; ++n) {
        std::vector<Graph> reps = distinct_trees(n);
        for (const Graph& t : reps) out.push_back(t);
        if (n <= max_edges) {
            std::vector<Graph> unicyclic;
            for (const Graph& t : reps) {
                for (int a = 0; a < n; ++a)
                    for (int b = a + 1; b < n; ++b) {
                        if (t.has_edge(a, b)) continue;
                        Graph g = t;
                        g.add_edge(a, b);
                        unicyclic.push_back(std::move(g));
                    }
            }
            for (const Graph& g : dedup_by_iso(unicyclic)) out.push_back(g);
        }
    }
    return out;
}

std::uint64_t count_free_trees_labeled(int n) {
    if (n == 1 || n == 2) return 1;
    std::unordered_set<std::uint64_t> seen;
    TinyTree t;
    for_each_labeled_tree(n, [&](const TreeEdges& edges) {
        t.init(n);
        for (int i = 0; i + 1 < n; ++i) t.link(edges[i].first, edges[i].second);
        seen.insert(free_code_of(t));
    });
    return seen.size();
}

bool alternating_path_exists(const Graph& g, const std::vector<int>& mate, Vertex from,
                             Vertex to, bool from_matched_end, bool to_matched_end) {
    if (from == to) return false;
    std::vector<char> visited(g.vertex_count(), 0);

    // last_matched: the edge that brought us to `cur` was a matched edge.
    auto walk = [&](auto&& self, Vertex cur, bool last_matched) -> bool {
        if (cur == to) return last_matched == to_matched_end;
        for (Vertex w : g.neighbors(cur)) {
            bool edge_matched = mate[cur] == w;
            if (edge_matched == last_matched) continue; // must alternate
            if (visited[w]) continue;
            if (w != to && mate[w] < 0) continue; // interior must be matched
            visited[w] = 1;
            if (self(self, w, edge_matched)) return true;
            visited[w] = 0;
        }
        return false;
    };

    visited[from] = 1;
    for (Vertex w : g.neighbors(from)) {
        bool edge_matched = mate[from] == w;
        if (edge_matched != from_matched_end) continue;
        if (w != to && mate[w] < 0) continue;
        visited[w] = 1;
        if (walk(walk, w, edge_matched)) return true;
        visited[w] = 0;
    }
    return false;
}

std::uint64_t partition_count(int k) {
    std::vector<std::vector<std::uint64_t>> p(k + 1, std::vector<std::uint64_t>(k + 1, 0));
    for (int cap = 0; cap <= k; ++cap) p[0][cap] = 1;
    for (int n = 1; n <= k; ++n)
        for (int cap = 1; cap <= k; ++cap) {
            p[n][cap] = p[n][cap - 1];
            if (n >= cap) p[n][cap] += p[n - cap][cap];
        }
    return p[k][k];
}

std::vector<Edge> random_matching(const Graph& g, urm::Rng& rng) {
    std::vector<Edge> edges = g.sorted_edges();
    for (std::size_t i = edges.size(); i > 1; --i)
        std::swap(edges[i - 1], edges[rng.below(i)]);
    std::vector<char> used(g.vertex_count(), 0);
    std::vector<Edge> out;
    for (const Edge& e : edges) {
        if (used[e.u] || used[e.v]) continue;
        if (rng.below(2) == 0) continue;
        used[e.u] = used[e.v] = 1;
        out.push_back(e);
    }
    return out;
}

int min_vertex_cover_size(const Graph& g) {
    const int n = g.vertex_count();
    for (int k = 0; k <= n; ++k) {
        // All subsets of size k.
        std::vector<int> pick(k);
        auto rec = [&](auto&& self, int start, int depth) -> bool {
            if (depth == k) {
                for (const Edge& e : g.edges()) {
                    bool covered = false;
                    for (int i = 0; i < k; ++i)
                        if (pick[i] == e.u || pick[i] == e.v) covered = true;
                    if (!covered) return false;
                }
                return true;
            }
            for (int v = start; v < n; ++v) {
                pick[depth] = v;
                if (self(self, v + 1, depth + 1)) return true;
            }
            return false;
        };
        if (rec(rec, 0, 0)) return k;
    }
    return n;
}

int naive_max_matching(const Graph& g) {
    int best = 0;
    for_each_matching(g, [&](const std::vector<Edge>& m) {
        best = std::max(best, static_cast<int>(m.size()));
    });
    return best;
}

} // namespace oracles
