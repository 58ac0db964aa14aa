#include "urm/forests.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include "urm/errors.hpp"

namespace urm {

std::vector<std::vector<int>> integer_partitions(int k) {
    if (k < 1) throw contract_error("k must be positive");
    std::vector<std::vector<int>> out;
    std::vector<int> acc;
    auto gen = [&](auto&& self, int remaining, int max_part) -> void {
        if (remaining == 0) {
            out.push_back(acc);
            return;
        }
        for (int part = std::min(remaining, max_part); part >= 1; --part) {
            acc.push_back(part);
            self(self, remaining - part, part);
            acc.pop_back();
        }
    };
    gen(gen, k, k);
    return out;
}

std::vector<std::vector<int>> integer_partitions_exact(int k, int parts, int min_part) {
    std::vector<std::vector<int>> out;
    std::vector<int> acc;
    auto gen = [&](auto&& self, int remaining, int left, int max_part) -> void {
        if (left == 0) {
            if (remaining == 0) out.push_back(acc);
            return;
        }
        for (int part = std::min(remaining - min_part * (left - 1), max_part);
             part >= min_part; --part) {
            acc.push_back(part);
            self(self, remaining - part, left - 1, part);
            acc.pop_back();
        }
    };
    if (parts >= 1 && k >= min_part * parts) gen(gen, k, parts, k);
    return out;
}

namespace {

// Rooted canonical code: '(' then the children codes sorted ascending, then ')'.
TreeCode rooted_code(const std::vector<std::vector<Vertex>>& adj, Vertex v, Vertex parent) {
    std::vector<TreeCode> kids;
    int size = 1;
    for (Vertex w : adj[v]) {
        if (w == parent) continue;
        kids.push_back(rooted_code(adj, w, v));
        size += kids.back().size;
    }
    std::sort(kids.begin(), kids.end());
    TreeCode code;
    code.size = size;
    code.bits = 1;
    for (const TreeCode& k : kids) {
        code.bits = (code.bits << (2 * k.size)) | k.bits;
    }
    code.bits <<= 1;
    return code;
}

std::vector<Vertex> centroids(const std::vector<std::vector<Vertex>>& adj) {
    const int n = static_cast<int>(adj.size());
    std::vector<int> size(n, 0);
    std::vector<int> best(n, n);
    auto dfs = [&](auto&& self, Vertex v, Vertex parent) -> void {
        size[v] = 1;
        int largest = 0;
        for (Vertex w : adj[v]) {
            if (w == parent) continue;
            self(self, w, v);
            size[v] += size[w];
            largest = std::max(largest, size[w]);
        }
        best[v] = std::max(largest, n - size[v]);
    };
    dfs(dfs, 0, -1);
    int opt = *std::min_element(best.begin(), best.end());
    std::vector<Vertex> out;
    for (int v = 0; v < n; ++v)
        if (best[v] == opt) out.push_back(v);
    return out;
}

std::vector<std::vector<Vertex>> adjacency_of(const Graph& g) {
    std::vector<std::vector<Vertex>> adj(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) adj[v] = g.neighbors(v);
    return adj;
}

} // namespace

TreeCode free_tree_code(const Graph& tree) {
    if (tree.vertex_count() == 0) throw contract_error("empty tree");
    if (tree.vertex_count() > 32) throw resource_error("tree too large for packed codes");
    if (tree.edge_count() != tree.vertex_count() - 1 || !tree.connected())
        throw contract_error("not a tree");
    auto adj = adjacency_of(tree);
    TreeCode best;
    bool first = true;
    for (Vertex c : centroids(adj)) {
        TreeCode code = rooted_code(adj, c, -1);
        if (first || code < best) best = code;
        first = false;
    }
    return best;
}

Graph decode_tree(TreeCode code) {
    Graph g(code.size);
    std::vector<Vertex> stack;
    int next = 0;
    for (int i = 2 * code.size - 1; i >= 0; --i) {
        if ((code.bits >> i) & 1) {
            int v = next++;
            if (!stack.empty()) g.add_edge(stack.back(), v);
            stack.push_back(v);
        } else {
            stack.pop_back();
        }
    }
    return g;
}

namespace {

// Canonical rooted trees by size, built bottom-up: a rooted tree is a root
// plus a non-decreasing multiset of smaller rooted trees.
const std::vector<std::vector<TreeCode>>& rooted_trees_up_to(int s) {
    static std::mutex mu;
    static std::vector<std::vector<TreeCode>> by_size{{}};
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<int>(by_size.size()) <= s) {
        int size = static_cast<int>(by_size.size());
        std::vector<TreeCode> out;
        if (size == 1) {
            out.push_back(TreeCode{0b10, 1});
        } else {
            std::vector<TreeCode> acc;
            auto gen = [&](auto&& self, int remaining, int min_size,
                           std::uint64_t min_bits) -> void {
                if (remaining == 0) {
                    TreeCode code;
                    code.size = size;
                    code.bits = 1;
                    for (const TreeCode& k : acc)
                        code.bits = (code.bits << (2 * k.size)) | k.bits;
                    code.bits <<= 1;
                    out.push_back(code);
                    return;
                }
                for (int child = min_size; child <= remaining; ++child) {
                    for (const TreeCode& k : by_size[child]) {
                        if (child == min_size && k.bits < min_bits) continue;
                        acc.push_back(k);
                        self(self, remaining - child, child, k.bits);
                        acc.pop_back();
                    }
                }
            };
            gen(gen, size - 1, 1, 0);
        }
        std::sort(out.begin(), out.end());
        by_size.push_back(std::move(out));
    }
    return by_size;
}

} // namespace

std::vector<Graph> free_trees(int s, int cap) {
    if (s < 1) throw contract_error("s must be positive");
    if (s > cap) throw resource_error("tree size exceeds the enumeration cap");
    const auto& rooted = rooted_trees_up_to(s);
    std::set<std::uint64_t> seen;
    std::vector<TreeCode> codes;
    for (const TreeCode& rc : rooted[s]) {
        Graph t = decode_tree(rc);
        TreeCode fc = free_tree_code(t);
        if (seen.insert(fc.bits).second) codes.push_back(fc);
    }
    std::sort(codes.begin(), codes.end());
    std::vector<Graph> out;
    out.reserve(codes.size());
    for (const TreeCode& c : codes) out.push_back(decode_tree(c));
    return out;
}

std::vector<CandidateForest> candidate_forests(int target) {
    if (target < 1) throw contract_error("target must be positive");
    std::vector<CandidateForest> out;
    for (int k = 2 * target + 1; k <= 3 * target; ++k) {
        int trees = k - 2 * target;
        for (const auto& partition : integer_partitions_exact(k, trees, 3)) {
            // Component choices: within equal sizes, canonical codes are
            // non-decreasing, so each unlabeled forest appears exactly once.
            std::vector<TreeCode> chosen;
            auto emit = [&]() {
                CandidateForest cf;
                cf.target = target;
                cf.tree_sizes.reserve(chosen.size());
                Graph forest(k);
                int offset = 0;
                std::ostringstream key;
                for (const TreeCode& code : chosen) {
                    cf.tree_sizes.push_back(code.size);
                    Graph t = decode_tree(code);
                    for (const Edge& e : t.edges())
                        forest.add_edge(e.u + offset, e.v + offset);
                    offset += code.size;
                    key << std::hex << code.size << ':' << code.bits << ';';
                }
                cf.forest = std::move(forest);
                cf.canonical_key = key.str();
                out.push_back(std::move(cf));
            };
            auto choose = [&](auto&& self, std::size_t pos, std::uint64_t min_bits) -> void {
                if (pos == partition.size()) {
                    emit();
                    return;
                }
                int size = partition[pos];
                bool same_as_prev = pos > 0 && partition[pos - 1] == size;
                for (const Graph& t : free_trees(size)) {
                    TreeCode code = free_tree_code(t);
                    if (same_as_prev && code.bits < min_bits) continue;
                    chosen.push_back(code);
                    self(self, pos + 1, code.bits);
                    chosen.pop_back();
                }
            };
            choose(choose, 0, 0);
        }
    }
    return out;
}

bool valid_p3_decomposition(const Graph& f, const P3Decomposition& d) {
    std::set<Edge> used;
    std::set<Vertex> centers;
    for (const auto& p : d.paths) {
        if (p[0] == p[2] || p[0] == p[1] || p[1] == p[2]) return false;
        if (!f.has_edge(p[0], p[1]) || !f.has_edge(p[1], p[2])) return false;
        if (!used.insert(Edge(p[0], p[1])).second) return false;
        if (!used.insert(Edge(p[1], p[2])).second) return false;
        if (!centers.insert(p[1]).second) return false;
    }
    return static_cast<int>(used.size()) == f.edge_count();
}

std::optional<P3Decomposition> p3_filter(const CandidateForest& f, bool track_centers) {
    const Graph& forest = f.forest;
    const int n = forest.vertex_count();

    std::vector<std::set<Vertex>> adj(n);
    for (const Edge& e : forest.edges()) {
        adj[e.u].insert(e.v);
        adj[e.v].insert(e.u);
    }

    // Depth order from the smallest id of each component; deepest leaves are
    // handled first so each co-leaf sees only pendant children.
    std::vector<int> depth(n, -1);
    for (int s = 0; s < n; ++s) {
        if (depth[s] >= 0 || adj[s].empty()) continue;
        depth[s] = 0;
        std::vector<Vertex> frontier{s};
        while (!frontier.empty()) {
            std::vector<Vertex> next;
            for (Vertex v : frontier)
                for (Vertex w : adj[v])
                    if (depth[w] < 0) {
                        depth[w] = depth[v] + 1;
                        next.push_back(w);
                    }
            frontier = std::move(next);
        }
    }
    std::vector<Vertex> order;
    for (int v = 0; v < n; ++v)
        if (depth[v] >= 0) order.push_back(v);
    std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
        if (depth[a] != depth[b]) return depth[a] > depth[b];
        return a < b;
    });

    P3Decomposition out;
    std::set<Vertex> centers;
    auto take = [&](Vertex a, Vertex center, Vertex b) {
        if (track_centers && !centers.insert(center).second) return false;
        adj[a].erase(center);
        adj[center].erase(a);
        adj[b].erase(center);
        adj[center].erase(b);
        out.paths.push_back({a, center, b});
        return true;
    };

    for (Vertex v : order) {
        if (adj[v].size() != 1) continue; // consumed, or not a leaf yet
        Vertex u = *adj[v].begin();
        std::vector<Vertex> pendants;
        Vertex through = -1;
        for (Vertex w : adj[u]) {
            if (adj[w].size() == 1) pendants.push_back(w);
            else through = w;
        }
        if (pendants.size() >= 3) return std::nullopt;
        if (pendants.size() == 2) {
            if (!take(pendants[0], u, pendants[1])) return std::nullopt;
        } else {
            // v is the only pendant; the path must continue past u.
            if (through < 0) return std::nullopt;
            if (!take(v, u, through)) return std::nullopt;
        }
    }

    for (int v = 0; v < n; ++v)
        if (!adj[v].empty()) return std::nullopt;
    return out;
}

std::optional<P3Decomposition> p3_filter_oracle(const CandidateForest& f, int edge_cap) {
    const Graph& forest = f.forest;
    if (forest.edge_count() > edge_cap)
        throw resource_error("forest exceeds the oracle edge cap");

    std::vector<Edge> edges = forest.sorted_edges();
    std::map<Edge, int> index;
    for (std::size_t i = 0; i < edges.size(); ++i) index[edges[i]] = static_cast<int>(i);
    std::vector<std::vector<Vertex>> adj(forest.vertex_count());
    for (const Edge& e : edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }

    std::vector<char> covered(edges.size(), 0);
    std::vector<char> centered(forest.vertex_count(), 0);
    P3Decomposition out;

    auto search = [&](auto&& self, std::size_t from) -> bool {
        std::size_t i = from;
        while (i < edges.size() && covered[i]) ++i;
        if (i == edges.size()) return true;
        const Edge& e = edges[i];
        for (Vertex center : {e.u, e.v}) {
            if (centered[center]) continue;
            Vertex leaf = center == e.u ? e.v : e.u;
            for (Vertex w : adj[center]) {
                if (w == leaf) continue;
                int other = index[Edge(center, w)];
                if (covered[other]) continue;
                covered[i] = covered[other] = 1;
                centered[center] = 1;
                out.paths.push_back({leaf, center, w});
                if (self(self, i + 1)) return true;
                out.paths.pop_back();
                centered[center] = 0;
                covered[i] = covered[other] = 0;
            }
        }
        return false;
    };

    if (!search(search, 0)) return std::nullopt;
    return out;
}

} // namespace urm
