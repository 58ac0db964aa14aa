#include "urm/treewidth.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "urm/errors.hpp"

namespace urm {

int TreeDecomposition::width() const {
    std::size_t biggest = 0;
    for (const auto& b : bags) biggest = std::max(biggest, b.size());
    return static_cast<int>(biggest) - 1;
}

int NiceTreeDecomposition::width() const {
    std::size_t biggest = 0;
    for (const auto& n : nodes) biggest = std::max(biggest, n.bag.size());
    return static_cast<int>(biggest) - 1;
}

std::optional<std::string> validate_tree_decomposition(const TreeDecomposition& td,
                                                       const Graph& g) {
    const int b = td.node_count();
    if (b == 0) return "decomposition has no bags";
    if (td.root < 0 || td.root >= b) return "root out of range";
    int roots = 0;
    for (int i = 0; i < b; ++i) {
        if (td.parent[i] < 0) ++roots;
        else if (td.parent[i] >= b) return "parent out of range";
        for (Vertex v : td.bags[i])
            if (v < 0 || v >= g.vertex_count()) return "bag vertex out of range";
    }
    if (roots != 1 || td.parent[td.root] != -1) return "tree must have exactly one root";

    // T.1: bags cover the vertex set.
    std::vector<char> seen(g.vertex_count(), 0);
    for (const auto& bag : td.bags)
        for (Vertex v : bag) seen[v] = 1;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (!seen[v]) return "T.1 violated: vertex in no bag";

    // T.2: every edge lies inside some bag.
    for (const Edge& e : g.edges()) {
        bool ok = false;
        for (const auto& bag : td.bags) {
            if (std::binary_search(bag.begin(), bag.end(), e.u) &&
                std::binary_search(bag.begin(), bag.end(), e.v)) {
                ok = true;
                break;
            }
        }
        if (!ok) return "T.2 violated: edge in no bag";
    }

    // T.3: occurrences of each vertex form a subtree.
    for (int v = 0; v < g.vertex_count(); ++v) {
        int nodes_with = 0, links_with = 0;
        for (int i = 0; i < b; ++i) {
            bool here = std::binary_search(td.bags[i].begin(), td.bags[i].end(), v);
            if (here) ++nodes_with;
            if (here && td.parent[i] >= 0 &&
                std::binary_search(td.bags[td.parent[i]].begin(),
                                   td.bags[td.parent[i]].end(), v))
                ++links_with;
        }
        if (nodes_with > 0 && links_with != nodes_with - 1)
            return "T.3 violated: occurrence set is disconnected";
    }
    return std::nullopt;
}

TreeDecomposition heuristic_tree_decomposition(const Graph& g) {
    const int n = g.vertex_count();
    TreeDecomposition td;
    if (n == 0) {
        td.parent = {-1};
        td.bags = {{}};
        td.root = 0;
        return td;
    }

    std::vector<std::set<Vertex>> adj(n);
    for (const Edge& e : g.edges()) {
        adj[e.u].insert(e.v);
        adj[e.v].insert(e.u);
    }
    std::vector<char> alive(n, 1);
    std::vector<int> position(n, -1);
    std::vector<std::vector<Vertex>> bags;
    std::vector<Vertex> order;

    auto fill_in = [&](Vertex v) {
        int missing = 0;
        std::vector<Vertex> nb(adj[v].begin(), adj[v].end());
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j)
                if (!adj[nb[i]].count(nb[j])) ++missing;
        return missing;
    };

    for (int step = 0; step < n; ++step) {
        Vertex pick = -1;
        int best = -1;
        for (Vertex v = 0; v < n; ++v) {
            if (!alive[v]) continue;
            int f = fill_in(v);
            if (pick < 0 || f < best) {
                pick = v;
                best = f;
            }
        }
        std::vector<Vertex> bag(adj[pick].begin(), adj[pick].end());
        bag.push_back(pick);
        std::sort(bag.begin(), bag.end());
        position[pick] = step;
        order.push_back(pick);
        bags.push_back(std::move(bag));

        std::vector<Vertex> nb(adj[pick].begin(), adj[pick].end());
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j) {
                adj[nb[i]].insert(nb[j]);
                adj[nb[j]].insert(nb[i]);
            }
        for (Vertex w : nb) adj[w].erase(pick);
        adj[pick].clear();
        alive[pick] = 0;
    }

    td.bags = std::move(bags);
    td.parent.assign(n, -1);
    for (int i = 0; i < n; ++i) {
        // Attach to the bag of the earliest-eliminated remaining member.
        int best_pos = n;
        for (Vertex v : td.bags[i]) {
            if (v == order[i]) continue;
            best_pos = std::min(best_pos, position[v]);
        }
        if (best_pos < n) td.parent[i] = best_pos;
        else if (i + 1 < n) td.parent[i] = i + 1;
    }
    td.root = n - 1;
    return td;
}

TreeDecomposition parse_td(std::istream& in) {
    std::string line;
    int lineno = 0;
    long long nbags = -1, maxbag = -1, n = -1;
    TreeDecomposition td;
    std::vector<char> have_bag;
    std::vector<std::pair<int, int>> links;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ss(line);
        if (nbags < 0) {
            std::string s, kind;
            if (!(ss >> s >> kind >> nbags >> maxbag >> n) || s != "s" || kind != "td" ||
                nbags < 1 || n < 0)
                throw parse_error("expected header 's td <#bags> <maxbagsize> <n>'", lineno);
            td.bags.assign(nbags, {});
            td.parent.assign(nbags, -1);
            have_bag.assign(nbags, 0);
            continue;
        }
        if (line[0] == 'b') {
            char tag;
            long long id;
            std::istringstream bs(line);
            if (!(bs >> tag >> id) || id < 1 || id > nbags)
                throw parse_error("bad bag line", lineno);
            if (have_bag[id - 1]) throw parse_error("duplicate bag id", lineno);
            have_bag[id - 1] = 1;
            long long v;
            while (bs >> v) {
                if (v < 0 || v >= n) throw parse_error("bag vertex out of range", lineno);
                td.bags[id - 1].push_back(static_cast<int>(v));
            }
            std::sort(td.bags[id - 1].begin(), td.bags[id - 1].end());
            if (std::adjacent_find(td.bags[id - 1].begin(), td.bags[id - 1].end()) !=
                td.bags[id - 1].end())
                throw parse_error("repeated vertex in bag", lineno);
            if (static_cast<long long>(td.bags[id - 1].size()) > maxbag)
                throw parse_error("bag larger than declared maximum", lineno);
            continue;
        }
        long long a, b;
        if (!(ss >> a >> b) || a < 1 || a > nbags || b < 1 || b > nbags || a == b)
            throw parse_error("bad decomposition edge", lineno);
        links.emplace_back(static_cast<int>(a - 1), static_cast<int>(b - 1));
    }
    if (nbags < 0) throw parse_error("missing 's td' header", lineno);
    if (static_cast<long long>(links.size()) != nbags - 1)
        throw parse_error("decomposition is not a tree", lineno);

    // Root at bag 1 and orient the links.
    std::vector<std::vector<int>> nb(nbags);
    for (auto [a, b] : links) {
        nb[a].push_back(b);
        nb[b].push_back(a);
    }
    std::vector<int> stack{0};
    std::vector<char> seen(nbags, 0);
    seen[0] = 1;
    int visited = 0;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        ++visited;
        for (int y : nb[x]) {
            if (!seen[y]) {
                seen[y] = 1;
                td.parent[y] = x;
                stack.push_back(y);
            }
        }
    }
    if (visited != nbags) throw parse_error("decomposition is not connected", lineno);
    td.root = 0;
    return td;
}

TreeDecomposition read_td_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open '" + path + "'", 0);
    return parse_td(in);
}

void write_td(std::ostream& out, const TreeDecomposition& td, int vertex_count) {
    std::size_t maxbag = 0;
    for (const auto& b : td.bags) maxbag = std::max(maxbag, b.size());
    out << "s td " << td.node_count() << ' ' << maxbag << ' ' << vertex_count << '\n';
    for (int i = 0; i < td.node_count(); ++i) {
        out << "b " << (i + 1);
        for (Vertex v : td.bags[i]) out << ' ' << v;
        out << '\n';
    }
    for (int i = 0; i < td.node_count(); ++i)
        if (td.parent[i] >= 0) out << (td.parent[i] + 1) << ' ' << (i + 1) << '\n';
}

namespace {

// Mutable builder tree; finalized into evaluation order at the end.
struct Builder {
    std::vector<NiceNode> nodes;

    int add(NodeKind kind, std::vector<Vertex> bag, std::vector<int> children) {
        NiceNode n;
        n.kind = kind;
        n.bag = std::move(bag);
        n.children = std::move(children);
        nodes.push_back(std::move(n));
        return static_cast<int>(nodes.size()) - 1;
    }
};

std::vector<Vertex> without(const std::vector<Vertex>& bag, Vertex v) {
    std::vector<Vertex> out;
    out.reserve(bag.size());
    for (Vertex x : bag)
        if (x != v) out.push_back(x);
    return out;
}

std::vector<Vertex> with(const std::vector<Vertex>& bag, Vertex v) {
    std::vector<Vertex> out = bag;
    out.insert(std::lower_bound(out.begin(), out.end(), v), v);
    return out;
}

} // namespace

NiceTreeDecomposition to_nice(const TreeDecomposition& td, const Graph& g) {
    if (auto why = validate_tree_decomposition(td, g))
        throw contract_error("invalid tree decomposition: " + *why);

    std::vector<std::vector<int>> kids(td.node_count());
    for (int i = 0; i < td.node_count(); ++i)
        if (td.parent[i] >= 0) kids[td.parent[i]].push_back(i);

    Builder b;

    // Chain from `top` (whose bag is `from`) to a node with bag `to`:
    // forget the extras, then introduce the missing vertices.
    auto morph = [&](int top, const std::vector<Vertex>& from_bag,
                     const std::vector<Vertex>& to_bag) {
        std::vector<Vertex> cur = from_bag;
        for (Vertex v : from_bag) {
            if (!std::binary_search(to_bag.begin(), to_bag.end(), v)) {
                cur = without(cur, v);
                top = b.add(NodeKind::forget, cur, {top});
                b.nodes[top].vertex = v;
            }
        }
        for (Vertex v : to_bag) {
            if (!std::binary_search(from_bag.begin(), from_bag.end(), v)) {
                cur = with(cur, v);
                top = b.add(NodeKind::introduce_vertex, cur, {top});
                b.nodes[top].vertex = v;
            }
        }
        return top;
    };

    auto build = [&](auto&& self, int node) -> int {
        const std::vector<Vertex>& bag = td.bags[node];
        std::vector<int> tops;
        for (int c : kids[node]) {
            int sub = self(self, c);
            tops.push_back(morph(sub, td.bags[c], bag));
        }
        if (tops.empty()) {
            int top = b.add(NodeKind::leaf, {}, {});
            return morph(top, {}, bag);
        }
        int acc = tops[0];
        for (std::size_t i = 1; i < tops.size(); ++i)
            acc = b.add(NodeKind::join, bag, {acc, tops[i]});
        return acc;
    };

    int top = build(build, td.root);
    top = morph(top, td.bags[td.root], {});
    // A bare graph with no vertices still needs a root.
    if (b.nodes.empty()) top = b.add(NodeKind::leaf, {}, {});

    // Locate each vertex's highest occurrence.
    std::vector<int> parent(b.nodes.size(), -1);
    for (std::size_t i = 0; i < b.nodes.size(); ++i)
        for (int c : b.nodes[i].children) parent[c] = static_cast<int>(i);

    std::vector<int> top_of(g.vertex_count(), -1);
    std::vector<int> depth(b.nodes.size(), 0);
    {
        // Depths from the builder root.
        std::vector<int> stack{top};
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int c : b.nodes[x].children) {
                depth[c] = depth[x] + 1;
                stack.push_back(c);
            }
        }
    }
    for (std::size_t i = 0; i < b.nodes.size(); ++i) {
        for (Vertex v : b.nodes[i].bag) {
            int p = parent[i];
            bool gone_above =
                p < 0 || !std::binary_search(b.nodes[p].bag.begin(), b.nodes[p].bag.end(), v);
            if (gone_above) top_of[v] = static_cast<int>(i);
        }
    }

    // Each edge goes just below the forget of its earlier-forgotten endpoint.
    std::map<int, std::vector<Edge>> chain_at;
    for (const Edge& e : g.sorted_edges()) {
        int tu = top_of[e.u];
        int tv = top_of[e.v];
        chain_at[depth[tu] > depth[tv] ? tu : tv].push_back(e);
    }
    for (const auto& [node, edges] : chain_at) {
        int below = node;
        int above = parent[node];
        for (const Edge& e : edges) {
            int x = b.add(NodeKind::introduce_edge, b.nodes[node].bag, {below});
            b.nodes[x].edge = e;
            parent.push_back(above);
            parent[below] = x;
            below = x;
        }
        if (above >= 0) {
            for (int& c : b.nodes[above].children)
                if (c == node) c = below;
        } else {
            top = below;
        }
    }

    // Renumber into evaluation order (children before parents).
    NiceTreeDecomposition out;
    std::vector<int> remap(b.nodes.size(), -1);
    auto place = [&](auto&& self, int x) -> int {
        std::vector<int> mapped;
        for (int c : b.nodes[x].children) mapped.push_back(self(self, c));
        NiceNode n = b.nodes[x];
        n.children = std::move(mapped);
        out.nodes.push_back(std::move(n));
        remap[x] = static_cast<int>(out.nodes.size()) - 1;
        return remap[x];
    };
    out.root = place(place, top);
    return out;
}

namespace {

bool bag_has(const std::vector<Vertex>& bag, Vertex v) {
    return std::binary_search(bag.begin(), bag.end(), v);
}

} // namespace

std::optional<std::string> validate_nice(const NiceTreeDecomposition& ntd, const Graph& g) {
    const int count = ntd.node_count();
    if (count == 0 || ntd.root < 0 || ntd.root >= count) return "missing root";

    std::vector<int> parent(count, -1);
    for (int i = 0; i < count; ++i) {
        for (int c : ntd.nodes[i].children) {
            if (c < 0 || c >= count || parent[c] != -1 || c == ntd.root)
                return "malformed tree structure";
            parent[c] = i;
        }
    }
    for (int i = 0; i < count; ++i)
        if (i != ntd.root && parent[i] < 0) return "node detached from the root";

    if (!ntd.nodes[ntd.root].bag.empty()) return "N.1 violated: root bag not empty";

    std::map<Edge, int> introduced;
    for (int i = 0; i < count; ++i) {
        const NiceNode& n = ntd.nodes[i];
        switch (n.kind) {
            case NodeKind::leaf:
                if (!n.children.empty()) return "leaf with children";
                if (!n.bag.empty()) return "N.1 violated: leaf bag not empty";
                break;
            case NodeKind::introduce_vertex: {
                if (n.children.size() != 1) return "introduce-vertex arity";
                const auto& cb = ntd.nodes[n.children[0]].bag;
                if (bag_has(cb, n.vertex) || !bag_has(n.bag, n.vertex) ||
                    n.bag.size() != cb.size() + 1 ||
                    !std::includes(n.bag.begin(), n.bag.end(), cb.begin(), cb.end()))
                    return "N.2 violated at an introduce-vertex node";
                break;
            }
            case NodeKind::forget: {
                if (n.children.size() != 1) return "forget arity";
                const auto& cb = ntd.nodes[n.children[0]].bag;
                if (!bag_has(cb, n.vertex) || bag_has(n.bag, n.vertex) ||
                    cb.size() != n.bag.size() + 1 ||
                    !std::includes(cb.begin(), cb.end(), n.bag.begin(), n.bag.end()))
                    return "N.2 violated at a forget node";
                break;
            }
            case NodeKind::join: {
                if (n.children.size() != 2) return "join arity";
                if (ntd.nodes[n.children[0]].bag != n.bag ||
                    ntd.nodes[n.children[1]].bag != n.bag)
                    return "N.2 violated at a join node";
                break;
            }
            case NodeKind::introduce_edge: {
                if (n.children.size() != 1) return "introduce-edge arity";
                if (ntd.nodes[n.children[0]].bag != n.bag)
                    return "N.2 violated at an introduce-edge node";
                if (!g.has_edge(n.edge.u, n.edge.v)) return "introduced edge not in the graph";
                if (!bag_has(n.bag, n.edge.u) || !bag_has(n.bag, n.edge.v))
                    return "introduced edge endpoints outside the bag";
                ++introduced[n.edge];
                break;
            }
        }
    }
    for (const Edge& e : g.edges()) {
        auto it = introduced.find(e);
        if (it == introduced.end()) return "edge never introduced";
        if (it->second != 1) return "edge introduced more than once";
        introduced.erase(it);
    }
    if (!introduced.empty()) return "introduced an edge absent from the graph";

    // Underlying decomposition axioms.
    TreeDecomposition flat;
    flat.parent = parent;
    flat.root = ntd.root;
    for (const NiceNode& n : ntd.nodes) flat.bags.push_back(n.bag);
    if (auto why = validate_tree_decomposition(flat, g)) return why;

    // Highest occurrence per vertex.
    std::vector<int> top_of(g.vertex_count(), -1);
    for (int i = 0; i < count; ++i) {
        for (Vertex v : ntd.nodes[i].bag) {
            int p = parent[i];
            if (p < 0 || !bag_has(ntd.nodes[p].bag, v)) top_of[v] = i;
        }
    }
    std::vector<int> depth(count, 0);
    {
        std::vector<int> stack{ntd.root};
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int c : ntd.nodes[x].children) {
                depth[c] = depth[x] + 1;
                stack.push_back(c);
            }
        }
    }

    // Deferred placement: climbing from the introduce-edge node passes only
    // other introduce-edge nodes until the forget of the lower endpoint.
    for (int i = 0; i < count; ++i) {
        const NiceNode& n = ntd.nodes[i];
        if (n.kind != NodeKind::introduce_edge) continue;
        Vertex lower =
            depth[top_of[n.edge.u]] > depth[top_of[n.edge.v]] ? n.edge.u : n.edge.v;
        int p = parent[i];
        while (p >= 0 && ntd.nodes[p].kind == NodeKind::introduce_edge) p = parent[p];
        if (p < 0 || ntd.nodes[p].kind != NodeKind::forget || ntd.nodes[p].vertex != lower)
            return "deferred-edge placement violated";
    }

    // Join independence: edges inside a join bag are introduced above it.
    std::vector<int> intro_node(g.edge_count(), -1);
    {
        std::map<Edge, int> index;
        auto sorted = g.sorted_edges();
        for (std::size_t i = 0; i < sorted.size(); ++i) index[sorted[i]] = static_cast<int>(i);
        for (int i = 0; i < count; ++i)
            if (ntd.nodes[i].kind == NodeKind::introduce_edge)
                intro_node[index[ntd.nodes[i].edge]] = i;
        for (int j = 0; j < count; ++j) {
            if (ntd.nodes[j].kind != NodeKind::join) continue;
            for (std::size_t ei = 0; ei < sorted.size(); ++ei) {
                const Edge& e = sorted[ei];
                if (!bag_has(ntd.nodes[j].bag, e.u) || !bag_has(ntd.nodes[j].bag, e.v))
                    continue;
                int x = intro_node[ei];
                // x must be a strict ancestor of j.
                bool ancestor = false;
                for (int a = parent[j]; a >= 0; a = parent[a])
                    if (a == x) {
                        ancestor = true;
                        break;
                    }
                if (!ancestor) return "join independence violated";
            }
        }
    }
    return std::nullopt;
}

} // namespace urm
