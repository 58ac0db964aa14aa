#include "urm/embed.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "urm/errors.hpp"
#include "urm/linegraph.hpp"
#include "urm/rng.hpp"
#include "urm/verify.hpp"

namespace urm {

bool valid_embedding(const Graph& pattern, const Graph& host, const Embedding& e) {
    if (static_cast<int>(e.map.size()) != pattern.vertex_count()) return false;
    std::vector<char> used(host.vertex_count(), 0);
    for (Vertex v : e.map) {
        if (v < 0 || v >= host.vertex_count() || used[v]) return false;
        used[v] = 1;
    }
    for (const Edge& pe : pattern.edges())
        if (!host.has_edge(e.map[pe.u], e.map[pe.v])) return false;
    return true;
}

namespace {

// Pattern vertices ordered so that every non-root follows its BFS parent.
struct PlacementPlan {
    std::vector<Vertex> order;
    std::vector<int> parent_pos; // index into order, -1 for component roots
};

PlacementPlan make_plan(const Graph& pattern) {
    PlacementPlan plan;
    std::vector<int> pos(pattern.vertex_count(), -1);
    for (const auto& comp : pattern.components()) {
        Vertex root = comp[0];
        for (Vertex v : comp)
            if (pattern.degree(v) > pattern.degree(root) ||
                (pattern.degree(v) == pattern.degree(root) && v < root))
                root = v;
        pos[root] = static_cast<int>(plan.order.size());
        plan.order.push_back(root);
        plan.parent_pos.push_back(-1);
        for (std::size_t head = plan.order.size() - 1; head < plan.order.size(); ++head) {
            Vertex v = plan.order[head];
            for (Vertex w : pattern.neighbors(v)) {
                if (pos[w] >= 0) continue;
                pos[w] = static_cast<int>(plan.order.size());
                plan.order.push_back(w);
                plan.parent_pos.push_back(static_cast<int>(head));
            }
        }
    }
    return plan;
}

} // namespace

std::optional<Embedding> embed_backtrack(const CandidateForest& f, const Graph& host) {
    const Graph& pattern = f.forest;
    if (host.vertex_count() > 14 && pattern.vertex_count() > 8)
        throw resource_error("instance exceeds the backtracking caps");
    if (pattern.vertex_count() > host.vertex_count()) return std::nullopt;

    PlacementPlan plan = make_plan(pattern);
    std::vector<Vertex> image(pattern.vertex_count(), -1);
    std::vector<char> used(host.vertex_count(), 0);

    auto compatible = [&](Vertex pv, Vertex hv) {
        if (host.degree(hv) < pattern.degree(pv)) return false;
        for (Vertex pw : pattern.neighbors(pv)) {
            if (image[pw] >= 0 && !host.has_edge(hv, image[pw])) return false;
        }
        return true;
    };

    auto search = [&](auto&& self, std::size_t step) -> bool {
        if (step == plan.order.size()) return true;
        Vertex pv = plan.order[step];
        if (plan.parent_pos[step] < 0) {
            for (Vertex hv = 0; hv < host.vertex_count(); ++hv) {
                if (used[hv] || !compatible(pv, hv)) continue;
                used[hv] = 1;
                image[pv] = hv;
                if (self(self, step + 1)) return true;
                image[pv] = -1;
                used[hv] = 0;
            }
        } else {
            Vertex anchor = image[plan.order[plan.parent_pos[step]]];
            for (Vertex hv : host.neighbors(anchor)) {
                if (used[hv] || !compatible(pv, hv)) continue;
                used[hv] = 1;
                image[pv] = hv;
                if (self(self, step + 1)) return true;
                image[pv] = -1;
                used[hv] = 0;
            }
        }
        return false;
    };

    if (!search(search, 0)) return std::nullopt;
    Embedding e{std::move(image)};
    if (!valid_embedding(pattern, host, e))
        throw internal_error("backtracking produced an invalid embedding");
    return e;
}

namespace {

using SubsetFamily = std::vector<std::uint32_t>; // sorted, deduplicated

SubsetFamily merge_disjoint(const SubsetFamily& a, const SubsetFamily& b) {
    SubsetFamily out;
    for (std::uint32_t s : a)
        for (std::uint32_t t : b)
            if ((s & t) == 0) out.push_back(s | t);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Colorful-subtree tables for one tree of the forest: family[u][v] holds the
// color subsets achievable by embedding subtree(u) with u at host vertex v.
struct TreeTables {
    std::vector<Vertex> order;       // parent before child
    std::vector<int> parent_pos;
    std::vector<std::vector<int>> children_pos;
    std::vector<std::vector<SubsetFamily>> family; // [pos][host vertex]
};

TreeTables colorful_tables(const Graph& forest, const std::vector<Vertex>& comp,
                           const Graph& host, const std::vector<int>& color) {
    TreeTables t;
    std::vector<int> pos(forest.vertex_count(), -1);
    Vertex root = comp[0];
    pos[root] = 0;
    t.order.push_back(root);
    t.parent_pos.push_back(-1);
    for (std::size_t head = 0; head < t.order.size(); ++head) {
        Vertex v = t.order[head];
        for (Vertex w : forest.neighbors(v)) {
            if (pos[w] >= 0) continue;
            pos[w] = static_cast<int>(t.order.size());
            t.order.push_back(w);
            t.parent_pos.push_back(static_cast<int>(head));
        }
    }
    t.children_pos.resize(t.order.size());
    for (std::size_t i = 1; i < t.order.size(); ++i)
        t.children_pos[t.parent_pos[i]].push_back(static_cast<int>(i));

    const int hn = host.vertex_count();
    t.family.assign(t.order.size(), std::vector<SubsetFamily>(hn));
    for (int i = static_cast<int>(t.order.size()) - 1; i >= 0; --i) {
        for (Vertex hv = 0; hv < hn; ++hv) {
            SubsetFamily cur{static_cast<std::uint32_t>(1u << color[hv])};
            for (int child : t.children_pos[i]) {
                SubsetFamily reachable;
                for (Vertex hw : host.neighbors(hv)) {
                    const SubsetFamily& f = t.family[child][hw];
                    reachable.insert(reachable.end(), f.begin(), f.end());
                }
                std::sort(reachable.begin(), reachable.end());
                reachable.erase(std::unique(reachable.begin(), reachable.end()),
                                reachable.end());
                cur = merge_disjoint(cur, reachable);
                if (cur.empty()) break;
            }
            t.family[i][hv] = std::move(cur);
        }
    }
    return t;
}

// Extracts one concrete assignment realizing `target` for subtree at `pos`
// rooted at host vertex hv. Families are exact, so this always succeeds.
bool assign_subtree(const TreeTables& t, const Graph& host, const std::vector<int>& color,
                    int pos, Vertex hv, std::uint32_t target, std::vector<Vertex>& image) {
    std::uint32_t rest = target & ~(1u << color[hv]);
    image[t.order[pos]] = hv;
    const auto& kids = t.children_pos[pos];

    auto split = [&](auto&& self, std::size_t k, std::uint32_t remaining) -> bool {
        if (k == kids.size()) return remaining == 0;
        int child = kids[k];
        for (Vertex hw : host.neighbors(hv)) {
            for (std::uint32_t sub : t.family[child][hw]) {
                if ((sub & remaining) != sub) continue;
                if (!assign_subtree(t, host, color, child, hw, sub, image)) continue;
                if (self(self, k + 1, remaining & ~sub)) return true;
            }
        }
        return false;
    };
    return split(split, 0, rest);
}

} // namespace

std::optional<Embedding> color_coding_embed(const CandidateForest& f, const Graph& host,
                                            double delta, std::uint64_t seed) {
    if (!(delta > 0.0 && delta < 1.0)) throw contract_error("delta must lie in (0,1)");
    const Graph& forest = f.forest;
    const int k = forest.vertex_count();
    if (k > host.vertex_count() || k == 0) return std::nullopt;
    if (k > 25) throw resource_error("too many colors for packed subsets");

    double raw = std::ceil(std::exp(static_cast<double>(k)) * std::log(1.0 / delta));
    std::uint64_t trials =
        raw > 9e18 ? std::numeric_limits<std::uint64_t>::max() : static_cast<std::uint64_t>(raw);

    auto comps = forest.components();
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        Rng rng = Rng::derive(seed, trial);
        std::vector<int> color(host.vertex_count());
        for (int v = 0; v < host.vertex_count(); ++v)
            color[v] = static_cast<int>(rng.below(static_cast<std::uint64_t>(k)));

        std::vector<TreeTables> tables;
        tables.reserve(comps.size());
        std::vector<SubsetFamily> tree_sets;
        bool dead = false;
        for (const auto& comp : comps) {
            TreeTables t = colorful_tables(forest, comp, host, color);
            SubsetFamily any;
            for (Vertex hv = 0; hv < host.vertex_count(); ++hv) {
                const auto& fam = t.family[0][hv];
                any.insert(any.end(), fam.begin(), fam.end());
            }
            std::sort(any.begin(), any.end());
            any.erase(std::unique(any.begin(), any.end()), any.end());
            if (any.empty()) {
                dead = true;
                break;
            }
            tree_sets.push_back(std::move(any));
            tables.push_back(std::move(t));
        }
        if (dead) continue;

        SubsetFamily combined{0};
        for (const auto& ts : tree_sets) {
            combined = merge_disjoint(combined, ts);
            if (combined.empty()) break;
        }
        if (combined.empty()) continue;

        // A colorful embedding exists in this trial; extract one. The color
        // budget must split across trees, so failed splits backtrack.
        std::vector<Vertex> image(forest.vertex_count(), -1);
        auto place_trees = [&](auto&& self, std::size_t ti, std::uint32_t remaining) -> bool {
            if (ti == tables.size()) return remaining == 0;
            for (Vertex hv = 0; hv < host.vertex_count(); ++hv) {
                for (std::uint32_t sub : tables[ti].family[0][hv]) {
                    if ((sub & remaining) != sub) continue;
                    if (!assign_subtree(tables[ti], host, color, 0, hv, sub, image)) continue;
                    if (self(self, ti + 1, remaining & ~sub)) return true;
                }
            }
            return false;
        };
        if (!place_trees(place_trees, 0, combined.front()))
            throw internal_error("colorful tables admitted no assignment");
        Embedding e{std::move(image)};
        if (!valid_embedding(forest, host, e))
            throw internal_error("color coding produced an invalid embedding");
        return e;
    }
    return std::nullopt;
}

LineDecision urm_line_decide(const Graph& host, int target, double delta,
                             std::uint64_t seed, EmbedStrategy strategy) {
    if (target < 1) throw contract_error("target must be positive");

    LineDecision decision;
    LineGraphResult line = line_graph(host);
    std::map<Edge, int> edge_to_vertex;
    for (std::size_t i = 0; i < line.vertex_to_edge.size(); ++i)
        edge_to_vertex[line.vertex_to_edge[i]] = static_cast<int>(i);

    for (CandidateForest& cf : candidate_forests(target)) {
        auto decomposition = p3_filter(cf);
        if (!decomposition) continue;
        ++decision.forests_tried;

        std::optional<Embedding> embedding;
        EmbedStrategy pick = strategy;
        if (pick == EmbedStrategy::automatic) {
            bool in_caps = host.vertex_count() <= 14 || cf.forest.vertex_count() <= 8;
            pick = in_caps ? EmbedStrategy::backtrack : EmbedStrategy::color_coding;
        }
        if (pick == EmbedStrategy::backtrack)
            embedding = embed_backtrack(cf, host);
        else
            embedding = color_coding_embed(cf, host, delta, seed);
        if (!embedding) continue;

        // One matching edge of L(host) per path of the decomposition.
        std::vector<Edge> matched;
        for (const auto& p : decomposition->paths) {
            Edge first(embedding->map[p[0]], embedding->map[p[1]]);
            Edge second(embedding->map[p[1]], embedding->map[p[2]]);
            matched.emplace_back(edge_to_vertex.at(first), edge_to_vertex.at(second));
        }
        Matching witness(line.line, std::move(matched));
        if (witness.size() != target)
            throw internal_error("witness size disagrees with the decision target");
        if (!verify_urm_cycle(line.line, witness).uniquely_restricted)
            throw internal_error("decision witness failed verification");

        decision.accepted = true;
        decision.forest = std::move(cf);
        decision.decomposition = std::move(*decomposition);
        decision.embedding = std::move(*embedding);
        decision.witness = std::move(witness);
        return decision;
    }
    return decision;
}

} // namespace urm
