#include "urm/exact.hpp"

#include <algorithm>
#include <cmath>

#include "urm/errors.hpp"
#include "urm/matching_engine.hpp"

namespace urm {
namespace {

using Clock = std::chrono::steady_clock;

std::vector<Edge> search_order(const Graph& g) {
    std::vector<Edge> order = g.sorted_edges();
    std::stable_sort(order.begin(), order.end(), [&](const Edge& a, const Edge& b) {
        return g.degree(a.u) + g.degree(a.v) > g.degree(b.u) + g.degree(b.v);
    });
    return order;
}

// Shared machinery for the two exact solvers. The partial matching is always
// uniquely restricted; feasibility of adding an edge reduces to one rooted
// alternating search through that edge.
class UrmSearch {
public:
    explicit UrmSearch(const Graph& g)
        : g_(g), order_(search_order(g)), mate_(g.vertex_count(), -1), bm_(g) {}

    bool adding_creates_cycle(Edge e) {
        // mate_ already contains e.
        std::vector<char> allowed(g_.vertex_count(), 0);
        std::vector<int> without(g_.vertex_count(), -1);
        for (int v = 0; v < g_.vertex_count(); ++v) {
            if (mate_[v] >= 0) allowed[v] = 1;
            without[v] = mate_[v];
        }
        without[e.u] = -1;
        without[e.v] = -1;
        bm_.restrict_to(std::move(allowed));
        bm_.forbid(e);
        bm_.seed_matching(std::move(without));
        return bm_.augment_from(e.u);
    }

    bool try_add(Edge e) {
        if (mate_[e.u] >= 0 || mate_[e.v] >= 0) return false;
        mate_[e.u] = e.v;
        mate_[e.v] = e.u;
        if (adding_creates_cycle(e)) {
            mate_[e.u] = -1;
            mate_[e.v] = -1;
            return false;
        }
        current_.push_back(e);
        return true;
    }

    void remove_last() {
        Edge e = current_.back();
        current_.pop_back();
        mate_[e.u] = -1;
        mate_[e.v] = -1;
    }

    std::vector<Edge> greedy_seed() {
        for (const Edge& e : order_) try_add(e);
        std::vector<Edge> seed = current_;
        while (!current_.empty()) remove_last();
        return seed;
    }

    const Graph& g_;
    std::vector<Edge> order_;
    std::vector<int> mate_;
    std::vector<Edge> current_;
    BlossomMatcher bm_;
};

UrmSolution finish(const Graph& g, std::vector<Edge> best, bool optimal,
                   std::uint64_t nodes, Clock::time_point start) {
    UrmSolution sol;
    sol.matching = Matching(g, std::move(best));
    sol.size = sol.matching.size();
    sol.optimal = optimal;
    sol.nodes_explored = nodes;
    sol.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - start);
    return sol;
}

} // namespace

UrmSolution max_urm_brute(const Graph& g, int vertex_cap) {
    if (g.vertex_count() > vertex_cap)
        throw resource_error("graph exceeds the brute-force vertex cap");
    auto start = Clock::now();
    UrmSearch search(g);
    std::vector<Edge> best;
    std::uint64_t nodes = 0;
    const int m = static_cast<int>(search.order_.size());

    auto dfs = [&](auto&& self, int pos) -> void {
        ++nodes;
        if (search.current_.size() > best.size()) best = search.current_;
        for (int i = pos; i < m; ++i) {
            if (search.try_add(search.order_[i])) {
                self(self, i + 1);
                search.remove_last();
            }
        }
    };
    dfs(dfs, 0);
    return finish(g, std::move(best), true, nodes, start);
}

UrmSolution max_urm_bb(const Graph& g, SearchBudget budget, std::optional<int> lower_bound) {
    auto start = Clock::now();
    UrmSearch search(g);
    const int m = static_cast<int>(search.order_.size());

    std::vector<Edge> best = search.greedy_seed();
    int prune_floor = std::max<int>(static_cast<int>(best.size()),
                                    lower_bound.value_or(0));

    std::uint64_t nodes = 0;
    bool exhausted = false;

    // Residual bound: maximum matching among still-free vertices using only
    // the edges not yet decided.
    auto residual_bound = [&](int pos) {
        std::vector<std::vector<Vertex>> adj(g.vertex_count());
        for (int i = pos; i < m; ++i) {
            const Edge& e = search.order_[i];
            if (search.mate_[e.u] < 0 && search.mate_[e.v] < 0) {
                adj[e.u].push_back(e.v);
                adj[e.v].push_back(e.u);
            }
        }
        BlossomMatcher bm(std::move(adj));
        return bm.run();
    };

    auto out_of_budget = [&]() {
        if (nodes > budget.max_nodes) return true;
        if (budget.max_millis >= 0 && (nodes & 1023) == 1) {
            auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          Clock::now() - start)
                          .count();
            if (ms > budget.max_millis) return true;
        }
        return false;
    };

    auto dfs = [&](auto&& self, int pos) -> void {
        if (exhausted) return;
        ++nodes;
        if (out_of_budget()) {
            exhausted = true;
            return;
        }
        if (search.current_.size() > best.size()) best = search.current_;
        prune_floor = std::max<int>(prune_floor, static_cast<int>(best.size()));
        if (pos >= m) return;
        int ub = static_cast<int>(search.current_.size()) + residual_bound(pos);
        if (ub <= prune_floor) return;
        for (int i = pos; i < m && !exhausted; ++i) {
            if (search.try_add(search.order_[i])) {
                self(self, i + 1);
                search.remove_last();
            }
        }
    };

    if (budget.max_nodes > 0) dfs(dfs, 0);
    else exhausted = true;
    return finish(g, std::move(best), !exhausted, nodes, start);
}

std::vector<Vertex> approx_vertex_cover(const Graph& g) {
    std::vector<int> mate(g.vertex_count(), -1);
    std::vector<Vertex> cover;
    for (const Edge& e : g.sorted_edges()) {
        if (mate[e.u] < 0 && mate[e.v] < 0) {
            mate[e.u] = e.v;
            mate[e.v] = e.u;
            cover.push_back(e.u);
            cover.push_back(e.v);
        }
    }
    std::sort(cover.begin(), cover.end());
    return cover;
}

ReductionResult reduce_dominated(const Graph& g, const std::vector<Vertex>& cover,
                                 DominationRule rule) {
    const int n = g.vertex_count();
    std::vector<char> in_cover(n, 0);
    for (Vertex v : cover) {
        if (v < 0 || v >= n) throw contract_error("cover vertex out of range");
        in_cover[v] = 1;
    }
    for (const Edge& e : g.edges())
        if (!in_cover[e.u] && !in_cover[e.v])
            throw contract_error("set is not a vertex cover");

    std::vector<Vertex> indep;
    for (int v = 0; v < n; ++v)
        if (!in_cover[v]) indep.push_back(v);

    const int words = (n + 63) / 64;
    std::vector<std::vector<std::uint64_t>> nb(indep.size(),
                                               std::vector<std::uint64_t>(words, 0));
    for (std::size_t i = 0; i < indep.size(); ++i)
        for (Vertex w : g.neighbors(indep[i]))
            nb[i][w >> 6] |= 1ULL << (w & 63);

    auto subset = [&](std::size_t a, std::size_t b) {
        for (int w = 0; w < words; ++w)
            if (nb[a][w] & ~nb[b][w]) return false;
        return true;
    };

    std::vector<char> keep(indep.size(), 1);
    for (std::size_t i = 0; i < indep.size(); ++i) {
        for (std::size_t j = 0; j < indep.size() && keep[i]; ++j) {
            if (i == j) continue;
            if (!subset(i, j)) continue;
            bool equal = subset(j, i);
            if (rule == DominationRule::equal_only) {
                if (equal && indep[i] < indep[j]) keep[i] = 0;
            } else if (!equal || indep[i] < indep[j]) {
                // Strictly dominated, or the lower id of an equal pair, goes.
                keep[i] = 0;
            }
        }
    }

    ReductionResult res;
    std::vector<Vertex> survivors;
    for (int v = 0; v < n; ++v) {
        if (in_cover[v]) survivors.push_back(v);
    }
    int kept_indep = 0;
    for (std::size_t i = 0; i < indep.size(); ++i) {
        if (keep[i]) {
            survivors.push_back(indep[i]);
            ++kept_indep;
        } else {
            res.removed.push_back(indep[i]);
        }
    }
    std::sort(survivors.begin(), survivors.end());

    auto [reduced, kept] = g.induced(survivors);
    res.reduced = std::move(reduced);
    res.kept = std::move(kept);
    res.independent_after = kept_indep;

    const std::size_t t = cover.size();
    if (rule == DominationRule::subset && t >= 2 && t < 40) {
        double bound = std::ldexp(1.0, static_cast<int>(t)) / std::sqrt(static_cast<double>(t));
        if (static_cast<double>(kept_indep) > bound)
            throw internal_error("antichain bound violated after dominated-vertex reduction");
    }
    return res;
}

} // namespace urm
