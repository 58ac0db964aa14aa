#include "urm/matching_engine.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "urm/errors.hpp"

namespace urm {

namespace {

std::vector<std::vector<Vertex>> copy_adjacency(const Graph& g) {
    std::vector<std::vector<Vertex>> adj;
    adj.reserve(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) adj.push_back(g.neighbors(v));
    return adj;
}

} // namespace

BlossomMatcher::BlossomMatcher(std::vector<std::vector<Vertex>> adj)
    : adj_(std::move(adj)),
      n_(static_cast<int>(adj_.size())),
      allowed_(n_, 1),
      match_(n_, -1),
      p_(n_),
      base_(n_),
      used_(n_),
      blossom_(n_),
      lca_seen_(n_) {}

BlossomMatcher::BlossomMatcher(const Graph& g) : BlossomMatcher(copy_adjacency(g)) {}

void BlossomMatcher::restrict_to(std::vector<char> allowed) {
    allowed_ = std::move(allowed);
}

void BlossomMatcher::seed_matching(std::vector<int> mate) {
    match_ = std::move(mate);
}

void BlossomMatcher::mark_path(int v, int b, int child) {
    while (base_[v] != b) {
        blossom_[base_[v]] = 1;
        blossom_[base_[match_[v]]] = 1;
        p_[v] = child;
        child = match_[v];
        v = p_[match_[v]];
    }
}

int BlossomMatcher::lca(int a, int b) {
    std::fill(lca_seen_.begin(), lca_seen_.end(), 0);
    int a2 = a;
    for (;;) {
        a2 = base_[a2];
        lca_seen_[a2] = 1;
        if (match_[a2] == -1) break;
        a2 = p_[match_[a2]];
    }
    int b2 = b;
    for (;;) {
        b2 = base_[b2];
        if (lca_seen_[b2]) return b2;
        b2 = p_[match_[b2]];
    }
}

int BlossomMatcher::find_path(int root) {
    std::fill(used_.begin(), used_.end(), 0);
    std::fill(p_.begin(), p_.end(), -1);
    std::iota(base_.begin(), base_.end(), 0);
    used_[root] = 1;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int to : adj_[v]) {
            if (!allowed_[to]) continue;
            if (Edge(v, to) == forbidden_) continue;
            if (base_[v] == base_[to] || match_[v] == to) continue;
            if (to == root || (match_[to] != -1 && p_[match_[to]] != -1)) {
                int curbase = lca(v, to);
                std::fill(blossom_.begin(), blossom_.end(), 0);
                mark_path(v, curbase, to);
                mark_path(to, curbase, v);
                for (int i = 0; i < n_; ++i) {
                    if (blossom_[base_[i]]) {
                        base_[i] = curbase;
                        if (!used_[i]) {
                            used_[i] = 1;
                            q.push(i);
                        }
                    }
                }
            } else if (p_[to] == -1) {
                p_[to] = v;
                if (match_[to] == -1) return to;
                used_[match_[to]] = 1;
                q.push(match_[to]);
            }
        }
    }
    return -1;
}

void BlossomMatcher::flip(int to) {
    while (to != -1) {
        int pv = p_[to];
        int ppv = match_[pv];
        match_[to] = pv;
        match_[pv] = to;
        to = ppv;
    }
}

bool BlossomMatcher::augment_from(Vertex root) {
    if (!allowed_[root] || match_[root] != -1) return false;
    int reached = find_path(root);
    if (reached < 0) return false;
    flip(reached);
    return true;
}

int BlossomMatcher::run() {
    for (int v = 0; v < n_; ++v) {
        if (allowed_[v] && match_[v] == -1) augment_from(v);
    }
    return matched_pairs();
}

int BlossomMatcher::matched_pairs() const {
    int c = 0;
    for (int v = 0; v < n_; ++v)
        if (match_[v] > v) ++c;
    return c;
}

std::vector<int> maximum_matching(const Graph& g) {
    BlossomMatcher bm(g);
    // Greedy seed keeps the augment loop short.
    std::vector<int> mate(g.vertex_count(), -1);
    for (const Edge& e : g.edges()) {
        if (mate[e.u] == -1 && mate[e.v] == -1) {
            mate[e.u] = e.v;
            mate[e.v] = e.u;
        }
    }
    bm.seed_matching(mate);
    bm.run();
    return bm.mates();
}

int maximum_matching_size(const Graph& g) {
    auto mate = maximum_matching(g);
    int c = 0;
    for (std::size_t v = 0; v < mate.size(); ++v)
        if (mate[v] > static_cast<int>(v)) ++c;
    return c;
}

} // namespace urm
