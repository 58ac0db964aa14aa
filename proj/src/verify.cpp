#include "urm/verify.hpp"

#include <algorithm>

#include "urm/errors.hpp"
#include "urm/matching_engine.hpp"

namespace urm {

bool valid_alternating_cycle(const Graph& g, const Matching& m,
                             const std::vector<Vertex>& cycle) {
    const std::size_t k = cycle.size();
    if (k < 4 || k % 2 != 0) return false;
    std::vector<char> seen(g.vertex_count(), 0);
    for (Vertex v : cycle) {
        if (v < 0 || v >= g.vertex_count() || seen[v]) return false;
        seen[v] = 1;
        if (!m.saturates(v)) return false;
    }
    // Alternation may start with either edge kind.
    bool first_in = m.contains(Edge(cycle[0], cycle[1]));
    for (std::size_t i = 0; i < k; ++i) {
        Vertex a = cycle[i];
        Vertex b = cycle[(i + 1) % k];
        if (!g.has_edge(a, b)) return false;
        bool in_m = m.contains(Edge(a, b));
        if (in_m != ((i % 2 == 0) ? first_in : !first_in)) return false;
    }
    return true;
}

std::optional<std::vector<Vertex>> alternating_cycle_through(const Graph& g,
                                                             const Matching& m,
                                                             Edge e) {
    if (!m.contains(e)) throw contract_error("edge is not in the matching");

    std::vector<char> allowed(g.vertex_count(), 0);
    for (Vertex v : m.saturated()) allowed[v] = 1;

    std::vector<int> mate(g.vertex_count(), -1);
    for (const Edge& me : m.edges()) {
        if (me == e) continue;
        mate[me.u] = me.v;
        mate[me.v] = me.u;
    }

    BlossomMatcher bm(g);
    bm.restrict_to(std::move(allowed));
    bm.forbid(e);
    bm.seed_matching(std::move(mate));
    if (!bm.augment_from(e.u)) return std::nullopt;

    // The augmented matching disagrees with m exactly along one cycle through e.
    const std::vector<int>& flipped = bm.mates();
    std::vector<Vertex> cycle;
    Vertex cur = e.v; // start so that the first edge (e.v, e.u) lies in m
    bool use_flipped = false;
    for (;;) {
        cycle.push_back(cur);
        Vertex nxt = use_flipped ? flipped[cur] : m.mate(cur);
        use_flipped = !use_flipped;
        if (nxt == e.v) break;
        cur = nxt;
    }
    if (!valid_alternating_cycle(g, m, cycle))
        throw internal_error("augmenting search produced an invalid cycle witness");
    return cycle;
}

UrmCertificate verify_urm_cycle(const Graph& g, const Matching& m) {
    for (const Edge& e : m.edges()) {
        if (auto cycle = alternating_cycle_through(g, m, e)) {
            UrmCertificate cert;
            cert.uniquely_restricted = false;
            cert.cycle = std::move(*cycle);
            return cert;
        }
    }
    UrmCertificate cert;
    cert.uniquely_restricted = true;
    return cert;
}

namespace {

// Enumerates perfect matchings of sub by branching on the lowest unsaturated
// vertex; stops as soon as one differing from `avoid` is found.
struct PmEnumerator {
    const Graph& sub;
    const std::vector<Edge>& avoid;
    std::vector<int> mate;
    std::vector<Edge> current;
    std::optional<std::vector<Edge>> other;
    long long count = 0;

    PmEnumerator(const Graph& s, const std::vector<Edge>& a)
        : sub(s), avoid(a), mate(s.vertex_count(), -1) {}

    bool search(Vertex from) {
        Vertex v = from;
        while (v < sub.vertex_count() && mate[v] >= 0) ++v;
        if (v == sub.vertex_count()) {
            ++count;
            std::vector<Edge> found = current;
            std::sort(found.begin(), found.end());
            if (found != avoid) {
                other = std::move(found);
                return true;
            }
            return false;
        }
        for (Vertex w : sub.neighbors(v)) {
            if (mate[w] >= 0) continue;
            mate[v] = w;
            mate[w] = v;
            current.emplace_back(v, w);
            bool done = search(v + 1);
            current.pop_back();
            mate[v] = -1;
            mate[w] = -1;
            if (done) return true;
        }
        return false;
    }
};

} // namespace

UrmCertificate verify_urm_pm(const Graph& g, const Matching& m, int saturated_cap) {
    std::vector<Vertex> sat = m.saturated();
    if (static_cast<int>(sat.size()) > saturated_cap)
        throw resource_error("saturated set exceeds the perfect-matching cap; use verify_urm_cycle");

    auto [sub, old_ids] = g.induced(sat);
    std::vector<int> new_id(g.vertex_count(), -1);
    for (std::size_t i = 0; i < old_ids.size(); ++i) new_id[old_ids[i]] = static_cast<int>(i);

    std::vector<Edge> target;
    for (const Edge& e : m.edges()) target.emplace_back(new_id[e.u], new_id[e.v]);
    std::sort(target.begin(), target.end());

    PmEnumerator en(sub, target);
    en.search(0);

    UrmCertificate cert;
    if (!en.other) {
        if (en.count != 1)
            throw internal_error("perfect-matching enumeration missed the matching itself");
        cert.uniquely_restricted = true;
        return cert;
    }
    cert.uniquely_restricted = false;
    std::vector<Edge> second;
    for (const Edge& e : *en.other) second.emplace_back(old_ids[e.u], old_ids[e.v]);
    std::sort(second.begin(), second.end());
    cert.second_perfect_matching = std::move(second);
    return cert;
}

} // namespace urm
