#include "urm/twsolve.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <set>

#include "urm/errors.hpp"
#include "urm/matching_engine.hpp"
#include "urm/verify.hpp"

namespace urm {
namespace {

using Clock = std::chrono::steady_clock;

constexpr std::uint8_t kMany = 2;

std::uint8_t cap2(unsigned x) { return static_cast<std::uint8_t>(x > 2 ? 2 : x); }

int bag_position(const std::vector<Vertex>& bag, Vertex v) {
    auto it = std::lower_bound(bag.begin(), bag.end(), v);
    if (it == bag.end() || *it != v) throw contract_error("vertex not in bag");
    return static_cast<int>(it - bag.begin());
}

// Compressed index of bag position p among the set bits of mask.
int dense_index(std::uint32_t mask, int p) {
    return std::popcount(mask & ((1u << p) - 1));
}

std::uint32_t insert_zero_bit(std::uint32_t x, int j) {
    std::uint32_t low = x & ((1u << j) - 1);
    return low | ((x >> j) << (j + 1));
}

std::uint32_t remove_bit(std::uint32_t x, int j) {
    std::uint32_t low = x & ((1u << j) - 1);
    return low | ((x >> (j + 1)) << j);
}

bool all_zero(const std::vector<std::uint8_t>& prof) {
    return std::all_of(prof.begin(), prof.end(), [](std::uint8_t x) { return x == 0; });
}

std::vector<std::string> sorted_keys(const DPStates& states) {
    std::vector<std::string> keys;
    keys.reserve(states.size());
    for (const auto& [k, _] : states) keys.push_back(k);
    std::sort(keys.begin(), keys.end());
    return keys;
}

void merge_state(DPStates& states, std::string key, DPEntry entry) {
    auto [it, inserted] = states.try_emplace(std::move(key), std::move(entry));
    if (!inserted && entry.value > it->second.value) it->second = std::move(entry);
}

void guard_bag(const std::vector<Vertex>& bag) {
    if (bag.size() > 25) throw resource_error("bag too wide for the table encoding");
}

} // namespace

std::string dp_make_key(std::uint32_t mask, const std::vector<std::uint8_t>& profile) {
    std::string key(4 + profile.size(), '\0');
    for (int i = 0; i < 4; ++i) key[i] = static_cast<char>((mask >> (8 * i)) & 0xff);
    std::copy(profile.begin(), profile.end(), reinterpret_cast<std::uint8_t*>(key.data()) + 4);
    return key;
}

std::uint32_t dp_key_mask(const std::string& key) {
    std::uint32_t mask = 0;
    for (int i = 0; i < 4; ++i)
        mask |= static_cast<std::uint32_t>(static_cast<unsigned char>(key[i])) << (8 * i);
    return mask;
}

std::vector<std::uint8_t> dp_key_profile(const std::string& key) {
    return {key.begin() + 4, key.end()};
}

DPTable dp_leaf() {
    DPTable t;
    DPEntry e;
    e.value = 0;
    t.states.emplace(dp_make_key(0, {1}), std::move(e));
    return t;
}

DPTable dp_introduce_vertex(const DPTable& child, Vertex v) {
    DPTable out;
    out.bag = child.bag;
    out.bag.insert(std::lower_bound(out.bag.begin(), out.bag.end(), v), v);
    guard_bag(out.bag);
    const int pv = bag_position(out.bag, v);

    for (const std::string& key : sorted_keys(child.states)) {
        const DPEntry& ce = child.states.at(key);
        std::uint32_t mask = dp_key_mask(key);
        std::vector<std::uint8_t> prof = dp_key_profile(key);
        std::uint32_t shifted = insert_zero_bit(mask, pv);

        // v outside S: the structure is untouched.
        DPEntry out_e;
        out_e.value = ce.value;
        out_e.key1 = key;
        out_e.in_set = false;
        merge_state(out.states, dp_make_key(shifted, prof), std::move(out_e));

        // v inside S: isolated so far, so v is uncovered in every matching.
        std::uint32_t in_mask = shifted | (1u << pv);
        int j = dense_index(in_mask, pv);
        std::vector<std::uint8_t> in_prof(prof.size() * 2, 0);
        for (std::uint32_t t = 0; t < prof.size(); ++t)
            in_prof[insert_zero_bit(t, j) | (1u << j)] = prof[t];
        DPEntry in_e;
        in_e.value = ce.value + 1;
        in_e.key1 = key;
        in_e.in_set = true;
        merge_state(out.states, dp_make_key(in_mask, in_prof), std::move(in_e));
    }
    return out;
}

DPTable dp_introduce_edge(const DPTable& child, Vertex u, Vertex v) {
    DPTable out;
    out.bag = child.bag;
    const int pu = bag_position(out.bag, u);
    const int pv = bag_position(out.bag, v);

    for (const std::string& key : sorted_keys(child.states)) {
        const DPEntry& ce = child.states.at(key);
        std::uint32_t mask = dp_key_mask(key);
        DPEntry e;
        e.value = ce.value;
        e.key1 = key;
        if (((mask >> pu) & 1) == 0 || ((mask >> pv) & 1) == 0) {
            merge_state(out.states, key, std::move(e));
            continue;
        }
        std::vector<std::uint8_t> prof = dp_key_profile(key);
        const int ju = dense_index(mask, pu);
        const int jv = dense_index(mask, pv);
        const std::uint32_t bu = 1u << ju;
        const std::uint32_t bv = 1u << jv;
        for (std::uint32_t t = 0; t < prof.size(); ++t) {
            if ((t & bu) || (t & bv)) continue;
            prof[t] = cap2(static_cast<unsigned>(prof[t]) + prof[t | bu | bv]);
        }
        merge_state(out.states, dp_make_key(mask, prof), std::move(e));
    }
    return out;
}

DPTable dp_forget(const DPTable& child, Vertex u) {
    DPTable out;
    out.bag = child.bag;
    const int pu = bag_position(out.bag, u);
    out.bag.erase(out.bag.begin() + pu);

    for (const std::string& key : sorted_keys(child.states)) {
        const DPEntry& ce = child.states.at(key);
        std::uint32_t mask = dp_key_mask(key);
        std::vector<std::uint8_t> prof = dp_key_profile(key);
        DPEntry e;
        e.value = ce.value;
        e.key1 = key;
        if (((mask >> pu) & 1) == 0) {
            merge_state(out.states, dp_make_key(remove_bit(mask, pu), prof), std::move(e));
            continue;
        }
        // u leaves the bag for good; only matchings covering u remain usable.
        const int ju = dense_index(mask, pu);
        std::vector<std::uint8_t> filtered(prof.size() / 2, 0);
        for (std::uint32_t t = 0; t < filtered.size(); ++t)
            filtered[t] = prof[insert_zero_bit(t, ju)];
        if (all_zero(filtered)) continue;
        merge_state(out.states, dp_make_key(remove_bit(mask, pu), filtered), std::move(e));
    }
    return out;
}

DPTable dp_join(const DPTable& left, const DPTable& right) {
    if (left.bag != right.bag) throw contract_error("join children carry different bags");
    DPTable out;
    out.bag = left.bag;

    std::vector<std::string> rkeys = sorted_keys(right.states);
    for (const std::string& lkey : sorted_keys(left.states)) {
        const DPEntry& le = left.states.at(lkey);
        std::uint32_t mask = dp_key_mask(lkey);
        std::vector<std::uint8_t> lprof = dp_key_profile(lkey);
        const int members = std::popcount(mask);
        const std::uint32_t universe = (1u << members) - 1;

        for (const std::string& rkey : rkeys) {
            if (dp_key_mask(rkey) != mask) continue;
            const DPEntry& re = right.states.at(rkey);
            std::vector<std::uint8_t> rprof = dp_key_profile(rkey);

            // A bag vertex of S may stay covered on at most one side, so the
            // two uncovered sets must span the whole membership set.
            std::vector<std::uint8_t> prof(lprof.size(), 0);
            for (std::uint32_t tl = 0; tl <= universe; ++tl) {
                unsigned a = lprof[tl];
                if (a == 0) continue;
                std::uint32_t rest = universe & ~tl;
                std::uint32_t w = tl;
                for (;;) {
                    unsigned b = rprof[rest | w];
                    if (b) prof[w] = cap2(prof[w] + a * b);
                    if (w == 0) break;
                    w = (w - 1) & tl;
                }
            }
            if (all_zero(prof)) continue;
            DPEntry e;
            e.value = le.value + re.value - members;
            e.key1 = lkey;
            e.key2 = rkey;
            merge_state(out.states, dp_make_key(mask, prof), std::move(e));
        }
    }
    return out;
}

namespace {

std::vector<int> evaluation_order(const NiceTreeDecomposition& ntd) {
    std::vector<int> order;
    order.reserve(ntd.node_count());
    auto walk = [&](auto&& self, int x) -> void {
        for (int c : ntd.nodes[x].children) self(self, c);
        order.push_back(x);
    };
    walk(walk, ntd.root);
    return order;
}

} // namespace

UrmSolution solve_treewidth(const Graph& g, const NiceTreeDecomposition& ntd,
                            TreewidthStats* stats) {
    auto start = Clock::now();
    if (auto why = validate_nice(ntd, g))
        throw contract_error("invalid nice decomposition: " + *why);

    std::vector<DPTable> tables(ntd.node_count());
    TreewidthStats local;
    for (int x : evaluation_order(ntd)) {
        const NiceNode& node = ntd.nodes[x];
        switch (node.kind) {
            case NodeKind::leaf:
                tables[x] = dp_leaf();
                break;
            case NodeKind::introduce_vertex:
                tables[x] = dp_introduce_vertex(tables[node.children[0]], node.vertex);
                break;
            case NodeKind::introduce_edge:
                tables[x] =
                    dp_introduce_edge(tables[node.children[0]], node.edge.u, node.edge.v);
                break;
            case NodeKind::forget:
                tables[x] = dp_forget(tables[node.children[0]], node.vertex);
                break;
            case NodeKind::join:
                tables[x] = dp_join(tables[node.children[0]], tables[node.children[1]]);
                break;
        }
        // Children ids recorded for witness walking.
        for (auto& [key, entry] : tables[x].states) {
            if (node.kind == NodeKind::join) {
                entry.child1 = node.children[0];
                entry.child2 = node.children[1];
            } else if (node.kind != NodeKind::leaf) {
                entry.child1 = node.children[0];
            }
        }
        std::uint64_t count = tables[x].states.size();
        local.total_states += count;
        local.max_states_per_node = std::max(local.max_states_per_node, count);
        std::set<std::uint32_t> masks;
        for (const auto& [key, entry] : tables[x].states) masks.insert(dp_key_mask(key));
        local.max_masks_per_node = std::max<std::uint64_t>(local.max_masks_per_node,
                                                           masks.size());
    }
    if (stats) *stats = local;

    // Root: empty bag, single-entry profiles; feasible iff the count is one.
    const DPTable& root = tables[ntd.root];
    std::string best_key;
    int best_value = -1;
    for (const std::string& key : sorted_keys(root.states)) {
        auto prof = dp_key_profile(key);
        if (prof.size() != 1 || prof[0] != 1) continue;
        int value = root.states.at(key).value;
        if (value > best_value) {
            best_value = value;
            best_key = key;
        }
    }
    if (best_value < 0) throw internal_error("root table lost the empty state");
    if (best_value % 2 != 0)
        throw internal_error("saturated-vertex count at the root is odd");

    // Collect S from the introduce-vertex decisions along the provenance.
    std::set<Vertex> chosen;
    std::vector<std::pair<int, std::string>> stack{{ntd.root, best_key}};
    while (!stack.empty()) {
        auto [node, key] = stack.back();
        stack.pop_back();
        const DPEntry& e = tables[node].states.at(key);
        if (ntd.nodes[node].kind == NodeKind::introduce_vertex && e.in_set)
            chosen.insert(ntd.nodes[node].vertex);
        if (e.child1 >= 0) stack.push_back({e.child1, e.key1});
        if (e.child2 >= 0) stack.push_back({e.child2, e.key2});
    }
    if (static_cast<int>(chosen.size()) != best_value)
        throw internal_error("witness set size disagrees with the table value");

    // The unique perfect matching of G[S] is the witness matching.
    std::vector<Vertex> keep(chosen.begin(), chosen.end());
    auto [sub, old_ids] = g.induced(keep);
    BlossomMatcher bm(sub);
    int pairs = bm.run();
    if (pairs * 2 != static_cast<int>(keep.size()))
        throw internal_error("feasible set admits no perfect matching");
    std::vector<Edge> witness;
    const auto& mate = bm.mates();
    for (int v = 0; v < sub.vertex_count(); ++v)
        if (mate[v] > v) witness.emplace_back(old_ids[v], old_ids[mate[v]]);

    UrmSolution sol;
    sol.matching = Matching(g, std::move(witness));
    sol.size = sol.matching.size();
    sol.optimal = true;
    sol.nodes_explored = local.total_states;
    sol.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - start);
    if (!verify_urm_cycle(g, sol.matching).uniquely_restricted)
        throw internal_error("treewidth witness failed verification");
    return sol;
}

UrmSolution solve_treewidth(const Graph& g, TreewidthStats* stats) {
    TreeDecomposition td = heuristic_tree_decomposition(g);
    NiceTreeDecomposition ntd = to_nice(td, g);
    return solve_treewidth(g, ntd, stats);
}

} // namespace urm
