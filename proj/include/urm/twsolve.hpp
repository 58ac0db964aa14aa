#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "urm/exact.hpp"
#include "urm/graph.hpp"
#include "urm/treewidth.hpp"

namespace urm {

// Dynamic-programming state over a bag: which bag vertices belong to the
// saturated set S, plus the profile of near-perfect-matching counts of the
// processed subgraph induced by S, capped at two. For each subset T of the
// chosen bag vertices, the profile stores how many matchings cover exactly
// (S inside the processed region) minus T; 0, 1, or "2 or more". Keeping the
// counts exact up to the cap is what makes uniqueness at the root decidable:
// S is feasible iff its final count is exactly one, and mu_urm equals half
// the largest feasible |S|. Alternating-path facts are views of this state:
// a pair u,v of finalized vertices is joined by an alternating path iff the
// entry leaving exactly {u,v} uncovered is nonzero.
struct DPEntry {
    int value = -1;      // |S ∩ processed vertices|
    int child1 = -1;     // provenance: child node ids and state keys
    int child2 = -1;
    std::string key1;
    std::string key2;
    bool in_set = false; // introduce-vertex decision
};

// Key layout: 4 bytes little-endian membership mask over sorted bag
// positions, then 2^popcount(mask) profile bytes with values in {0,1,2}.
using DPStates = std::unordered_map<std::string, DPEntry>;

struct DPTable {
    std::vector<Vertex> bag; // sorted
    DPStates states;
};

std::string dp_make_key(std::uint32_t mask, const std::vector<std::uint8_t>& profile);
std::uint32_t dp_key_mask(const std::string& key);
std::vector<std::uint8_t> dp_key_profile(const std::string& key);

DPTable dp_leaf();
DPTable dp_introduce_vertex(const DPTable& child, Vertex v);
DPTable dp_introduce_edge(const DPTable& child, Vertex u, Vertex v);
DPTable dp_forget(const DPTable& child, Vertex u);
DPTable dp_join(const DPTable& left, const DPTable& right);

struct TreewidthStats {
    std::uint64_t total_states = 0;
    std::uint64_t max_states_per_node = 0;
    std::uint64_t max_masks_per_node = 0;
};

// Bottom-up evaluation over a validated nice decomposition; the witness is
// rebuilt from provenance and re-verified before returning.
UrmSolution solve_treewidth(const Graph& g, const NiceTreeDecomposition& ntd,
                            TreewidthStats* stats = nullptr);

// Convenience: min-fill decomposition, nice transform, then the solver.
UrmSolution solve_treewidth(const Graph& g, TreewidthStats* stats = nullptr);

} // namespace urm
