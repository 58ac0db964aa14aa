#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "urm/graph.hpp"

namespace urm {

// All partitions of k into positive parts, each as a non-increasing vector,
// emitted in descending lexicographic order starting from [k].
std::vector<std::vector<int>> integer_partitions(int k);

// Partitions of k into exactly `parts` parts, every part >= min_part.
std::vector<std::vector<int>> integer_partitions_exact(int k, int parts, int min_part);

// Packed canonical code of a rooted tree: parenthesis string as bits,
// '(' = 1, ')' = 0, MSB first; length is 2 * size.
struct TreeCode {
    std::uint64_t bits = 0;
    int size = 0;

    friend bool operator==(const TreeCode&, const TreeCode&) = default;
    friend auto operator<=>(const TreeCode& a, const TreeCode& b) {
        if (a.size != b.size) return a.size <=> b.size;
        return a.bits <=> b.bits;
    }
};

// Canonical code of a free tree given as a connected acyclic graph:
// rooted at a centroid, minimum over the (at most two) centroid choices.
TreeCode free_tree_code(const Graph& tree);

// Tree reconstructed from a code; vertices in preorder.
Graph decode_tree(TreeCode code);

// One representative per isomorphism class of trees on s vertices, ordered
// by canonical code. Throws resource_error above the cap.
std::vector<Graph> free_trees(int s, int cap = 16);

struct CandidateForest {
    Graph forest;
    std::vector<int> tree_sizes;  // non-increasing
    std::string canonical_key;    // hex-joined multiset of component codes
    int target = 0;               // the matching size the forest encodes
};

// Every forest with 2*target edges, components of at least three vertices,
// and between 2*target+1 and 3*target vertices, one per isomorphism class.
std::vector<CandidateForest> candidate_forests(int target);

struct P3Decomposition {
    // Each path is (endpoint, center, endpoint).
    std::vector<std::array<Vertex, 3>> paths;
};

// Checks edge-disjointness, exact edge cover of f, and center uniqueness.
bool valid_p3_decomposition(const Graph& f, const P3Decomposition& d);

// Greedy decomposition into edge-disjoint paths of length two, rejecting any
// vertex with three or more pendant neighbours at processing time and any
// repeated center. Processes deepest leaves first, which makes every step
// forced. track_centers retains the explicit repeated-center guard.
std::optional<P3Decomposition> p3_filter(const CandidateForest& f, bool track_centers = true);

// Exhaustive backtracking decomposition; the validator for the greedy.
std::optional<P3Decomposition> p3_filter_oracle(const CandidateForest& f, int edge_cap = 20);

} // namespace urm
