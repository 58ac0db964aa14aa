#pragma once

#include <vector>

#include "urm/graph.hpp"

namespace urm {

// Edmonds blossom search, with optional vertex restriction and one forbidden
// edge. Deterministic: BFS in vertex-id order.
class BlossomMatcher {
public:
    explicit BlossomMatcher(std::vector<std::vector<Vertex>> adj);
    explicit BlossomMatcher(const Graph& g);

    void restrict_to(std::vector<char> allowed);
    void forbid(Edge e) { forbidden_ = e; }
    void seed_matching(std::vector<int> mate);

    // Grows the current matching to maximum cardinality over allowed vertices.
    int run();

    // One augmentation attempt from a free vertex; applies the flip on success.
    bool augment_from(Vertex root);

    const std::vector<int>& mates() const { return match_; }
    int matched_pairs() const;

private:
    int find_path(int root);
    void mark_path(int v, int b, int child);
    int lca(int a, int b);
    void flip(int to);

    std::vector<std::vector<Vertex>> adj_;
    int n_;
    Edge forbidden_;
    std::vector<char> allowed_;
    std::vector<int> match_, p_, base_;
    std::vector<char> used_, blossom_, lca_seen_;
};

// Maximum matching of g; returns the mate array (-1 for unmatched).
std::vector<int> maximum_matching(const Graph& g);

int maximum_matching_size(const Graph& g);

} // namespace urm
