#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "urm/forests.hpp"
#include "urm/graph.hpp"

namespace urm {

// Injective map from forest vertices to host vertices carrying every forest
// edge onto a host edge.
struct Embedding {
    std::vector<Vertex> map;
};

bool valid_embedding(const Graph& pattern, const Graph& host, const Embedding& e);

// Exact subgraph-isomorphism backtracking with degree pruning.
// Throws resource_error outside (|V(host)| <= 14 or |V(pattern)| <= 8).
std::optional<Embedding> embed_backtrack(const CandidateForest& f, const Graph& host);

// Randomized colorful-subtree search: ceil(e^k * ln(1/delta)) independent
// trials with k = |V(f)| colors; one-sided error, a returned embedding is
// always correct, absence is wrong with probability at most delta when an
// embedding exists. First verified success by trial index wins.
std::optional<Embedding> color_coding_embed(const CandidateForest& f, const Graph& host,
                                            double delta, std::uint64_t seed);

enum class EmbedStrategy {
    automatic,   // backtracking inside its caps, color coding beyond
    backtrack,
    color_coding,
};

struct LineDecision {
    bool accepted = false;
    std::optional<CandidateForest> forest;
    std::optional<P3Decomposition> decomposition;
    std::optional<Embedding> embedding;
    std::optional<Matching> witness; // uniquely restricted matching of L(host)
    std::uint64_t forests_tried = 0;
};

// Decides whether L(host) has a uniquely restricted matching of the given
// size by searching the filtered candidate forests inside host. The witness
// is re-verified before returning.
LineDecision urm_line_decide(const Graph& host, int target, double delta,
                             std::uint64_t seed,
                             EmbedStrategy strategy = EmbedStrategy::automatic);

} // namespace urm
