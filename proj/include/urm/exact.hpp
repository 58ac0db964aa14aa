#pragma once

#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "urm/graph.hpp"

namespace urm {

struct UrmSolution {
    int size = 0;
    Matching matching;
    bool optimal = false;
    std::uint64_t nodes_explored = 0;
    std::chrono::microseconds elapsed{0};
};

struct SearchBudget {
    std::uint64_t max_nodes = std::numeric_limits<std::uint64_t>::max();
    std::int64_t max_millis = -1; // unlimited when negative

    bool unlimited() const {
        return max_nodes == std::numeric_limits<std::uint64_t>::max() && max_millis < 0;
    }
};

// Exhaustive search over matchings by ordered edge inclusion; a branch dies
// as soon as the partial matching admits an alternating cycle (supersets of
// non-uniquely-restricted matchings stay non-uniquely-restricted).
// Throws resource_error above the vertex cap.
UrmSolution max_urm_brute(const Graph& g, int vertex_cap = 16);

// Branch and bound with the residual maximum-matching upper bound and a
// greedy seed incumbent. With a lower_bound hint, branches that cannot beat
// it are pruned, so a completed run certifies either size = mu_urm or
// mu_urm <= lower_bound. Budget exhaustion is a normal outcome, flagged
// through optimal = false.
UrmSolution max_urm_bb(const Graph& g, SearchBudget budget = {},
                       std::optional<int> lower_bound = std::nullopt);

// Vertex cover of size at most twice the minimum: endpoints of a maximal
// matching built in sorted edge order.
std::vector<Vertex> approx_vertex_cover(const Graph& g);

struct ReductionResult {
    Graph reduced;
    std::vector<Vertex> removed;      // original ids, ascending
    std::vector<Vertex> kept;         // kept[new_id] = original id
    int independent_after = 0;        // |I| at the fixpoint
};

enum class DominationRule {
    subset,     // remove x whenever N(x) is contained in N(y)
    equal_only, // remove x only on N(x) = N(y); always optimum-preserving:
                // a matching using both twins closes an alternating 4-cycle
};

// Dominated-vertex rule over the independent side I = V \ cover: removes
// x in I whenever some other y in I dominates it per the chosen rule; equal
// neighborhoods keep the higher id. Under the subset rule the fixpoint is an
// antichain and the bound |I| <= 2^t / sqrt(t) is asserted (t = |cover|,
// t >= 2). Whether the subset rule preserves the optimum is a tested claim,
// not an assumption; the test suite carries the verdict.
ReductionResult reduce_dominated(const Graph& g, const std::vector<Vertex>& cover,
                                 DominationRule rule = DominationRule::subset);

} // namespace urm
