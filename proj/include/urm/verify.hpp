#pragma once

#include <optional>
#include <vector>

#include "urm/graph.hpp"

namespace urm {

// Verdict plus a machine-checkable witness when the matching is not
// uniquely restricted: an alternating cycle, or a second perfect matching
// of the subgraph induced by the saturated vertices.
struct UrmCertificate {
    bool uniquely_restricted = false;
    std::optional<std::vector<Vertex>> cycle;
    std::optional<std::vector<Edge>> second_perfect_matching;
};

// True iff `cycle` is a simple even cycle in g whose edges alternate in and
// out of m and whose vertices are all m-saturated.
bool valid_alternating_cycle(const Graph& g, const Matching& m,
                             const std::vector<Vertex>& cycle);

// Alternating cycle passing through the matching edge e, if one exists.
// Blossom-based augmenting search from one endpoint of e; sound and complete.
std::optional<std::vector<Vertex>> alternating_cycle_through(const Graph& g,
                                                             const Matching& m,
                                                             Edge e);

// Cycle characterization: uniquely restricted iff no alternating cycle.
UrmCertificate verify_urm_cycle(const Graph& g, const Matching& m);

// Perfect-matching enumeration on G[V_M], stopping at the second one found.
// Oracle path: throws resource_error when |V_M| exceeds the cap.
UrmCertificate verify_urm_pm(const Graph& g, const Matching& m, int saturated_cap = 40);

} // namespace urm
