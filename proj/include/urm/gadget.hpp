#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "urm/graph.hpp"

namespace urm {

using Triple = std::array<int, 3>; // sorted elements of [1..n]

struct E3CInstance {
    int universe_size = 0;           // divisible by 3
    std::vector<Triple> triples;
};

// JSON document {"n": int, "instances": [[[a,b,c], ...], ...]}.
std::vector<E3CInstance> parse_e3c(std::istream& in);
std::vector<E3CInstance> read_e3c_file(const std::string& path);

// Exact cover by disjoint triples, by backtracking on the smallest uncovered
// element. Throws resource_error above the triple cap.
std::optional<std::vector<Triple>> e3c_solve(const E3CInstance& inst, int triple_cap = 20);

enum class EdgeType { I, II_vertical, II_horizontal, III, IV, V };

struct GadgetLayout {
    Graph graph;
    int universe_size = 0;            // n
    int instance_count = 0;           // t
    int target = 0;                   // required matching size
    std::vector<Triple> collection;   // deduplicated union, sorted
    std::vector<std::vector<int>> instance_members; // collection indices per instance
    std::vector<std::string> roles;   // role string per vertex
    std::map<Edge, EdgeType> edge_types;

    // Vertex coordinates, all 0-based internally; elements are 1-based.
    Vertex v_of(int element) const;
    Vertex v_prime(int element) const;
    Vertex u_of(int element) const;
    Vertex u_prime(int element) const;
    Vertex p(int gadget) const;
    Vertex q(int gadget) const;
    Vertex r(int gadget) const;
    Vertex s(int gadget) const;
    Vertex w(int gadget, int slot) const;        // slot: 0..2 element, 3 = w1, 4 = w2
    Vertex w_prime(int gadget, int slot) const;
    Vertex y() const;
    Vertex x(int instance) const;

    // Edges of the inner diamond {p,q,r,s} of one set gadget.
    std::vector<Edge> diamond_edges(int gadget) const;
};

// Cross-composition instance from Exact-3-Cover inputs sharing one universe.
// Throws contract_error on mismatched universes or duplicate collections.
GadgetLayout build_gadget(const std::vector<E3CInstance>& instances);

// Canonical witness matching for a solvable instance: verified uniquely
// restricted and of size exactly layout.target before returning.
Matching witness_matching_from_cover(const GadgetLayout& layout, int instance_index,
                                     const std::vector<Triple>& cover);

struct BoundsReport {
    bool ok = true;
    std::vector<std::string> violations;
    std::map<std::string, int> type_counts;
    std::vector<int> sad_gadgets;     // |M ∩ diamond| <= 1
    std::vector<int> happy_gadgets;
};

// Audits a uniquely restricted matching against the per-type bounds; at full
// target size additionally requires the tight counts (2n type-II edges,
// exactly n/3 sad gadgets, one selector edge).
BoundsReport check_structural_bounds(const GadgetLayout& layout, const Matching& m);

// Reads the selected instance off the unique selector edge and returns the
// sad gadgets as an exact cover of that instance; nullopt with a violation
// report when the structure does not deliver one.
struct ExtractedCover {
    int instance_index = -1;
    std::vector<Triple> cover;
};
std::optional<ExtractedCover> extract_cover(const GadgetLayout& layout, const Matching& m,
                                            std::string* why = nullptr);

// Y = V minus the selector leaves; checks it covers every edge and has size
// 4n + 14|C| + 1.
std::vector<Vertex> vertex_cover_witness(const GadgetLayout& layout);

// Metadata JSON document for a generated gadget.
std::string gadget_metadata_json(const GadgetLayout& layout);

} // namespace urm
