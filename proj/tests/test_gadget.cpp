#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "support/oracles.hpp"
#include "urm/errors.hpp"
#include "urm/exact.hpp"
#include "urm/gadget.hpp"
#include "urm/graph.hpp"
#include "urm/verify.hpp"

using namespace urm;

namespace {

E3CInstance inst(int n, std::vector<Triple> triples) {
    E3CInstance e;
    e.universe_size = n;
    e.triples = std::move(triples);
    return e;
}

} // namespace

TEST_CASE("exact-cover solving on the stated examples") {
    auto one = e3c_solve(inst(3, {{{1, 2, 3}}}));
    REQUIRE(one.has_value());
    CHECK(one->size() == 1);

    auto two = e3c_solve(inst(6, {{{1, 2, 3}}, {{4, 5, 6}}}));
    REQUIRE(two.has_value());
    CHECK(two->size() == 2);

    CHECK_FALSE(e3c_solve(inst(6, {{{1, 2, 3}}, {{3, 4, 5}}})).has_value());
    CHECK_FALSE(e3c_solve(inst(6, {{{1, 2, 3}}, {{1, 4, 5}}})).has_value());
}

TEST_CASE("e3c document parsing") {
    std::istringstream ok(R"({"n": 6, "instances": [[[1,2,3],[4,5,6]], [[1,2,3],[1,4,5]]]})");
    auto instances = parse_e3c(ok);
    REQUIRE(instances.size() == 2);
    CHECK(instances[0].universe_size == 6);
    CHECK(instances[0].triples.size() == 2);

    std::istringstream bad1(R"({"n": 5, "instances": []})");
    CHECK_THROWS_AS(parse_e3c(bad1), parse_error);
    std::istringstream bad2(R"({"n": 3, "instances": [[[1,2,9]]]})");
    CHECK_THROWS_AS(parse_e3c(bad2), parse_error);
    std::istringstream bad3("not json");
    CHECK_THROWS_AS(parse_e3c(bad3), parse_error);
}

TEST_CASE("construction arithmetic for the one-instance case") {
    GadgetLayout layout = build_gadget({inst(3, {{{1, 2, 3}}})});
    CHECK(layout.graph.vertex_count() == 28); // 12 + 14 + 1 + 1
    CHECK(layout.target == 13);               // 4 + 8 + 1
    CHECK(layout.collection.size() == 1);

    // The inner diamond of the single gadget.
    auto diamond = layout.diamond_edges(0);
    for (const Edge& e : diamond) CHECK(layout.graph.has_edge(e.u, e.v));
    CHECK(layout.graph.has_edge(layout.p(0), layout.r(0)));
    CHECK_FALSE(layout.graph.has_edge(layout.q(0), layout.s(0)));

    auto cover = vertex_cover_witness(layout);
    CHECK(cover.size() == 27);

    // Every edge has exactly one type.
    CHECK(layout.edge_types.size() == static_cast<std::size_t>(layout.graph.edge_count()));
}

TEST_CASE("selector wiring follows membership") {
    // Two instances over n=3: {123} and {123,124}? invalid (124 not allowed for n=3).
    // Use n=6 so the collections differ.
    auto a = inst(6, {{{1, 2, 3}}, {{4, 5, 6}}});
    auto b = inst(6, {{{1, 2, 3}}, {{1, 4, 5}}});
    GadgetLayout layout = build_gadget({a, b});
    CHECK(layout.instance_count == 2);
    CHECK(layout.collection.size() == 3);

    for (int i = 0; i < 2; ++i) {
        std::vector<char> inside(layout.collection.size(), 0);
        for (int j : layout.instance_members[i]) inside[j] = 1;
        for (int j = 0; j < static_cast<int>(layout.collection.size()); ++j) {
            bool linked = layout.graph.has_edge(layout.x(i), layout.w(j, 4));
            CHECK(linked == !inside[j]);
            for (int slot = 0; slot < 3; ++slot)
                CHECK(layout.graph.has_edge(layout.x(i), layout.w(j, slot)) == !inside[j]);
        }
    }

    CHECK_THROWS_AS(build_gadget({a, a}), contract_error);
    CHECK_THROWS_AS(build_gadget({a, inst(3, {{{1, 2, 3}}})}), contract_error);
}

TEST_CASE("witness matching reaches the target and verifies") {
    auto instances = std::vector<E3CInstance>{inst(3, {{{1, 2, 3}}})};
    GadgetLayout layout = build_gadget(instances);
    auto cover = e3c_solve(instances[0]);
    REQUIRE(cover.has_value());
    Matching m = witness_matching_from_cover(layout, 0, *cover);
    CHECK(m.size() == 13);
    CHECK(verify_urm_cycle(layout.graph, m).uniquely_restricted);

    BoundsReport report = check_structural_bounds(layout, m);
    CHECK(report.ok);
    CHECK(report.sad_gadgets.size() == 1); // n/3 = 1
    CHECK(report.type_counts["V"] == 1);
    CHECK(report.type_counts["I"] == 3);
}

TEST_CASE("bounds hold for any optimum found by search on a small gadget") {
    GadgetLayout layout = build_gadget({inst(3, {{{1, 2, 3}}})});
    SearchBudget budget;
    budget.max_nodes = 2'000'000;
    UrmSolution sol = max_urm_bb(layout.graph, budget);
    BoundsReport report = check_structural_bounds(layout, sol.matching);
    CHECK(report.ok);
    if (sol.optimal) CHECK(sol.size == layout.target); // solvable instance
}

TEST_CASE("empty matching passes the bounds with every gadget sad") {
    GadgetLayout layout = build_gadget({inst(3, {{{1, 2, 3}}})});
    BoundsReport report = check_structural_bounds(layout, Matching::empty(layout.graph));
    CHECK(report.ok);
    CHECK(report.sad_gadgets.size() == layout.collection.size());
}

TEST_CASE("cover extraction inverts the witness construction") {
    auto a = inst(6, {{{1, 2, 3}}, {{4, 5, 6}}, {{1, 4, 5}}});
    auto b = inst(6, {{{1, 2, 3}}, {{1, 4, 5}}});
    GadgetLayout layout = build_gadget({a, b});
    auto cover = e3c_solve(a);
    REQUIRE(cover.has_value());
    Matching m = witness_matching_from_cover(layout, 0, *cover);
    auto extracted = extract_cover(layout, m);
    REQUIRE(extracted.has_value());
    CHECK(extracted->instance_index == 0);
    std::vector<Triple> got = extracted->cover;
    std::vector<Triple> want = *cover;
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    CHECK(got == want);

    CHECK_THROWS_AS(extract_cover(layout, Matching::empty(layout.graph)), contract_error);
}

TEST_CASE("metadata document carries the construction facts") {
    GadgetLayout layout = build_gadget({inst(3, {{{1, 2, 3}}})});
    std::string json = gadget_metadata_json(layout);
    CHECK(json.find("\"urm-gadget/1\"") != std::string::npos);
    CHECK(json.find("\"l\": 13") != std::string::npos);
    CHECK(json.find("\"roles\"") != std::string::npos);
}
