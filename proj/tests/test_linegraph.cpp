#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/oracles.hpp"
#include "urm/embed.hpp"
#include "urm/exact.hpp"
#include "urm/graph.hpp"
#include "urm/linegraph.hpp"

using namespace urm;

namespace {

Graph path_graph(int n) {
    Graph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

Graph star_graph(int leaves) {
    Graph g(leaves + 1);
    for (int i = 1; i <= leaves; ++i) g.add_edge(0, i);
    return g;
}

int best_target(const Graph& host, EmbedStrategy strategy) {
    int best = 0;
    for (int target = 1; target <= host.edge_count() / 2; ++target) {
        if (urm_line_decide(host, target, 1e-3, 9, strategy).accepted) best = target;
    }
    return best;
}

} // namespace

TEST_CASE("decision on the stated examples") {
    CHECK(urm_line_decide(path_graph(5), 2, 1e-3, 1).accepted);
    CHECK(urm_line_decide(path_graph(3), 1, 1e-3, 1).accepted);
    CHECK_FALSE(urm_line_decide(star_graph(4), 2, 1e-3, 1).accepted);
    CHECK(urm_line_decide(star_graph(4), 1, 1e-3, 1).accepted);
}

TEST_CASE("decision matches the brute-force optimum of the line graph") {
    int done = 0;
    for (int trial = 0; done < 40; ++trial) {
        Graph h = random_graph(6, 0.4, 7000 + trial);
        if (h.edge_count() < 2 || h.edge_count() > 10) continue;
        ++done;
        auto [l, vmap] = line_graph(h);
        int want = max_urm_brute(l).size;
        CHECK(best_target(h, EmbedStrategy::automatic) == want);
    }
}

TEST_CASE("witness matchings carry the claimed size") {
    LineDecision d = urm_line_decide(path_graph(5), 2, 1e-3, 5);
    REQUIRE(d.accepted);
    REQUIRE(d.witness.has_value());
    CHECK(d.witness->size() == 2);
    REQUIRE(d.decomposition.has_value());
    CHECK(valid_p3_decomposition(d.forest->forest, *d.decomposition));
}
