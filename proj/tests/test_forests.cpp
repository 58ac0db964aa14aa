#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "support/oracles.hpp"
#include "urm/errors.hpp"
#include "urm/forests.hpp"
#include "urm/graph.hpp"
#include "urm/rng.hpp"

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

CandidateForest wrap(Graph g, int target) {
    CandidateForest cf;
    cf.forest = std::move(g);
    cf.target = target;
    return cf;
}

} // namespace

TEST_CASE("integer partitions: counts and order") {
    CHECK(integer_partitions(1) == std::vector<std::vector<int>>{{1}});
    CHECK(integer_partitions(4).size() == 5);
    CHECK(integer_partitions(5).size() == 7);
    for (int k = 1; k <= 20; ++k) {
        auto all = integer_partitions(k);
        CHECK(all.size() == oracles::partition_count(k));
        std::set<std::vector<int>> seen(all.begin(), all.end());
        CHECK(seen.size() == all.size());
        for (const auto& p : all) {
            int sum = 0;
            for (std::size_t i = 0; i < p.size(); ++i) {
                sum += p[i];
                if (i > 0) CHECK(p[i] <= p[i - 1]);
            }
            CHECK(sum == k);
        }
    }
}

TEST_CASE("partition counts respect the exponential bound") {
    for (int k = 1; k <= 40; ++k) {
        double bound = std::exp(3.0 * std::sqrt(static_cast<double>(k)));
        CHECK(static_cast<double>(oracles::partition_count(k)) <= bound);
    }
}

TEST_CASE("free trees: known counts and labeled-enumeration agreement") {
    const int expected[] = {0, 1, 1, 1, 2, 3, 6, 11, 23, 47};
    for (int s = 1; s <= 9; ++s) {
        auto trees = free_trees(s);
        CHECK(static_cast<int>(trees.size()) == expected[s]);
        CHECK(trees.size() == oracles::count_free_trees_labeled(s));
        std::set<std::uint64_t> keys;
        for (const Graph& t : trees) {
            CHECK(t.vertex_count() == s);
            CHECK(t.edge_count() == s - 1);
            CHECK(t.connected());
            keys.insert(free_tree_code(t).bits);
        }
        CHECK(keys.size() == trees.size());
    }
    CHECK_THROWS_AS(free_trees(17), resource_error);
}

TEST_CASE("canonical codes are isomorphism invariants") {
    Rng rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 2 + static_cast<int>(rng.below(9));
        // Random labeled tree, then a random relabeling of it.
        std::vector<int> parent(n, 0);
        for (int v = 1; v < n; ++v) parent[v] = static_cast<int>(rng.below(v));
        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i) perm[i] = i;
        for (int i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
        Graph a(n), b(n);
        for (int v = 1; v < n; ++v) {
            a.add_edge(v, parent[v]);
            b.add_edge(perm[v], perm[parent[v]]);
        }
        CHECK(free_tree_code(a) == free_tree_code(b));
        CHECK(decode_tree(free_tree_code(a)).vertex_count() == n);
        CHECK(oracles::isomorphic(decode_tree(free_tree_code(a)), a));
    }
}

TEST_CASE("candidate forests: target one gives exactly the path on three vertices") {
    auto forests = candidate_forests(1);
    REQUIRE(forests.size() == 1);
    CHECK(oracles::isomorphic(forests[0].forest, path_graph(3)));
}

TEST_CASE("candidate forests: structure at target two") {
    auto forests = candidate_forests(2);
    // Trees on five vertices (path, star, chair) plus the two-path forest.
    CHECK(forests.size() == 4);
    bool saw_p5 = false, saw_star = false, saw_two_paths = false;
    for (const auto& cf : forests) {
        CHECK(cf.forest.edge_count() == 4);
        int k = cf.forest.vertex_count();
        CHECK(k >= 5);
        CHECK(k <= 6);
        if (oracles::isomorphic(cf.forest, path_graph(5))) saw_p5 = true;
        if (oracles::isomorphic(cf.forest, star_graph(4))) saw_star = true;
        if (cf.tree_sizes == std::vector<int>{3, 3}) saw_two_paths = true;
    }
    CHECK(saw_p5);
    CHECK(saw_star);
    CHECK(saw_two_paths);
}

TEST_CASE("candidate forests: invariants across targets") {
    for (int target = 1; target <= 4; ++target) {
        std::set<std::string> keys;
        for (const auto& cf : candidate_forests(target)) {
            CHECK(cf.forest.edge_count() == 2 * target);
            CHECK(cf.forest.vertex_count() >= 2 * target + 1);
            CHECK(cf.forest.vertex_count() <= 3 * target);
            int expected_trees = cf.forest.vertex_count() - 2 * target;
            CHECK(static_cast<int>(cf.tree_sizes.size()) == expected_trees);
            CHECK(keys.insert(cf.canonical_key).second); // pairwise non-isomorphic
        }
    }
}

TEST_CASE("greedy filter on the stated examples") {
    CHECK_FALSE(p3_filter(wrap(star_graph(4), 2)).has_value());

    auto p5 = p3_filter(wrap(path_graph(5), 2));
    REQUIRE(p5.has_value());
    CHECK(p5->paths.size() == 2);
    CHECK(valid_p3_decomposition(path_graph(5), *p5));

    // Spider with three legs of length two.
    Graph spider(7);
    for (int leg = 0; leg < 3; ++leg) {
        spider.add_edge(0, 1 + 2 * leg);
        spider.add_edge(1 + 2 * leg, 2 + 2 * leg);
    }
    auto sp = p3_filter(wrap(spider, 3));
    REQUIRE(sp.has_value());
    CHECK(sp->paths.size() == 3);
    CHECK(valid_p3_decomposition(spider, *sp));
    for (const auto& p : sp->paths) CHECK(p[1] % 2 == 1); // centers are mid-leg
}

TEST_CASE("oracle filter on the stated examples") {
    CHECK_FALSE(p3_filter_oracle(wrap(star_graph(4), 2)).has_value());
    auto p3 = p3_filter_oracle(wrap(path_graph(3), 1));
    REQUIRE(p3.has_value());
    CHECK(p3->paths.size() == 1);
}

TEST_CASE("greedy filter agrees with the oracle on all candidate forests") {
    for (int target = 1; target <= 4; ++target) {
        for (const auto& cf : candidate_forests(target)) {
            auto greedy = p3_filter(cf);
            auto greedy_untracked = p3_filter(cf, false);
            auto oracle = p3_filter_oracle(cf);
            CHECK(greedy.has_value() == oracle.has_value());
            CHECK(greedy_untracked.has_value() == oracle.has_value());
            if (greedy) {
                CHECK(valid_p3_decomposition(cf.forest, *greedy));
                CHECK(static_cast<int>(greedy->paths.size()) == cf.target);
            }
            if (oracle) CHECK(valid_p3_decomposition(cf.forest, *oracle));
        }
    }
}
