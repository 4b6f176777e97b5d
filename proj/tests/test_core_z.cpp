#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "stablab/period_counts.hpp"
#include "stablab/tileset_graph.hpp"

using namespace stablab;

namespace {

TilesetGraph cycle(int p) {
    std::vector<std::string> letters;
    for (int i = 0; i < p; ++i) letters.push_back("c" + std::to_string(i));
    TilesetGraph g(std::move(letters));
    for (int i = 0; i < p; ++i) g.add_edge(i, (i + 1) % p);
    return g;
}

TilesetGraph full_shift(int n) {
    std::vector<std::string> letters;
    for (int i = 0; i < n; ++i) letters.push_back(std::string(1, static_cast<char>('a' + i)));
    TilesetGraph g(std::move(letters));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) g.add_edge(a, b);
    return g;
}

}  // namespace

TEST_CASE("essential pruning removes transient vertices and is idempotent") {
    TilesetGraph g({"a", "b", "c", "d"});
    g.add_edge("a", "b");
    g.add_edge("b", "a");
    g.add_edge("a", "c");  // c is a dead end, d is isolated
    auto pruned = g.prune_essential();
    CHECK(pruned.vertex_count() == 2);
    CHECK(pruned.edge_count() == 2);
    CHECK(pruned.is_essential());
    CHECK(pruned.prune_essential().to_text() == pruned.to_text());
}

TEST_CASE("strongly connected components are deterministic and complete") {
    TilesetGraph g({"a", "b", "c", "d", "e"});
    g.add_edge("a", "b");
    g.add_edge("b", "a");
    g.add_edge("b", "c");
    g.add_edge("c", "d");
    g.add_edge("d", "c");
    auto comps = g.strongly_connected_components();
    REQUIRE(comps.size() == 3);
    CHECK(comps[0] == std::vector<int>{0, 1});
    CHECK(comps[1] == std::vector<int>{2, 3});
    CHECK(comps[2] == std::vector<int>{4});
}

TEST_CASE("periodic point counts match matrix powers and brute enumeration") {
    testutil::Rng rng(11);
    for (int trial = 0; trial < 25; ++trial) {
        auto g = testutil::random_essential_graph(rng, 5);
        auto fast = count_periodic_points(g, 10);
        auto ref = reference::count_periodic_points_matpow(g, 10);
        REQUIRE(fast.counts == ref.counts);
        for (std::uint64_t n = 1; n <= 8; ++n)
            CHECK(fast.counts.at(n) == mpz_class(testutil::cyclic_word_count(g, n)));
    }
}

TEST_CASE("least_period_exists matches the primitive-word oracle") {
    testutil::Rng rng(12);
    for (int trial = 0; trial < 30; ++trial) {
        auto g = testutil::random_essential_graph(rng, 5);
        for (std::uint64_t p = 1; p <= 8; ++p)
            CHECK(least_period_exists(g, p) == testutil::least_period_exists_oracle(g, p));
    }
}

TEST_CASE("least_period_count is nonnegative and sums to the fixed-point count") {
    testutil::Rng rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        auto g = testutil::random_essential_graph(rng, 5);
        auto t = count_periodic_points(g, 12);
        for (std::uint64_t n = 1; n <= 12; ++n) {
            mpz_class sum = 0;
            for (std::uint64_t d = 1; d <= n; ++d) {
                if (n % d) continue;
                mpz_class lp = least_period_count(t, d);
                CHECK(lp >= 0);
                sum += lp;
            }
            CHECK(sum == t.counts.at(n));
        }
    }
}

TEST_CASE("has_aperiodic_point agrees with the two-cycles-through-a-vertex oracle") {
    testutil::Rng rng(14);
    for (int trial = 0; trial < 60; ++trial) {
        auto g = testutil::random_essential_graph(rng, 6);
        CHECK(has_aperiodic_point(g) == testutil::two_cycles_through_a_vertex(g));
    }
}

TEST_CASE("multiples of simple examples") {
    auto m5 = multiples(cycle(5));
    CHECK(m5.is_finite());
    CHECK(m5.finite_part() == std::set<std::uint64_t>{5});

    auto mfull = multiples(full_shift(2));
    CHECK(mfull.contains(0));
    for (std::uint64_t p = 1; p <= 20; ++p) CHECK(mfull.contains(p));
}

TEST_CASE("multiples agrees with brute force on random graphs") {
    testutil::Rng rng(15);
    for (int trial = 0; trial < 40; ++trial) {
        auto g = testutil::random_essential_graph(rng, 5);
        auto m = multiples(g);
        auto oracle = testutil::multiples_oracle(g, 10);
        for (std::uint64_t p = 0; p <= 10; ++p)
            CHECK(m.contains(p) == (oracle.count(p) != 0));
    }
}

TEST_CASE("multiples rejects a bound below the certification window") {
    auto g = full_shift(3);
    CHECK_THROWS_AS(multiples(g, 2), BoundTooSmallError);
    CHECK(multiples_structural_bound(g) >= 3);
    CHECK_NOTHROW(multiples(g, multiples_structural_bound(g)));
}

TEST_CASE("scc_cycle_gcd on a pure cycle and on a two-cycle component") {
    auto c6 = cycle(6);
    auto comps = c6.strongly_connected_components();
    REQUIRE(comps.size() == 1);
    CHECK(scc_cycle_gcd(c6, comps[0]) == 6);

    auto g = cycle(4);
    g.add_edge(0, 2);  // adds a 2-step shortcut: cycle lengths 4 and 3 -> gcd 1
    auto comps2 = g.strongly_connected_components();
    REQUIRE(comps2.size() == 1);
    CHECK(scc_cycle_gcd(g, comps2[0]) == 1);
}

TEST_CASE("graph_union and graph_product track the multiples algebra") {
    testutil::Rng rng(16);
    for (int trial = 0; trial < 15; ++trial) {
        auto g1 = testutil::random_essential_graph(rng, 4);
        auto g2 = testutil::random_essential_graph(rng, 4);
        auto u = graph_union(g1, g2);
        CHECK(u.vertex_count() == g1.vertex_count() + g2.vertex_count());
        auto mu = multiples(u);
        auto expect = union_sl(multiples(g1), multiples(g2));
        CHECK(equal_sl(mu, expect));
    }

    auto prod = graph_product(cycle(2), cycle(3));
    auto mp = multiples(prod.prune_essential());
    CHECK(mp.is_finite());
    CHECK(mp.finite_part() == std::set<std::uint64_t>{6});
}

TEST_CASE("graph_product multiples equal the lcm combination of the factors") {
    testutil::Rng rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        auto g1 = testutil::random_essential_graph(rng, 3);
        auto g2 = testutil::random_essential_graph(rng, 3);
        auto prod = graph_product(g1, g2).prune_essential();
        auto expect = lcm_combine(multiples(g1), multiples(g2));
        if (prod.empty()) {
            CHECK(expect.empty());
            continue;
        }
        CHECK(equal_sl(multiples(prod), expect));
    }
}
