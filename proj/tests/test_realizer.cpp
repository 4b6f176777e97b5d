#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "stablab/period_counts.hpp"
#include "stablab/realizer.hpp"

using namespace stablab;

TEST_CASE("gamma_cycle has multiples exactly {p}") {
    for (std::uint64_t p = 1; p <= 8; ++p) {
        auto g = gamma_cycle(p);
        CHECK(g.vertex_count() == p);
        CHECK(g.is_essential());
        auto m = multiples(g);
        CHECK(m.is_finite());
        CHECK(m.finite_part() == std::set<std::uint64_t>{p});
    }
}

TEST_CASE("gamma_progression realizes {0} u a(N+k) with the documented size") {
    for (std::uint64_t a = 1; a <= 3; ++a)
        for (std::uint64_t k = 1; k <= 4; ++k) {
            auto g = gamma_progression(a, k);
            CHECK(g.is_essential());
            CHECK(g.edge_count() == 3 * k * a);
            auto m = multiples(g);
            auto expect = SemilinearSet({0}, {Progression{a * k, a}});
            CHECK(equal_sl(m, expect));
        }
}

TEST_CASE("gamma_progression multiples agree with brute force on small cases") {
    for (std::uint64_t a = 1; a <= 2; ++a)
        for (std::uint64_t k = 1; k <= 3; ++k) {
            auto g = gamma_progression(a, k);
            auto m = multiples(g);
            auto oracle = testutil::multiples_oracle(g, 9);
            for (std::uint64_t p = 0; p <= 9; ++p)
                CHECK(m.contains(p) == (oracle.count(p) != 0));
        }
}

TEST_CASE("realize round-trips handcrafted sets") {
    std::vector<SemilinearSet> targets = {
        SemilinearSet::finite({1}),
        SemilinearSet::finite({2, 3, 7}),
        SemilinearSet({0}, {Progression{4, 2}}),
        SemilinearSet({0, 5}, {Progression{3, 3}, Progression{8, 4}}),
    };
    for (const auto& target : targets) {
        auto g = realize(target);
        CHECK(g.is_essential());
        CHECK(equal_sl(multiples(g), target));
    }
}

TEST_CASE("realize round-trips random realizable sets") {
    testutil::Rng rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        std::set<std::uint64_t> finite;
        for (int i = 0, n = static_cast<int>(rng.below(3)); i < n; ++i)
            finite.insert(1 + rng.below(10));
        SemilinearSet target = SemilinearSet::finite(finite);
        if (rng.chance(0.6)) {
            std::vector<Progression> progs;
            for (int i = 0, n = 1 + static_cast<int>(rng.below(2)); i < n; ++i) {
                std::uint64_t a = 1 + rng.below(3);
                std::uint64_t k = 1 + rng.below(4);
                progs.push_back(Progression{a * k, a});
            }
            target = union_sl(target, SemilinearSet({0}, std::move(progs)));
        }
        if (target.empty()) target = SemilinearSet::finite({1 + rng.below(6)});
        auto g = realize(target);
        CHECK(equal_sl(multiples(g), target));
    }
}

TEST_CASE("realize refuses non-realizable targets") {
    CHECK_THROWS_AS(realize(SemilinearSet::finite({0, 2})), NotRealizableError);
    CHECK_THROWS_AS(realize(SemilinearSet({}, {Progression{2, 2}})), NotRealizableError);
    CHECK_THROWS_AS(realize(SemilinearSet({0}, {Progression{1, 2}})), NotRealizableError);
    CHECK_THROWS_AS(realize(SemilinearSet({}, {})), NotRealizableError);
}

TEST_CASE("labels of a multi-piece realization stay unique") {
    auto g = realize(SemilinearSet::finite({2, 3}));
    std::set<std::string> seen(g.alphabet().begin(), g.alphabet().end());
    CHECK(seen.size() == g.vertex_count());
    // Round-trip through the text format preserves the graph.
    auto round = TilesetGraph::parse(g.to_text());
    CHECK(round.to_text() == g.to_text());
}
