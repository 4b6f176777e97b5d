#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "stablab/nn2.hpp"

using namespace stablab;

namespace {

Nn2Sft checkerboard() {
    Nn2Sft sft({"0", "1"});
    for (int a = 0; a < 2; ++a) {
        sft.forbid_horizontal(a, a);
        sft.forbid_vertical(a, a);
    }
    return sft;
}

bool is_v_stabilized(const TorusConfig& cfg, PeriodVector v) {
    for (std::int64_t j = 0; j < cfg.q; ++j)
        for (std::int64_t i = 0; i < cfg.p; ++i)
            if (cfg.at(i + v.p, j + v.q) != cfg.at(i, j)) return false;
    return true;
}

}  // namespace

TEST_CASE("torus search on the checkerboard") {
    auto sft = checkerboard();
    CHECK(!search_torus(sft, 1, 1).has_value());
    CHECK(!search_torus(sft, 3, 3).has_value());
    auto t = search_torus(sft, 2, 2);
    REQUIRE(t.has_value());
    CHECK(check_torus(sft, *t).empty());
    CHECK(t->at(0, 0) != t->at(1, 0));
    CHECK(t->at(0, 0) != t->at(0, 1));
}

TEST_CASE("check_torus reports each wrapped violation") {
    auto sft = checkerboard();
    TorusConfig bad{2, 1, {0, 0}};
    auto v = check_torus(sft, bad);
    CHECK(v.size() == 4);  // two horizontal pairs (wrap), two vertical self-pairs
}

TEST_CASE("period_vector_graph matches exhaustive v-stabilized search") {
    testutil::Rng rng(41);
    int done = 0;
    while (done < 60) {
        auto sft = testutil::random_nn2(rng, 3);
        ++done;
        for (std::int64_t p = -2; p <= 2; ++p)
            for (std::int64_t q = 0; q <= 2; ++q) {
                PeriodVector v{p, q};
                if (!v.is_canonical()) continue;
                auto g = period_vector_graph(sft, v);
                bool oracle = false;
                std::int64_t pp = std::max<std::int64_t>(std::llabs(p), 1);
                std::int64_t qq = std::max<std::int64_t>(q, 1);
                for (std::int64_t k = 1; k <= 3 && !oracle; ++k)
                    for (std::int64_t m = 1; m <= 3 && !oracle; ++m)
                        if (testutil::v_stabilized_torus_exists(sft, v, k * pp, m * qq))
                            oracle = true;
                if (g.empty()) {
                    CHECK(!oracle);
                } else if (!oracle) {
                    // The graph can be nonempty while every small torus fails;
                    // periodize must then produce a (larger) valid witness.
                    auto w = periodize(sft, v);
                    REQUIRE(w.has_value());
                    CHECK(check_torus(sft, *w).empty());
                    CHECK(is_v_stabilized(*w, v));
                }
            }
    }
}

TEST_CASE("periodize yields a valid v-stabilized torus whenever the graph is nonempty") {
    testutil::Rng rng(42);
    for (int trial = 0; trial < 80; ++trial) {
        auto sft = testutil::random_nn2(rng, 3);
        for (std::int64_t p = -2; p <= 2; ++p)
            for (std::int64_t q = 0; q <= 2; ++q) {
                PeriodVector v{p, q};
                if (!v.is_canonical()) continue;
                auto g = period_vector_graph(sft, v);
                auto w = periodize(sft, v);
                CHECK(g.empty() == !w.has_value());
                if (!w) continue;
                CHECK(check_torus(sft, *w).empty());
                CHECK(is_v_stabilized(*w, v));
            }
    }
}

TEST_CASE("stabilizer lattice of the checkerboard witness") {
    auto sft = checkerboard();
    auto w = periodize(sft, {1, 1});
    REQUIRE(w.has_value());
    auto lat = stabilizer_lattice(*w);
    CHECK(lat.a == 2);
    CHECK(lat.d == 1);
    CHECK(lat.c == 1);
    CHECK(lat.contains(1, 1));
    CHECK(lat.contains(2, 0));
    CHECK(!lat.contains(1, 0));
}

TEST_CASE("lattice_intersection is the set intersection") {
    StabilizerLattice x{2, 1, 1};  // generated by (2,0),(1,1)
    StabilizerLattice y{3, 0, 1};  // generated by (3,0),(0,1)
    auto z = lattice_intersection(x, y);
    for (std::int64_t u = -8; u <= 8; ++u)
        for (std::int64_t v = -8; v <= 8; ++v)
            CHECK(z.contains(u, v) == (x.contains(u, v) && y.contains(u, v)));
}

TEST_CASE("stabilizer lattice elements all fix the torus") {
    testutil::Rng rng(43);
    for (int trial = 0; trial < 40; ++trial) {
        auto sft = testutil::random_nn2(rng, 3);
        auto w = periodize(sft, {1, 1});
        if (!w) continue;
        auto lat = stabilizer_lattice(*w);
        for (std::int64_t u = 0; u < w->p; ++u)
            for (std::int64_t v = 0; v < w->q; ++v)
                CHECK(lat.contains(u, v) == is_v_stabilized(*w, {u, v}));
    }
}

TEST_CASE("aperiodicity probe classifies the standard examples") {
    auto sft = checkerboard();
    auto r = aperiodicity_probe(sft, 3);
    CHECK(r.kind == ProbeReport::Kind::PeriodicPointFound);
    REQUIRE(r.witness.has_value());
    CHECK(check_torus(sft, *r.witness).empty());

    Nn2Sft empty1({"a"});
    empty1.forbid_horizontal(0, 0);
    auto re = aperiodicity_probe(empty1, 1);
    CHECK(re.kind == ProbeReport::Kind::EmptyWithinBound);

    Nn2Sft full({"a", "b"});
    auto rf = aperiodicity_probe(full, 2);
    CHECK(rf.kind == ProbeReport::Kind::PeriodicPointFound);
}

TEST_CASE("probe witnesses are always genuine") {
    testutil::Rng rng(44);
    for (int trial = 0; trial < 40; ++trial) {
        auto sft = testutil::random_nn2(rng, 3, 0.4);
        auto r = aperiodicity_probe(sft, 2);
        if (r.kind == ProbeReport::Kind::PeriodicPointFound ||
            r.kind == ProbeReport::Kind::VectorStabilizedFound) {
            REQUIRE(r.witness.has_value());
            CHECK(check_torus(sft, *r.witness).empty());
        }
        if (r.kind == ProbeReport::Kind::EmptyWithinBound) {
            // No valid torus of any probed size can exist.
            for (std::int64_t p = 1; p <= 2; ++p)
                for (std::int64_t q = 1; q <= 2; ++q)
                    CHECK(!search_torus(sft, p, q).has_value());
        }
    }
}
