// Acceptance gate: one self-contained check per criterion, one PASS/FAIL
// line each, exit status 0 only if everything passes.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "stablab/abelian.hpp"
#include "stablab/nn2.hpp"
#include "stablab/period_counts.hpp"
#include "stablab/realizer.hpp"
#include "stablab/report.hpp"
#include "stablab/semilinear.hpp"
#include "stablab/snf.hpp"
#include "stablab/tileset_graph.hpp"

using namespace stablab;
using testutil::Rng;

namespace {

struct Outcome {
    bool pass = true;
    std::string note;
    void fail(const std::string& why) {
        pass = false;
        if (note.empty()) note = why;
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- criterion 1: gamma family ------------------------------------------

Outcome criterion_gamma(std::uint64_t) {
    Outcome out;
    auto t0 = std::chrono::steady_clock::now();
    for (std::uint64_t p = 1; p <= 8; ++p) {
        auto m = multiples(gamma_cycle(p));
        if (!equal_sl(m, SemilinearSet::finite({p})))
            out.fail("gamma_cycle(" + std::to_string(p) + ") multiples wrong");
    }
    for (std::uint64_t a = 1; a <= 3; ++a)
        for (std::uint64_t k = 1; k <= 4; ++k) {
            auto m = multiples(gamma_progression(a, k));
            for (std::uint64_t v = 0; v <= 100; ++v) {
                bool expect = v == 0 || (v >= a * k && v % a == 0);
                if (m.contains(v) != expect)
                    out.fail("gamma_progression(" + std::to_string(a) + "," + std::to_string(k) +
                             ") disagrees at " + std::to_string(v));
            }
        }
    if (seconds_since(t0) >= 5.0) out.fail("over the 5 s budget");
    return out;
}

// ---- criterion 2: realizer round-trip ------------------------------------

SemilinearSet random_admissible_target(Rng& rng) {
    while (true) {
        std::set<std::uint64_t> finite;
        for (int i = 0, n = static_cast<int>(rng.below(5)); i < n; ++i)
            finite.insert(1 + rng.below(9));
        std::vector<Progression> progs;
        bool infinite = rng.chance(0.6);
        if (infinite)
            for (int i = 0, n = 1 + static_cast<int>(rng.below(2)); i < n; ++i) {
                std::uint64_t a = 1 + rng.below(3);
                std::uint64_t k = 1 + rng.below(4);
                progs.push_back(Progression{a * k, a});
            }
        SemilinearSet s(finite, progs);
        if (infinite) s = union_sl(s, SemilinearSet::finite({0}));
        if (!s.empty()) return s;
    }
}

Outcome criterion_realizer(std::uint64_t seed) {
    Outcome out;
    auto t0 = std::chrono::steady_clock::now();
    Rng rng(seed * 1000 + 2);
    for (int trial = 0; trial < 200; ++trial) {
        auto target = random_admissible_target(rng);
        try {
            auto g = realize(target);
            if (!equal_sl(multiples(g), target))
                out.fail("round-trip failed for " + target.to_string());
        } catch (const NotRealizableError& e) {
            out.fail("refused admissible " + target.to_string() + ": " + e.what());
        }
    }
    if (seconds_since(t0) >= 30.0) out.fail("over the 30 s budget");
    return out;
}

// ---- criterion 3: refusals -----------------------------------------------

Outcome criterion_refusals(std::uint64_t seed) {
    Outcome out;
    Rng rng(seed * 1000 + 3);
    for (int trial = 0; trial < 100; ++trial) {
        SemilinearSet bad;
        if (trial % 2 == 0) {
            std::set<std::uint64_t> f = {0};
            for (int i = 0, n = static_cast<int>(rng.below(4)); i < n; ++i)
                f.insert(1 + rng.below(12));
            bad = SemilinearSet::finite(f);
        } else {
            std::uint64_t a = 1 + rng.below(4), k = rng.below(5);
            std::uint64_t start = std::max<std::uint64_t>(1, a * k);
            bad = SemilinearSet({1 + rng.below(6)}, {Progression{start, a}});
            if (bad.contains(0)) continue;  // cannot happen; defensive
        }
        try {
            realize(bad);
            out.fail("accepted non-realizable " + bad.to_string());
        } catch (const NotRealizableError&) {
        }
    }
    return out;
}

// ---- criterion 4: Moebius vs brute force ---------------------------------

Outcome criterion_moebius(std::uint64_t seed) {
    Outcome out;
    auto t0 = std::chrono::steady_clock::now();
    Rng rng(seed * 1000 + 4);
    for (int trial = 0; trial < 100; ++trial) {
        auto g = testutil::random_essential_graph(rng, 6);
        for (std::uint64_t p = 1; p <= 10; ++p)
            if (least_period_exists(g, p) != testutil::least_period_exists_oracle(g, p))
                out.fail("least period " + std::to_string(p) + " disagrees on trial " +
                         std::to_string(trial));
        if (has_aperiodic_point(g) != testutil::two_cycles_through_a_vertex(g))
            out.fail("aperiodicity disagrees on trial " + std::to_string(trial));
    }
    if (seconds_since(t0) >= 60.0) out.fail("over the 60 s budget");
    return out;
}

// ---- criterion 5: union / product combinators ----------------------------

Outcome criterion_combinators(std::uint64_t seed) {
    Outcome out;
    Rng rng(seed * 1000 + 5);
    for (int trial = 0; trial < 50; ++trial) {
        auto g1 = testutil::random_essential_graph(rng, 3);
        auto g2 = testutil::random_essential_graph(rng, 3);
        auto gu = graph_union(g1, g2);
        auto mu = multiples(gu);
        auto ou = testutil::multiples_oracle(gu, 12);
        for (std::uint64_t p = 0; p <= 12; ++p)
            if (mu.contains(p) != (ou.count(p) != 0))
                out.fail("union multiples disagree at " + std::to_string(p));
        auto gp = graph_product(g1, g2).prune_essential();
        if (gp.empty()) continue;
        auto mp = multiples(gp);
        auto op = testutil::multiples_oracle(gp, 12);
        for (std::uint64_t p = 0; p <= 12; ++p)
            if (mp.contains(p) != (op.count(p) != 0))
                out.fail("product multiples disagree at " + std::to_string(p));
    }
    return out;
}

// ---- criteria 6 and 7: periodization of vector-stabilized configurations -

bool v_stabilized(const TorusConfig& cfg, PeriodVector v) {
    for (std::int64_t j = 0; j < cfg.q; ++j)
        for (std::int64_t i = 0; i < cfg.p; ++i)
            if (cfg.at(i + v.p, j + v.q) != cfg.at(i, j)) return false;
    return true;
}

Outcome criterion_periodize(std::uint64_t seed) {
    Outcome out;
    auto t0 = std::chrono::steady_clock::now();
    Rng rng(seed * 1000 + 6);
    int witnesses = 0;
    for (int trial = 0; trial < 100; ++trial) {
        auto sft = testutil::random_nn2(rng, 3);
        for (std::int64_t p = -2; p <= 2; ++p)
            for (std::int64_t q = 0; q <= 2; ++q) {
                PeriodVector v{p, q};
                if (!v.is_canonical()) continue;
                auto g = period_vector_graph(sft, v);
                auto w = periodize(sft, v);
                if (g.empty() != !w.has_value())
                    out.fail("graph emptiness and periodize disagree on trial " +
                             std::to_string(trial));
                if (!w) continue;
                ++witnesses;
                if (!check_torus(sft, *w).empty())
                    out.fail("invalid witness on trial " + std::to_string(trial));
                if (!v_stabilized(*w, v))
                    out.fail("witness not v-stabilized on trial " + std::to_string(trial));
            }
    }
    if (witnesses == 0) out.fail("vacuous run: no nonempty case was exercised");
    if (seconds_since(t0) >= 300.0) out.fail("over the 5 min budget");
    return out;
}

Outcome criterion_row_bound(std::uint64_t seed) {
    Outcome out;
    Rng rng(seed * 1000 + 7);
    for (int trial = 0; trial < 100; ++trial) {
        auto sft = testutil::random_nn2(rng, 2);
        const double A = static_cast<double>(sft.alphabet_size());
        for (std::int64_t p = 1; p <= 3; ++p) {
            auto w = periodize(sft, {p, 0});
            if (!w) continue;
            if (static_cast<double>(w->q) > std::pow(A, static_cast<double>(p)))
                out.fail("witness q exceeds |A|^p on trial " + std::to_string(trial));
            if (!check_torus(sft, *w).empty())
                out.fail("invalid row witness on trial " + std::to_string(trial));
        }
    }
    return out;
}

// ---- criterion 8: construction round-trips -------------------------------

AbelianNnSft random_sft_over(Rng& rng, const FgAbelianGroup& g, int letters) {
    AbelianNnSft x;
    x.group = g;
    for (int i = 0; i < letters; ++i)
        x.alphabet.push_back(std::string(1, static_cast<char>('a' + i)));
    const int dim = g.dim();
    for (int i = 0, n = static_cast<int>(rng.below(7)); i < n; ++i) {
        std::vector<std::int64_t> off(dim, 0);
        for (int d = 0; d < dim; ++d) {
            if (d < g.rank)
                off[d] = static_cast<std::int64_t>(rng.below(3)) - 1;
            else
                off[d] = static_cast<std::int64_t>(rng.below(g.torsion[d - g.rank]));
        }
        off = g.reduce(std::move(off));
        if (g.is_zero(off)) off[0] = g.rank > 0 ? 1 : (g.torsion[0] > 1 ? 1 : 0);
        if (g.is_zero(off)) continue;
        x.forbidden.push_back(
            {static_cast<int>(rng.below(letters)), static_cast<int>(rng.below(letters)), off});
    }
    x.normalize();
    return x;
}

IntMat lattice_rows(const StabilizerLattice& l) { return {{l.a, 0}, {l.c, l.d}}; }

Outcome criterion_constructions(std::uint64_t seed) {
    Outcome out;
    Rng rng(seed * 1000 + 8);

    // (a) pull-back / push-forward round-trip over three quotients.
    std::vector<QuotientMap> quotients = {
        quotient_map(FgAbelianGroup{3, {}}, {{0, 0, 1}}),          // Z^3 -> Z^2
        quotient_map(FgAbelianGroup{2, {}}, {{0, 2}}),             // Z^2 -> Z x Z/2
        quotient_map(FgAbelianGroup{2, {}}, {{1, 0}, {0, 3}}),     // Z^2 -> Z/3
    };
    for (int trial = 0; trial < 100; ++trial) {
        const auto& qm = quotients[trial % quotients.size()];
        auto x = random_sft_over(rng, qm.quotient, 2 + static_cast<int>(rng.below(2)));
        try {
            auto up = pull_back(x, qm);
            auto down = push_forward(up, qm);
            if (!(down == x)) out.fail("pull/push round-trip broke on trial " +
                                       std::to_string(trial));
        } catch (const std::exception& e) {
            out.fail(std::string("pull/push threw: ") + e.what());
        }
    }

    // (b) stabilizer transport along Z^2 -> Z x Z/2 on torus witnesses <= 4x4.
    auto qm = quotient_map(FgAbelianGroup{2, {}}, {{0, 2}});
    int transported = 0;
    for (int trial = 0; trial < 12; ++trial) {
        auto x = random_sft_over(rng, qm.quotient, 2);
        auto y = pull_back(x, qm);
        for (std::int64_t p = 1; p <= 4; ++p)
            for (std::int64_t q = 1; q <= 4; ++q) {
                auto w = testutil::abelian_search_torus(y, p, q);
                if (!w) continue;
                ++transported;
                auto stab_y = stabilizer_lattice(*w);
                // project the witness to a configuration over Z x Z/2
                auto val = [&](std::int64_t i, std::int64_t t) { return w->at(i, t); };
                IntMat gens = {{w->p, 0}, {0, 2}};
                for (std::int64_t n = 0; n < w->p; ++n)
                    for (std::int64_t t = 0; t < 2; ++t) {
                        bool fixes = true;
                        for (std::int64_t i = 0; i < w->p && fixes; ++i)
                            for (std::int64_t s = 0; s < 2 && fixes; ++s)
                                if (val(i + n, s + t) != val(i, s)) fixes = false;
                        if (fixes) gens.push_back({n, t});
                    }
                if (hnf_rows(gens) != hnf_rows(lattice_rows(stab_y)))
                    out.fail("stabilizer transport failed on a " + std::to_string(p) + "x" +
                             std::to_string(q) + " witness");
            }
    }

    if (transported == 0) out.fail("vacuous transport check: no torus witness found");

    // (c) higher-power periodic point counts.
    for (int trial = 0; trial < 20; ++trial) {
        auto g = testutil::random_essential_graph(rng, 3);
        auto x = from_tileset(g);
        auto base = count_periodic_points(g, 12);
        for (std::int64_t m = 2; m <= 3; ++m) {
            auto lat = make_subgroup(x.group, {{m}});
            auto hp = higher_power(x, lat, coset_transversal(lat));
            auto hg = z_window_graph(hp);
            for (std::uint64_t n = 1; n * m <= 12; ++n) {
                mpz_class blocked =
                    hg.empty() ? mpz_class(0)
                               : count_periodic_points(hg, n).counts.at(n);
                if (blocked != base.counts.at(n * static_cast<std::uint64_t>(m)))
                    out.fail("higher-power count mismatch at n=" + std::to_string(n) +
                             ", m=" + std::to_string(m));
            }
        }
    }
    return out;
}

// ---- criterion 9: free elements desk check -------------------------------

Outcome criterion_free_elements(std::uint64_t) {
    Outcome out;
    auto x = from_tileset(gamma_cycle(2));
    for (auto g : {std::vector<std::int64_t>{1, 0}, {3, 0}}) {
        auto r = free_elements_check(x, g, 8);
        if (r.verdict != FreeCheckResult::Verdict::Free)
            out.fail("expected Free for (" + std::to_string(g[0]) + "," + std::to_string(g[1]) +
                     ")");
    }
    for (auto g : {std::vector<std::int64_t>{0, 1}, {2, 0}, {0, 2}}) {
        auto r = free_elements_check(x, g, 8);
        if (r.verdict != FreeCheckResult::Verdict::NotFree) {
            out.fail("expected NotFree for (" + std::to_string(g[0]) + "," +
                     std::to_string(g[1]) + ")");
            continue;
        }
        if (!r.witness || !check_torus(r.extension, *r.witness).empty() ||
            !v_stabilized(*r.witness, {g[0], g[1]}))
            out.fail("invalid NotFree witness for (" + std::to_string(g[0]) + "," +
                     std::to_string(g[1]) + ")");
    }
    // analytic picture: (a,0) free exactly for odd a
    for (std::int64_t a = 1; a <= 8; ++a) {
        auto r = free_elements_check(x, {a, 0}, 8);
        auto want = (a % 2) ? FreeCheckResult::Verdict::Free : FreeCheckResult::Verdict::NotFree;
        if (r.verdict != want) out.fail("parity rule fails at a=" + std::to_string(a));
    }
    return out;
}

// ---- criterion 10: determinism -------------------------------------------

std::string golden_corpus(std::uint64_t seed) {
    std::ostringstream body;
    Rng rng(seed);
    for (int i = 0; i < 20; ++i) {
        auto g = testutil::random_essential_graph(rng, 5);
        RunReport r;
        r.command = "analyze";
        r.input_digest = fnv1a_hex(g.to_text());
        r.results["multiples"] = multiples(g).to_string();
        r.results["aperiodic"] = has_aperiodic_point(g);
        body << r.to_json(false) << "\n";
    }
    for (int i = 0; i < 20; ++i) {
        auto sft = testutil::random_nn2(rng, 3);
        RunReport r;
        r.command = "probe";
        r.input_digest = fnv1a_hex(sft.to_text());
        auto probe = aperiodicity_probe(sft, 2);
        r.results["kind"] = static_cast<int>(probe.kind);
        if (probe.witness) r.results["witness"] = probe.witness->to_json(sft);
        body << r.to_json(false) << "\n";
    }
    for (int i = 0; i < 10; ++i) {
        auto target = random_admissible_target(rng);
        RunReport r;
        r.command = "realize";
        r.input_digest = fnv1a_hex(target.to_string());
        r.results["graph"] = realize(target).to_text();
        body << r.to_json(false) << "\n";
    }
    return body.str();
}

Outcome criterion_determinism(std::uint64_t seed) {
    Outcome out;
    auto a = golden_corpus(seed);
    auto b = golden_corpus(seed);
    if (a != b) out.fail("same-seed corpus runs differ");
    if (a.empty()) out.fail("corpus unexpectedly empty");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    std::uint64_t seed = 1;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--seed" && i + 1 < argc) seed = std::stoull(argv[++i]);
    }

    struct Criterion {
        const char* label;
        Outcome (*run)(std::uint64_t);
    };
    const std::vector<Criterion> criteria = {
        {"criterion 1 (gamma family multiples)", criterion_gamma},
        {"criterion 2 (realizer round-trip, 200 targets)", criterion_realizer},
        {"criterion 3 (non-realizability refusals, 100 cases)", criterion_refusals},
        {"criterion 4 (divisor counts vs brute force, 100 graphs)", criterion_moebius},
        {"criterion 5 (union/product multiples vs oracle, 50 pairs)", criterion_combinators},
        {"criterion 6 (periodization of stabilized configurations, 100 sfts)",
         criterion_periodize},
        {"criterion 7 (row witness height bound q <= |A|^p)", criterion_row_bound},
        {"criterion 8 (pull/push, stabilizer transport, higher powers)",
         criterion_constructions},
        {"criterion 9 (free elements desk check)", criterion_free_elements},
        {"criterion 10 (same-seed runs byte-identical)", criterion_determinism},
    };

    bool all = true;
    for (const auto& c : criteria) {
        Outcome out;
        try {
            out = c.run(seed);
        } catch (const std::exception& e) {
            out.fail(std::string("exception: ") + e.what());
        }
        all = all && out.pass;
        std::cout << c.label << ": " << (out.pass ? "PASS" : "FAIL")
                  << (out.note.empty() ? "" : " (" + out.note + ")") << "\n";
    }
    return all ? 0 : 1;
}
