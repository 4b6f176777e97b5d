#pragma once

#include <cstdint>
#include <gmpxx.h>

#include <map>
#include <vector>

#include "stablab/semilinear.hpp"
#include "stablab/tileset_graph.hpp"

namespace stablab {

/// counts[n] = number of configurations fixed by the shift by n
///           = number of closed walks of length n. Exact integers.
struct PeriodCountTable {
    std::uint64_t bound = 0;
    std::map<std::uint64_t, mpz_class> counts;  // keys 1..bound
};

/// Traces of adjacency powers via the characteristic polynomial and Newton's
/// identities: one Faddeev-LeVerrier pass (V matrix products, OpenMP over
/// rows) then a linear recurrence per n.
PeriodCountTable count_periodic_points(const TilesetGraph& g, std::uint64_t bound);

namespace reference {
/// Serial trace-of-powers route kept as an independent check of the
/// recurrence path.
PeriodCountTable count_periodic_points_matpow(const TilesetGraph& g, std::uint64_t bound);
}  // namespace reference

/// Number of points of least period exactly p (divisor inclusion-exclusion
/// over the closed-walk counts).
mpz_class least_period_count(const PeriodCountTable& t, std::uint64_t p);

/// Is there x in X_g with stab(x) = pZ? Rejects p = 0.
bool least_period_exists(const TilesetGraph& g, std::uint64_t p);

/// 0 is a stabilizer (an aperiodic point exists in the sense of the multiples
/// characterization) iff some strongly connected component carries two
/// distinct cycles, iff M(X_g) is infinite. Rejects non-essential input.
bool has_aperiodic_point(const TilesetGraph& g);

/// Structural bound from which multiples(g, bound) is certifiable: the
/// largest per-SCC window max(|C|^2 + 2*gcd of C's cycle lengths).
std::uint64_t multiples_structural_bound(const TilesetGraph& g);

struct BoundTooSmallError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Exact semilinear normal form of M(X_g) = {p : some x has stab(x) = pZ},
/// with 0 included iff has_aperiodic_point. Computed per strongly connected
/// component; the eventual-periodicity fit is certified inside the window
/// [|C|^2, bound] with period equal to the component's cycle-length gcd.
SemilinearSet multiples(const TilesetGraph& g, std::uint64_t bound);
SemilinearSet multiples(const TilesetGraph& g);  // uses the structural bound

/// gcd of the lengths of all cycles inside one strongly connected component
/// (0 for a trivial component with no cycle).
std::uint64_t scc_cycle_gcd(const TilesetGraph& g, const std::vector<int>& component);

}  // namespace stablab
