#pragma once

#include "stablab/semilinear.hpp"
#include "stablab/tileset_graph.hpp"

namespace stablab {

/// Directed simple cycle on p vertices c0..c{p-1}; its only stabilizer
/// multiple is p.
TilesetGraph gamma_cycle(std::uint64_t p);

/// Cycle of length k where every cycle edge carries a co-oriented triangle
/// detour (vertex t{i}), then every edge is subdivided into a path of
/// length a (vertices s{i}.{j}). Multiples = {0} u {a(k+n) : n >= 0};
/// always 3*k*a edges.
TilesetGraph gamma_progression(std::uint64_t a, std::uint64_t k);

/// Disjoint union of gamma pieces whose multiples set equals `target`.
/// Throws NotRealizableError when no such graph exists (finite target
/// containing 0, infinite target missing 0 or with a non-progression tail,
/// or the empty target).
TilesetGraph realize(const SemilinearSet& target);

}  // namespace stablab
