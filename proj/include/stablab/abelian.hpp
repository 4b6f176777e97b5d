#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stablab/nn2.hpp"
#include "stablab/snf.hpp"
#include "stablab/tileset_graph.hpp"

namespace stablab {

/// Finitely generated abelian group in invariant-factor form:
/// Z^rank x Z/m1 x ... x Z/ms with m1 | m2 | ... | ms, each mi >= 2.
/// Elements are integer vectors of length rank + s, torsion coordinates
/// reduced to least nonnegative residues.
struct FgAbelianGroup {
    int rank = 0;
    std::vector<std::int64_t> torsion;

    int dim() const { return rank + static_cast<int>(torsion.size()); }
    bool is_free() const { return torsion.empty(); }
    std::vector<std::int64_t> zero() const { return std::vector<std::int64_t>(dim(), 0); }
    std::vector<std::int64_t> reduce(std::vector<std::int64_t> v) const;
    std::vector<std::int64_t> negate(const std::vector<std::int64_t>& v) const;
    std::vector<std::int64_t> add(const std::vector<std::int64_t>& a,
                                  const std::vector<std::int64_t>& b) const;
    bool is_zero(const std::vector<std::int64_t>& v) const;
    std::vector<std::vector<std::int64_t>> canonical_generators() const;

    std::string to_string() const;
    bool operator==(const FgAbelianGroup&) const = default;
};

/// Result of parsing group syntax such as "Z^2", "Z x Z/2" or
/// "Z^2/<(0,2)>"; quotient_gens holds the bracketed generators (rows).
struct GroupExpr {
    FgAbelianGroup group;
    IntMat quotient_gens;
};
GroupExpr parse_group(const std::string& text);

/// Nearest-neighbor pattern: letter a at the origin, letter b at `offset`.
struct Pattern {
    int a = 0;
    int b = 0;
    std::vector<std::int64_t> offset;
    auto operator<=>(const Pattern&) const = default;
};

/// SFT over an abelian group given by forbidden two-cell patterns. Offsets
/// are arbitrary nonzero group elements; nearest-neighbor adapters reject
/// anything beyond the canonical generators.
struct AbelianNnSft {
    FgAbelianGroup group;
    std::vector<std::string> alphabet;
    std::vector<Pattern> forbidden;

    int letter_index(const std::string& letter) const;
    void forbid(const std::string& a, const std::string& b, std::vector<std::int64_t> offset);

    /// Canonical form: each pattern oriented so (offset, a, b) is minimal
    /// against its inverse (b, a, -offset); sorted; duplicates removed.
    void normalize();

    /// Text format: "group: ...", "alphabet: ...", "forbid: a b (1,0)".
    static AbelianNnSft parse(const std::string& text);
    std::string to_text() const;

    bool operator==(const AbelianNnSft&) const = default;
};

/// Subgroup of an ambient group, stored with a canonical HNF basis that
/// already folds in the ambient torsion relations.
struct SubgroupLattice {
    FgAbelianGroup ambient;
    IntMat generators;  // rows, as given
    IntMat hnf;         // canonical basis of the lifted lattice in Z^dim

    bool contains(const std::vector<std::int64_t>& v) const;
    /// Index in the ambient group; 0 means infinite.
    std::int64_t index() const;
};
SubgroupLattice make_subgroup(FgAbelianGroup ambient, IntMat gens);

/// Canonical coset representatives (componentwise residues under the HNF
/// pivots); throws std::invalid_argument on infinite index.
std::vector<std::vector<std::int64_t>> coset_transversal(const SubgroupLattice& lat);

/// Quotient G -> G/N with the canonical section G/N -> G (componentwise
/// least nonnegative residues through the Smith normal form).
struct QuotientMap {
    FgAbelianGroup source;
    FgAbelianGroup quotient;
    IntMat n_gens;  // rows; generators of N inside the source

    std::vector<std::int64_t> project(const std::vector<std::int64_t>& g) const;
    std::vector<std::int64_t> section(const std::vector<std::int64_t>& q) const;

    IntMat u, uinv;  // Smith transform of the relation matrix
    std::vector<std::size_t> free_rows;
    std::vector<std::pair<std::size_t, std::int64_t>> torsion_rows;
};
QuotientMap quotient_map(const FgAbelianGroup& g, const IntMat& n_gens);

/// Fix_A(N): only the inequality rules along each generator of N.
AbelianNnSft fix_subshift(FgAbelianGroup group, std::vector<std::string> alphabet,
                          const IntMat& n_gens);

/// Reinterpret a Z^k SFT over Z^d (k embedded in the first k coordinates).
AbelianNnSft free_extension(const AbelianNnSft& x, int d);

/// Transport along the quotient map: upward adds the N-equality rules and
/// lifts every pattern through the section.
AbelianNnSft pull_back(const AbelianNnSft& x, const QuotientMap& qm);

/// Downward transport; requires x to contain all inequality rules along the
/// generators of N and every remaining offset to be a section image.
/// Throws std::invalid_argument when the syntactic precondition fails.
AbelianNnSft push_forward(const AbelianNnSft& x, const QuotientMap& qm);

/// Block recoding over a finite-index sublattice of Z^d with transversal
/// `reps`: alphabet becomes assignments reps -> A; forbidden patterns are
/// re-supported on lattice coordinates (offset 0 filters the alphabet).
AbelianNnSft higher_power(const AbelianNnSft& x, const SubgroupLattice& lat,
                          const std::vector<std::vector<std::int64_t>>& reps);

struct FreeCheckResult {
    enum class Verdict { Free, NotFree, Unknown };
    Verdict verdict = Verdict::Unknown;
    std::uint64_t bound = 0;
    std::optional<TorusConfig> witness;  // NotFree: g-stabilized torus in the extension
    Nn2Sft extension;                    // the Z^2 free extension the witness lives in
};

/// Is g = (a,b) free for the free extension of the Z-SFT x to Z^2?
/// Exact for this one-dimensional case: with b != 0 some configuration is
/// always g-stabilized (rows re-shifted), and for (a,0) freeness holds iff
/// no finite multiple of the row shift divides a.
FreeCheckResult free_elements_check(const AbelianNnSft& x, const std::vector<std::int64_t>& g,
                                    std::uint64_t bound);

/// Adapters between the group-level representation and the dedicated
/// 1-D / 2-D engines.
TilesetGraph to_tileset(const AbelianNnSft& x);       // Z, offsets +-1 only
TilesetGraph z_window_graph(const AbelianNnSft& x);   // Z, arbitrary offsets
Nn2Sft to_nn2(const AbelianNnSft& x);                 // Z^2, offsets +-e1, +-e2 only
AbelianNnSft from_tileset(const TilesetGraph& g);
AbelianNnSft from_nn2(const Nn2Sft& sft);

/// Forbidden-pattern violations of a wrapped torus against a Z^2 sft with
/// arbitrary offsets.
std::size_t torus_violations(const AbelianNnSft& x, const TorusConfig& cfg);

}  // namespace stablab
