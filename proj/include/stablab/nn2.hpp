#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "stablab/tileset_graph.hpp"

namespace stablab {

/// Nearest-neighbor SFT on the plane: pairs forbidden at {(0,0),(1,0)}
/// (horizontal) and {(0,0),(0,1)} (vertical). Equivalent to a Wang-tile
/// adjacency system.
class Nn2Sft {
public:
    Nn2Sft() = default;
    explicit Nn2Sft(std::vector<std::string> alphabet);

    const std::vector<std::string>& alphabet() const { return alphabet_; }
    int letter_index(const std::string& letter) const;
    std::size_t alphabet_size() const { return alphabet_.size(); }

    void forbid_horizontal(const std::string& a, const std::string& b);
    void forbid_vertical(const std::string& a, const std::string& b);
    void forbid_horizontal(int a, int b) { h_forbidden_.emplace(a, b); }
    void forbid_vertical(int a, int b) { v_forbidden_.emplace(a, b); }

    bool h_allowed(int a, int b) const { return !h_forbidden_.count({a, b}); }
    bool v_allowed(int a, int b) const { return !v_forbidden_.count({a, b}); }

    const std::set<std::pair<int, int>>& h_forbidden() const { return h_forbidden_; }
    const std::set<std::pair<int, int>>& v_forbidden() const { return v_forbidden_; }

    /// Text format: "alphabet: ...", then "hforbid: a b" / "vforbid: a b"
    /// lines; '#' starts a comment.
    static Nn2Sft parse(const std::string& text);
    std::string to_text() const;

private:
    std::vector<std::string> alphabet_;
    std::map<std::string, int> index_;
    std::set<std::pair<int, int>> h_forbidden_;
    std::set<std::pair<int, int>> v_forbidden_;
};

/// p x q fundamental domain of a doubly periodic configuration:
/// x(i,j) = cell(i mod p, j mod q). Cells hold alphabet indices.
struct TorusConfig {
    std::int64_t p = 0;
    std::int64_t q = 0;
    std::vector<int> cells;  // row-major: cells[j*p + i]

    int at(std::int64_t i, std::int64_t j) const {
        i %= p;
        if (i < 0) i += p;
        j %= q;
        if (j < 0) j += q;
        return cells[static_cast<std::size_t>(j * p + i)];
    }
    int& cell(std::int64_t i, std::int64_t j) {
        return cells[static_cast<std::size_t>(j * p + i)];
    }

    /// {"p":..,"q":..,"rows":[[letters of row 0],...]} as a JSON string.
    std::string to_json(const Nn2Sft& sft) const;
};

/// Translation vector, canonicalized so q > 0, or q = 0 and p > 0.
struct PeriodVector {
    std::int64_t p = 0;
    std::int64_t q = 0;
    PeriodVector canonical() const {
        if (q < 0 || (q == 0 && p < 0)) return {-p, -q};
        return *this;
    }
    bool is_canonical() const { return q > 0 || (q == 0 && p > 0); }
    auto operator<=>(const PeriodVector&) const = default;
};

struct TorusViolation {
    std::int64_t i = 0;
    std::int64_t j = 0;
    char direction = 'h';  // 'h' or 'v'
    int a = 0;
    int b = 0;
};

/// All forbidden pairs realized by the wrapped configuration; empty iff the
/// torus is valid. Throws std::invalid_argument on a dimension mismatch.
std::vector<TorusViolation> check_torus(const Nn2Sft& sft, const TorusConfig& cfg);

/// Lexicographically least valid p x q torus (row-major cell order, letters
/// in alphabet order), or absent if none exists.
std::optional<TorusConfig> search_torus(const Nn2Sft& sft, std::int64_t p, std::int64_t q);

/// 1-D tileset graph whose bi-infinite walks correspond to the
/// configurations stabilized by v. For v = (p,0): vertices are cyclically
/// h-valid width-p rows, edges are vertical compatibility. For q > 0:
/// vertices are internally valid p' x q blocks (p' = max(|p|,1)), edges
/// enforce the horizontal seam plus the twisted wrap x(i,q) = x(i-p,0).
/// The result is pruned to its essential part; empty means no v-stabilized
/// configuration exists.
TilesetGraph period_vector_graph(const Nn2Sft& sft, PeriodVector v);

/// Doubly periodic configuration extracted from a deterministic cycle of
/// period_vector_graph(sft, v); absent iff that graph is empty. For
/// v = (p,0) the returned q is at most |A|^p.
std::optional<TorusConfig> periodize(const Nn2Sft& sft, PeriodVector v);

/// Hermite-normal-form basis {(a,0), (c,d)} (a,d > 0, 0 <= c < a) of the
/// full stabilizer {(u,v) : shifting the torus by (u,v) fixes it}.
struct StabilizerLattice {
    std::int64_t a = 1;
    std::int64_t c = 0;
    std::int64_t d = 1;
    bool contains(std::int64_t u, std::int64_t v) const {
        if (v % d) return false;
        std::int64_t r = u - (v / d) * c;
        return r % a == 0;
    }
    auto operator<=>(const StabilizerLattice&) const = default;
};
StabilizerLattice stabilizer_lattice(const TorusConfig& cfg);

/// HNF basis of the intersection of two lattices.
StabilizerLattice lattice_intersection(const StabilizerLattice& x, const StabilizerLattice& y);

struct ProbeReport {
    enum class Kind { PeriodicPointFound, VectorStabilizedFound, Unknown, EmptyWithinBound };
    Kind kind = Kind::Unknown;
    std::uint64_t bound = 0;
    std::optional<TorusConfig> witness;
    std::optional<PeriodVector> vector;
};

/// Bounded aperiodicity scan: an empty certificate (no locally valid
/// bound x bound square), a doubly periodic witness (tori up to
/// bound x bound), a v-stabilized witness for primitive |p|,|q| <= bound
/// (periodized, so it doubles as a periodic point), or Unknown.
ProbeReport aperiodicity_probe(const Nn2Sft& sft, std::uint64_t bound);

}  // namespace stablab
