#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace stablab {

/// Arithmetic progression {start + n*step : n >= 0}.
struct Progression {
    std::uint64_t start = 0;
    std::uint64_t step = 1;  // > 0
    bool contains(std::uint64_t p) const {
        return p >= start && (p - start) % step == 0;
    }
    auto operator<=>(const Progression&) const = default;
};

/// Eventually periodic subset of N in a canonical normal form: a finite part
/// disjoint from finitely many progressions, the progressions reconstructed
/// from the minimal eventual period and minimal threshold. Two sets are
/// pointwise equal iff their normal forms are structurally equal.
class SemilinearSet {
public:
    SemilinearSet() = default;
    SemilinearSet(std::set<std::uint64_t> finite_part, std::vector<Progression> progressions);

    static SemilinearSet finite(std::set<std::uint64_t> values);

    const std::set<std::uint64_t>& finite_part() const { return finite_; }
    const std::vector<Progression>& progressions() const { return progs_; }

    bool contains(std::uint64_t p) const;
    bool is_finite() const { return progs_.empty(); }
    bool empty() const { return finite_.empty() && progs_.empty(); }

    /// Elements up to and including `bound`, ascending.
    std::vector<std::uint64_t> elements_up_to(std::uint64_t bound) const;

    /// First index from which the set is periodic (0 for finite sets ...
    /// threshold of the normal form).
    std::uint64_t threshold() const;
    std::uint64_t period() const;  // 1 for finite sets

    std::string to_string() const;
    static SemilinearSet parse(const std::string& text);

private:
    std::set<std::uint64_t> finite_;
    std::vector<Progression> progs_;
};

bool equal_sl(const SemilinearSet& a, const SemilinearSet& b);
SemilinearSet union_sl(const SemilinearSet& a, const SemilinearSet& b);

/// Pointwise {lcm(p,q)} with the convention lcm(0,.) = 0; mirrors the
/// multiples of a product of shifts. The eventual period of the result is
/// detected over a large window and certified by requiring several full
/// repetitions; throws if no certificate is found.
SemilinearSet lcm_combine(const SemilinearSet& a, const SemilinearSet& b);

/// True iff the set is the multiples set of some tileset graph: finite
/// without 0, or infinite containing 0 whose tail is a finite union of
/// full progressions a(N+k) (all consecutive multiples of a from a*k on).
bool is_realizable_period_set(const SemilinearSet& s);

/// The a(N+k) decomposition behind is_realizable_period_set: pairs (a, k)
/// whose union with a finite remainder reproduces the infinite set.
/// Throws NotRealizableError if the tail has no such decomposition.
struct RealizablePieces {
    std::set<std::uint64_t> finite_cycles;            // F \ {0}
    std::vector<std::pair<std::uint64_t, std::uint64_t>> progressions;  // (a, k)
};
RealizablePieces realizable_pieces(const SemilinearSet& s);

struct NotRealizableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace stablab
