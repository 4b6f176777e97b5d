#include "stablab/semilinear.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace stablab {

namespace {

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    return a / std::gcd(a, b) * b;
}

constexpr std::uint64_t kMaxPeriod = 1ull << 22;

}  // namespace

SemilinearSet::SemilinearSet(std::set<std::uint64_t> finite_part,
                             std::vector<Progression> progressions) {
    for (const auto& p : progressions)
        if (p.step == 0) throw std::invalid_argument("progression step must be positive");
    if (progressions.empty()) {
        finite_ = std::move(finite_part);
        return;
    }

    // Raw membership test for the un-normalized union.
    auto raw_contains = [&](std::uint64_t x) {
        if (finite_part.count(x)) return true;
        for (const auto& p : progressions)
            if (p.contains(x)) return true;
        return false;
    };

    std::uint64_t big_period = 1;
    std::uint64_t t0 = finite_part.empty() ? 0 : *finite_part.rbegin() + 1;
    for (const auto& p : progressions) {
        big_period = lcm_u64(big_period, p.step);
        if (big_period > kMaxPeriod) throw std::invalid_argument("semilinear period too large");
        t0 = std::max(t0, p.start);
    }

    // Beyond t0 membership depends only on the residue mod big_period; the
    // minimal period is the smallest divisor shifting the residue set onto
    // itself.
    std::vector<bool> tail(big_period);
    for (std::uint64_t r = 0; r < big_period; ++r) tail[r] = raw_contains(t0 + r);
    std::uint64_t period = big_period;
    for (std::uint64_t d = 1; d <= big_period; ++d) {
        if (big_period % d != 0) continue;
        bool ok = true;
        for (std::uint64_t r = 0; ok && r < big_period; ++r)
            if (tail[r] != tail[(r + d) % big_period]) ok = false;
        if (ok) {
            period = d;
            break;
        }
    }

    auto tail_member = [&](std::uint64_t x) {
        // x may be below t0; read the pattern as if it extended downward.
        std::uint64_t r = (x + big_period - t0 % big_period) % big_period;
        return tail[r];
    };

    std::uint64_t threshold = t0;
    while (threshold > 0 && raw_contains(threshold - 1) == tail_member(threshold - 1)) --threshold;

    for (std::uint64_t x = 0; x < threshold; ++x)
        if (raw_contains(x)) finite_.insert(x);
    bool all_tail_empty = true;
    for (std::uint64_t r = 0; r < period; ++r) {
        std::uint64_t x = threshold + r;
        if (tail_member(x)) {
            all_tail_empty = false;
            if (x == 0) {
                finite_.insert(0);
                x = period;
            }
            progs_.push_back({x, period});
        }
    }
    if (all_tail_empty) progs_.clear();
    std::sort(progs_.begin(), progs_.end(),
              [](const Progression& a, const Progression& b) { return a.start < b.start; });
}

SemilinearSet SemilinearSet::finite(std::set<std::uint64_t> values) {
    return SemilinearSet(std::move(values), {});
}

bool SemilinearSet::contains(std::uint64_t p) const {
    if (finite_.count(p)) return true;
    for (const auto& pr : progs_)
        if (pr.contains(p)) return true;
    return false;
}

std::vector<std::uint64_t> SemilinearSet::elements_up_to(std::uint64_t bound) const {
    std::vector<std::uint64_t> out;
    for (std::uint64_t v : finite_)
        if (v <= bound) out.push_back(v);
    for (const auto& p : progs_)
        for (std::uint64_t x = p.start; x <= bound; x += p.step) out.push_back(x);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::uint64_t SemilinearSet::threshold() const {
    std::uint64_t t = finite_.empty() ? 0 : *finite_.rbegin() + 1;
    for (const auto& p : progs_) t = std::max(t, p.start);
    return t;
}

std::uint64_t SemilinearSet::period() const {
    std::uint64_t l = 1;
    for (const auto& p : progs_) l = lcm_u64(l, p.step);
    return l;
}

bool equal_sl(const SemilinearSet& a, const SemilinearSet& b) {
    // Agreement up to max(starts, finite elements) + 2*lcm(steps) decides
    // equality of eventually periodic sets with these parameters.
    std::uint64_t bound = std::max(a.threshold(), b.threshold()) +
                          2 * lcm_u64(a.period(), b.period());
    for (std::uint64_t x = 0; x <= bound; ++x)
        if (a.contains(x) != b.contains(x)) return false;
    return true;
}

SemilinearSet union_sl(const SemilinearSet& a, const SemilinearSet& b) {
    std::set<std::uint64_t> fin = a.finite_part();
    fin.insert(b.finite_part().begin(), b.finite_part().end());
    std::vector<Progression> progs = a.progressions();
    progs.insert(progs.end(), b.progressions().begin(), b.progressions().end());
    return SemilinearSet(std::move(fin), std::move(progs));
}

SemilinearSet lcm_combine(const SemilinearSet& a, const SemilinearSet& b) {
    if (a.empty() || b.empty()) return SemilinearSet{};

    bool has_zero = a.contains(0) || b.contains(0);

    if (a.is_finite() && b.is_finite()) {
        std::set<std::uint64_t> out;
        for (std::uint64_t p : a.finite_part())
            for (std::uint64_t q : b.finite_part()) out.insert(lcm_u64(p, q));
        return SemilinearSet::finite(std::move(out));
    }

    // Exact pointwise computation on a window, then an eventual-period fit
    // certified by at least four full repetitions.
    std::uint64_t base = a.threshold() + a.period() + b.threshold() + b.period();
    std::uint64_t window = std::max<std::uint64_t>(2048, 16 * base);
    auto ea = a.elements_up_to(window);
    auto eb = b.elements_up_to(window);
    std::vector<bool> hit(window + 1, false);
    for (std::uint64_t p : ea) {
        if (p == 0) continue;
        for (std::uint64_t q : eb) {
            if (q == 0) continue;
            std::uint64_t l = p / std::gcd(p, q);
            if (l <= window / q) hit[l * q] = true;
        }
    }

    std::uint64_t t_guess = window / 2;
    std::uint64_t found_k = 0;
    for (std::uint64_t k = 1; k <= window / 8 && !found_k; ++k) {
        bool ok = true;
        for (std::uint64_t x = t_guess; ok && x + k <= window; ++x)
            if (hit[x] != hit[x + k]) ok = false;
        if (ok) found_k = k;
    }
    if (!found_k)
        throw std::runtime_error("lcm_combine: could not certify eventual periodicity");

    std::uint64_t t = t_guess;
    while (t > 0 && hit[t - 1] == hit[t - 1 + found_k]) --t;
    std::set<std::uint64_t> fin;
    if (has_zero) fin.insert(0);
    for (std::uint64_t x = 1; x < t; ++x)
        if (hit[x]) fin.insert(x);
    std::vector<Progression> progs;
    for (std::uint64_t r = 0; r < found_k; ++r) {
        std::uint64_t x = t + r;
        if (x <= window && hit[x] && x > 0) progs.push_back({x, found_k});
    }
    return SemilinearSet(std::move(fin), std::move(progs));
}

RealizablePieces realizable_pieces(const SemilinearSet& s) {
    if (s.empty())
        throw NotRealizableError("the empty set is not the multiples set of any shift");
    if (s.is_finite()) {
        if (s.contains(0))
            throw NotRealizableError("finite set containing 0 is not realizable");
        RealizablePieces out;
        out.finite_cycles = s.finite_part();
        return out;
    }
    if (!s.contains(0))
        throw NotRealizableError("infinite set must contain 0 (an aperiodic point)");

    const std::uint64_t period = s.period();
    const std::uint64_t threshold = s.threshold();
    std::set<std::uint64_t> residues;
    for (const auto& p : s.progressions()) residues.insert(p.start % period);

    // A residue class r of the tail is coverable iff some d | gcd(r, period)
    // has every multiple-of-d class occupied; then d(N+k) sits inside the set.
    std::set<std::uint64_t> steps;
    for (const auto& p : s.progressions()) {
        std::uint64_t r = p.start % period;
        std::uint64_t g = r == 0 ? period : std::gcd(r, period);
        std::uint64_t best = 0;
        for (std::uint64_t d = g; d >= 1; --d) {
            if (g % d != 0) continue;
            bool ok = true;
            for (std::uint64_t j = 0; ok && j < period / d; ++j)
                if (!residues.count(j * d % period)) ok = false;
            if (ok) {
                best = d;
                break;
            }
        }
        if (best == 0)
            throw NotRealizableError(
                "tail residue class " + std::to_string(r) +
                " is not a union of full progressions a(N+k)");
        steps.insert(best);
    }

    RealizablePieces out;
    for (std::uint64_t a : steps) {
        std::uint64_t k = (threshold + a - 1) / a;
        if (k == 0) k = 1;
        out.progressions.emplace_back(a, k);
    }
    // Everything below the progression starts is carried by plain cycles.
    for (std::uint64_t x : s.elements_up_to(threshold + period)) {
        if (x == 0) continue;
        bool covered = false;
        for (auto [a, k] : out.progressions)
            if (x % a == 0 && x >= a * k) covered = true;
        if (!covered) out.finite_cycles.insert(x);
    }
    return out;
}

bool is_realizable_period_set(const SemilinearSet& s) {
    try {
        realizable_pieces(s);
        return true;
    } catch (const NotRealizableError&) {
        return false;
    }
}

std::string SemilinearSet::to_string() const {
    std::ostringstream out;
    bool first = true;
    auto sep = [&] {
        if (!first) out << " + ";
        first = false;
    };
    if (!finite_.empty() || progs_.empty()) {
        sep();
        out << '{';
        bool f2 = true;
        for (std::uint64_t v : finite_) {
            if (!f2) out << ',';
            f2 = false;
            out << v;
        }
        out << '}';
    }
    auto sorted = progs_;
    std::sort(sorted.begin(), sorted.end(), [](const Progression& a, const Progression& b) {
        return std::tie(a.step, a.start) < std::tie(b.step, b.start);
    });
    for (const auto& p : sorted) {
        sep();
        if (p.start % p.step == 0) {
            std::uint64_t k = p.start / p.step;
            if (k == 1)
                out << p.step << "N*";
            else
                out << p.step << "(N+" << k << ")";
        } else {
            out << "P(" << p.start << ',' << p.step << ')';
        }
    }
    return out.str();
}

namespace {

struct Cursor {
    const std::string& s;
    std::size_t i = 0;
    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) throw ParseErrorSL("expected '" + std::string(1, c) + "' in set syntax");
    }
    std::uint64_t number() {
        skip_ws();
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
            throw ParseErrorSL("expected number in set syntax");
        std::uint64_t v = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
            v = v * 10 + (s[i++] - '0');
        return v;
    }
    bool done() {
        skip_ws();
        return i >= s.size();
    }
    struct ParseErrorSL : std::runtime_error {
        using std::runtime_error::runtime_error;
    };
};

}  // namespace

SemilinearSet SemilinearSet::parse(const std::string& text) {
    std::set<std::uint64_t> fin;
    std::vector<Progression> progs;
    Cursor c{text};
    bool want_term = true;
    while (!c.done()) {
        if (!want_term) {
            c.expect('+');
            want_term = true;
            continue;
        }
        c.skip_ws();
        if (c.eat('{')) {
            if (!c.eat('}')) {
                for (;;) {
                    fin.insert(c.number());
                    if (c.eat('}')) break;
                    c.expect(',');
                }
            }
        } else if (c.eat('P')) {
            c.expect('(');
            std::uint64_t start = c.number();
            c.expect(',');
            std::uint64_t step = c.number();
            c.expect(')');
            progs.push_back({start, step});
        } else {
            std::uint64_t a = c.number();
            if (a == 0) throw Cursor::ParseErrorSL("progression coefficient must be positive");
            if (c.eat('N')) {
                c.expect('*');
                progs.push_back({a, a});
            } else {
                c.expect('(');
                c.skip_ws();
                c.expect('N');
                c.expect('+');
                std::uint64_t k = c.number();
                c.expect(')');
                progs.push_back({a * k, a});
            }
        }
        want_term = false;
    }
    if (want_term && !(fin.empty() && progs.empty()))
        throw Cursor::ParseErrorSL("trailing '+' in set syntax");
    return SemilinearSet(std::move(fin), std::move(progs));
}

}  // namespace stablab
