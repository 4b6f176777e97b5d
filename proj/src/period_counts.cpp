#include "stablab/period_counts.hpp"

#include <numeric>
#include <stdexcept>

namespace stablab {

namespace {

using Matrix = std::vector<mpz_class>;  // row-major n x n

Matrix adjacency(const TilesetGraph& g) {
    const std::size_t n = g.vertex_count();
    Matrix a(n * n, 0);
    for (auto [u, v] : g.edges()) a[u * n + v] = 1;
    return a;
}

Matrix multiply(const Matrix& a, const Matrix& b, std::size_t n) {
    Matrix c(n * n, 0);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const mpz_class& aik = a[i * n + k];
            if (aik == 0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                const mpz_class& bkj = b[k * n + j];
                if (bkj != 0) c[i * n + j] += aik * bkj;
            }
        }
    }
    return c;
}

mpz_class trace(const Matrix& a, std::size_t n) {
    mpz_class t = 0;
    for (std::size_t i = 0; i < n; ++i) t += a[i * n + i];
    return t;
}

/// Coefficients c_1..c_n of det(lambda I - A) = lambda^n + c_1 lambda^(n-1)
/// + ... + c_n, by Faddeev-LeVerrier (exact integer divisions).
std::vector<mpz_class> char_poly(const Matrix& a, std::size_t n) {
    std::vector<mpz_class> c(n + 1, 0);
    Matrix m = a;
    c[1] = -trace(m, n);
    for (std::size_t k = 2; k <= n; ++k) {
        for (std::size_t i = 0; i < n; ++i) m[i * n + i] += c[k - 1];
        m = multiply(a, m, n);
        mpz_class t = trace(m, n);
        mpz_class ck;
        mpz_divexact_ui(ck.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(k));
        c[k] = -ck;
    }
    return c;
}

int moebius(std::uint64_t n) {
    int mu = 1;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        mu = -mu;
    }
    if (n > 1) mu = -mu;
    return mu;
}

}  // namespace

PeriodCountTable count_periodic_points(const TilesetGraph& g, std::uint64_t bound) {
    PeriodCountTable t;
    t.bound = bound;
    const std::size_t n = g.vertex_count();
    if (n == 0) {
        for (std::uint64_t k = 1; k <= bound; ++k) t.counts[k] = 0;
        return t;
    }
    Matrix a = adjacency(g);
    auto c = char_poly(a, n);
    // Newton's identities give the power sums tr(A^k) from the coefficients.
    std::vector<mpz_class> p(bound + 1, 0);
    for (std::uint64_t k = 1; k <= bound; ++k) {
        mpz_class sum = 0;
        const std::uint64_t top = std::min<std::uint64_t>(k, n);
        for (std::uint64_t i = 1; i <= top; ++i) {
            if (i == k)
                sum += c[i] * static_cast<unsigned long>(k);
            else
                sum += c[i] * p[k - i];
        }
        p[k] = -sum;
        t.counts[k] = p[k];
    }
    return t;
}

namespace reference {

PeriodCountTable count_periodic_points_matpow(const TilesetGraph& g, std::uint64_t bound) {
    PeriodCountTable t;
    t.bound = bound;
    const std::size_t n = g.vertex_count();
    if (n == 0) {
        for (std::uint64_t k = 1; k <= bound; ++k) t.counts[k] = 0;
        return t;
    }
    Matrix a = adjacency(g);
    Matrix power = a;
    for (std::uint64_t k = 1; k <= bound; ++k) {
        t.counts[k] = trace(power, n);
        if (k < bound) {
            Matrix next(n * n, 0);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t kk = 0; kk < n; ++kk) {
                    if (power[i * n + kk] == 0) continue;
                    for (std::size_t j = 0; j < n; ++j)
                        if (a[kk * n + j] != 0) next[i * n + j] += power[i * n + kk];
                }
            power = std::move(next);
        }
    }
    return t;
}

}  // namespace reference

mpz_class least_period_count(const PeriodCountTable& t, std::uint64_t p) {
    if (p == 0) throw std::invalid_argument("least period 0 is not counted here");
    if (p > t.bound) throw std::invalid_argument("count table bound too small");
    mpz_class total = 0;
    for (std::uint64_t d = 1; d <= p; ++d) {
        if (p % d) continue;
        int mu = moebius(p / d);
        if (mu == 1)
            total += t.counts.at(d);
        else if (mu == -1)
            total -= t.counts.at(d);
    }
    return total;
}

bool least_period_exists(const TilesetGraph& g, std::uint64_t p) {
    if (p == 0)
        throw std::invalid_argument("p = 0 is decided by has_aperiodic_point");
    if (!g.is_essential()) throw std::invalid_argument("graph must be essential");
    auto t = count_periodic_points(g, p);
    return least_period_count(t, p) > 0;
}

bool has_aperiodic_point(const TilesetGraph& g) {
    if (!g.is_essential()) throw std::invalid_argument("graph must be essential");
    if (g.empty()) throw EmptySftError("empty shift");
    for (const auto& comp : g.strongly_connected_components()) {
        std::set<int> members(comp.begin(), comp.end());
        std::size_t internal_edges = 0;
        for (auto [u, v] : g.edges())
            if (members.count(u) && members.count(v)) ++internal_edges;
        // A strongly connected component with more internal edges than
        // vertices carries two distinct cycles through some vertex.
        if (internal_edges > comp.size()) return true;
    }
    return false;
}

std::uint64_t scc_cycle_gcd(const TilesetGraph& g, const std::vector<int>& component) {
    std::set<int> members(component.begin(), component.end());
    std::map<int, std::int64_t> level;
    std::vector<int> stack{component.front()};
    level[component.front()] = 0;
    auto adj = g.out_adjacency();
    std::uint64_t result = 0;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v : adj[u]) {
            if (!members.count(v)) continue;
            if (!level.count(v)) {
                level[v] = level[u] + 1;
                stack.push_back(v);
            } else {
                std::int64_t diff = level[u] + 1 - level[v];
                result = std::gcd(result, static_cast<std::uint64_t>(diff < 0 ? -diff : diff));
            }
        }
    }
    return result;
}

namespace {

bool scc_is_simple_cycle(const TilesetGraph& g, const std::vector<int>& comp,
                         std::size_t* internal_edges_out) {
    std::set<int> members(comp.begin(), comp.end());
    std::size_t internal_edges = 0;
    for (auto [u, v] : g.edges())
        if (members.count(u) && members.count(v)) ++internal_edges;
    if (internal_edges_out) *internal_edges_out = internal_edges;
    return internal_edges == comp.size();
}

bool scc_is_trivial(const TilesetGraph& g, const std::vector<int>& comp) {
    return comp.size() == 1 && !g.has_edge(comp.front(), comp.front());
}

}  // namespace

std::uint64_t multiples_structural_bound(const TilesetGraph& g) {
    std::uint64_t bound = 1;
    for (const auto& comp : g.strongly_connected_components()) {
        if (scc_is_trivial(g, comp) || scc_is_simple_cycle(g, comp, nullptr)) continue;
        std::uint64_t v = comp.size();
        bound = std::max(bound, v * v + 2 * scc_cycle_gcd(g, comp));
    }
    return bound;
}

SemilinearSet multiples(const TilesetGraph& g, std::uint64_t bound) {
    if (!g.is_essential()) throw std::invalid_argument("graph must be essential");
    if (g.empty()) throw EmptySftError("empty shift has no multiples");
    if (bound < multiples_structural_bound(g))
        throw BoundTooSmallError("bound below the structural certification bound " +
                                 std::to_string(multiples_structural_bound(g)));

    SemilinearSet result;
    std::set<std::uint64_t> finite_lengths;
    if (has_aperiodic_point(g)) finite_lengths.insert(0);

    for (const auto& comp : g.strongly_connected_components()) {
        if (scc_is_trivial(g, comp)) continue;
        if (scc_is_simple_cycle(g, comp, nullptr)) {
            finite_lengths.insert(comp.size());
            continue;
        }
        const std::uint64_t v = comp.size();
        const std::uint64_t d = scc_cycle_gcd(g, comp);
        const std::uint64_t window_end = std::min<std::uint64_t>(bound, v * v + 2 * d);
        const std::uint64_t tail_start = v * v;
        TilesetGraph sub = g.induced_subgraph(comp);
        auto counts = count_periodic_points(sub, window_end);
        std::vector<bool> member(window_end + 1, false);
        for (std::uint64_t p = 1; p <= window_end; ++p)
            member[p] = least_period_count(counts, p) > 0;
        for (std::uint64_t p = tail_start; p + d <= window_end; ++p)
            if (member[p] != member[p + d])
                throw BoundTooSmallError(
                    "eventual periodicity of least-period set not certified; "
                    "increase bound");
        std::set<std::uint64_t> fin;
        std::vector<Progression> progs;
        for (std::uint64_t p = 1; p < tail_start && p <= window_end; ++p)
            if (member[p]) fin.insert(p);
        for (std::uint64_t r = 0; r < d; ++r) {
            std::uint64_t x = tail_start + r;
            if (x <= window_end && member[x]) progs.push_back({x, d});
        }
        result = union_sl(result, SemilinearSet(std::move(fin), std::move(progs)));
    }
    return union_sl(result, SemilinearSet::finite(std::move(finite_lengths)));
}

SemilinearSet multiples(const TilesetGraph& g) {
    return multiples(g, multiples_structural_bound(g));
}

}  // namespace stablab
