#include "stablab/snf.hpp"

#include <cstdlib>
#include <stdexcept>

namespace stablab {

IntMat identity_mat(std::size_t n) {
    IntMat m(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

IntMat mat_mul(const IntMat& a, const IntMat& b) {
    const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    IntMat c(n, std::vector<std::int64_t>(m, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < k; ++t)
            if (a[i][t])
                for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][t] * b[t][j];
    return c;
}

std::vector<std::int64_t> mat_apply(const IntMat& a, const std::vector<std::int64_t>& x) {
    std::vector<std::int64_t> y(a.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
    return y;
}

namespace {

struct ExtGcd {
    std::int64_t g, s, t;
};

ExtGcd ext_gcd(std::int64_t a, std::int64_t b) {
    if (b == 0) return {a < 0 ? -a : a, a < 0 ? std::int64_t{-1} : std::int64_t{1}, 0};
    ExtGcd r = ext_gcd(b, a % b);
    return {r.g, r.t, r.s - (a / b) * r.t};
}

}  // namespace

IntMat hnf_rows(const IntMat& rows) {
    IntMat a = rows;
    if (a.empty()) return a;
    const std::size_t cols = a[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
        std::size_t pivot = r;
        while (pivot < a.size() && a[pivot][c] == 0) ++pivot;
        if (pivot == a.size()) continue;
        std::swap(a[r], a[pivot]);
        for (std::size_t j = r + 1; j < a.size(); ++j) {
            while (a[j][c] != 0) {
                ExtGcd e = ext_gcd(a[r][c], a[j][c]);
                std::int64_t x = a[r][c] / e.g, y = a[j][c] / e.g;
                for (std::size_t t = 0; t < cols; ++t) {
                    std::int64_t top = e.s * a[r][t] + e.t * a[j][t];
                    std::int64_t bot = -y * a[r][t] + x * a[j][t];
                    a[r][t] = top;
                    a[j][t] = bot;
                }
            }
        }
        if (a[r][c] < 0)
            for (std::size_t t = 0; t < cols; ++t) a[r][t] = -a[r][t];
        for (std::size_t j = 0; j < r; ++j) {
            std::int64_t k = a[j][c] / a[r][c];
            if (a[j][c] % a[r][c] < 0) --k;
            if (k)
                for (std::size_t t = 0; t < cols; ++t) a[j][t] -= k * a[r][t];
        }
        ++r;
    }
    a.resize(r);
    return a;
}

std::vector<std::int64_t> hnf_reduce(const IntMat& h, std::vector<std::int64_t> x) {
    for (const auto& row : h) {
        std::size_t c = 0;
        while (c < row.size() && row[c] == 0) ++c;
        if (c == row.size()) continue;
        std::int64_t k = x[c] / row[c];
        if (x[c] % row[c] < 0) --k;
        if (k)
            for (std::size_t t = 0; t < x.size(); ++t) x[t] -= k * row[t];
    }
    return x;
}

std::int64_t hnf_index(const IntMat& h, std::size_t n) {
    if (h.size() < n) return 0;
    std::int64_t idx = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (h[i][i] == 0) return 0;
        idx *= h[i][i];
    }
    return idx;
}

SmithResult smith_normal_form(IntMat a) {
    const std::size_t n = a.size();
    const std::size_t m = n == 0 ? 0 : a[0].size();
    SmithResult res{std::move(a), identity_mat(n), identity_mat(n), identity_mat(m)};
    IntMat& d = res.d;

    auto row_add = [&](std::size_t dst, std::size_t src, std::int64_t k) {
        for (std::size_t t = 0; t < m; ++t) d[dst][t] += k * d[src][t];
        for (std::size_t t = 0; t < n; ++t) res.u[dst][t] += k * res.u[src][t];
        for (std::size_t t = 0; t < n; ++t) res.uinv[t][src] -= k * res.uinv[t][dst];
    };
    auto row_swap = [&](std::size_t i, std::size_t j) {
        std::swap(d[i], d[j]);
        std::swap(res.u[i], res.u[j]);
        for (std::size_t t = 0; t < n; ++t) std::swap(res.uinv[t][i], res.uinv[t][j]);
    };
    auto row_neg = [&](std::size_t i) {
        for (std::size_t t = 0; t < m; ++t) d[i][t] = -d[i][t];
        for (std::size_t t = 0; t < n; ++t) res.u[i][t] = -res.u[i][t];
        for (std::size_t t = 0; t < n; ++t) res.uinv[t][i] = -res.uinv[t][i];
    };
    auto col_add = [&](std::size_t dst, std::size_t src, std::int64_t k) {
        for (std::size_t t = 0; t < n; ++t) d[t][dst] += k * d[t][src];
        for (std::size_t t = 0; t < m; ++t) res.v[t][dst] += k * res.v[t][src];
    };
    auto col_swap = [&](std::size_t i, std::size_t j) {
        for (std::size_t t = 0; t < n; ++t) std::swap(d[t][i], d[t][j]);
        for (std::size_t t = 0; t < m; ++t) std::swap(res.v[t][i], res.v[t][j]);
    };

    const std::size_t steps = std::min(n, m);
    for (std::size_t t = 0; t < steps; ++t) {
        while (true) {
            // Smallest nonzero entry of the trailing submatrix to (t,t).
            std::size_t bi = n, bj = m;
            for (std::size_t i = t; i < n; ++i)
                for (std::size_t j = t; j < m; ++j)
                    if (d[i][j] != 0 &&
                        (bi == n || std::llabs(d[i][j]) < std::llabs(d[bi][bj]))) {
                        bi = i;
                        bj = j;
                    }
            if (bi == n) break;  // trailing block is zero
            if (bi != t) row_swap(t, bi);
            if (bj != t) col_swap(t, bj);
            if (d[t][t] < 0) row_neg(t);

            bool clean = true;
            for (std::size_t i = t + 1; i < n; ++i)
                if (d[i][t] % d[t][t] != 0) {
                    row_add(i, t, -(d[i][t] / d[t][t]));
                    clean = false;
                }
            for (std::size_t j = t + 1; j < m; ++j)
                if (d[t][j] % d[t][t] != 0) {
                    col_add(j, t, -(d[t][j] / d[t][t]));
                    clean = false;
                }
            if (!clean) continue;  // smaller remainders appeared; re-pick pivot
            for (std::size_t i = t + 1; i < n; ++i)
                if (d[i][t]) row_add(i, t, -(d[i][t] / d[t][t]));
            for (std::size_t j = t + 1; j < m; ++j)
                if (d[t][j]) col_add(j, t, -(d[t][j] / d[t][t]));

            // Divisibility: fold in any entry the pivot does not divide.
            bool divides = true;
            for (std::size_t i = t + 1; i < n && divides; ++i)
                for (std::size_t j = t + 1; j < m && divides; ++j)
                    if (d[i][j] % d[t][t] != 0) {
                        row_add(t, i, 1);
                        divides = false;
                    }
            if (divides) break;
        }
    }
    return res;
}

}  // namespace stablab
