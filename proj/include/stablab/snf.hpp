#pragma once

#include <cstdint>
#include <vector>

namespace stablab {

/// Dense integer matrix, row-major.
using IntMat = std::vector<std::vector<std::int64_t>>;

IntMat identity_mat(std::size_t n);
IntMat mat_mul(const IntMat& a, const IntMat& b);
std::vector<std::int64_t> mat_apply(const IntMat& a, const std::vector<std::int64_t>& x);

/// Row-style Hermite normal form of the lattice spanned by the input rows:
/// echelon basis with positive pivots, entries above each pivot reduced to
/// [0, pivot). Zero rows are dropped; the result is a canonical basis.
IntMat hnf_rows(const IntMat& rows);

/// Canonical representative of x modulo the lattice with HNF basis `h`
/// (componentwise least nonnegative residues under the pivots).
std::vector<std::int64_t> hnf_reduce(const IntMat& h, std::vector<std::int64_t> x);

/// Index of the lattice in Z^n (product of pivots); 0 means infinite index
/// (rank deficient).
std::int64_t hnf_index(const IntMat& h, std::size_t n);

/// U * A * V = D with U, V unimodular and D diagonal, the diagonal entries
/// nonnegative and forming a divisibility chain. `uinv` is U^{-1}.
struct SmithResult {
    IntMat d, u, uinv, v;
};
SmithResult smith_normal_form(IntMat a);

}  // namespace stablab
