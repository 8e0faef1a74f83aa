#pragma once

#include "apw/matrix.hpp"
#include "apw/subspace.hpp"

#include <optional>
#include <tuple>
#include <vector>

namespace apw {

/// Reduced row echelon form of a rational matrix; returns the pivot columns.
std::vector<size_t> rref_inplace(std::vector<RatVec>& rows);

/// Rank over the field generated by the rationals and the declared tags.
/// Tagged entries are treated as algebraically independent transcendentals
/// (no relations beyond the declared Q-independence are assumed), which the
/// kernel computations here only ever meet in the degree-one fragment.
unsigned rank(const QMatrix& m);

/// Exact kernel of a rational matrix, in echelon form.  Throws on tagged
/// entries: kernels of genuinely irrational matrices need not be rational
/// subspaces and fall outside this representation.
Subspace kernel(const QMatrix& m);
Subspace kernel(const IntMatrix& m);

/// Exact intersection; throws on ambient dimension mismatch.
Subspace intersect(const Subspace& u, const Subspace& v);

/// Solves A x = b for rational square A, exact.  The right-hand side may carry
/// tags; the solve is Q-linear, so each tag coefficient vector is solved
/// independently.  Returns nullopt when A is singular.
std::optional<std::vector<ScalarK>> solve(const QMatrix& a, const std::vector<ScalarK>& b);

/// Rational matrix inverse; nullopt when singular.
std::optional<QMatrix> inverse(const QMatrix& a);

/// Exact determinant of a rational matrix.
Rational det(const QMatrix& a);

/// Smith normal form: U * A * V = D with U, V unimodular and the diagonal of D
/// a non-negative divisibility chain d1 | d2 | ... .
struct SmithNormalForm {
    IntMatrix u, d, v;
    std::vector<Int> divisors() const {
        std::vector<Int> out;
        size_t n = std::min(d.rows(), d.cols());
        for (size_t i = 0; i < n; ++i) out.push_back(d.at(i, i));
        return out;
    }
};
SmithNormalForm smith_normal_form(const IntMatrix& a);

/// True iff the scalars are linearly independent over Q, decided exactly via
/// the rank of their tag-coefficient matrix.  Degree <= 1 inputs only.
bool rationally_independent(const std::vector<ScalarK>& xs);

}  // namespace apw
