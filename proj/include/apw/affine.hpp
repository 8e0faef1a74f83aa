#pragma once

#include "apw/linalg.hpp"
#include "apw/matrix.hpp"
#include "apw/subspace.hpp"

#include <optional>
#include <vector>

namespace apw {

/// x -> A x + b on the m-torus, A in GL(m,Z), translation part exact with
/// declared irrational tags.
struct AffineTorusMap {
    IntMatrix a;
    std::vector<ScalarK> b;

    void validate() const;
    int dim() const { return static_cast<int>(a.rows()); }
};

struct PeriodicPointResult {
    int n = 0;
    bool exists = false;
    std::vector<ScalarK> witness;  // a fixed point of the n-th iterate when it exists
};

/// For each n <= max_n decides, exactly, whether the n-th iterate has a fixed
/// point: (A^n - I) x = -sum_{j<n} A^j b  (mod Z^m).  Solvability is settled
/// through the Smith normal form of A^n - I; rows with zero elementary
/// divisor force integrality of the rational part and vanishing of every tag
/// coefficient.  Witnesses are verified before they are returned.
std::vector<PeriodicPointResult> affine_periodic_points(const AffineTorusMap& map, int max_n);

/// ker(I - psi^T) on the first cohomology of the fiber torus: the invariant
/// classes that survive into the mapping torus.
Subspace mapping_torus_invariant(const IntMatrix& psi);

/// Integer entries, determinant one, and psi^T J psi = J for the standard
/// block J.  Throws on odd dimension.
bool is_sp_sl(const IntMatrix& psi);

/// Applies the map once, exactly.
std::vector<ScalarK> apply_affine(const AffineTorusMap& map, const std::vector<ScalarK>& x);

}  // namespace apw
