#pragma once

#include "apw/summand.hpp"

#include <utility>

namespace apw {

/// Image of the fiber-integration-after-restriction map, computed from the
/// torus data of the gluing spec.  Distinct summands: the kernels of the two
/// first-homology maps intersected (fiber integration is onto for a 2-torus,
/// so no further cut is needed).  Same ambient with the attested boundary
/// condition: kernel of the difference of the two maps.  Otherwise throws
/// HypothesisNotMet.
Subspace image_p_shriek(const SumSpec& spec);

/// Trivial neck bundle with nonzero image: branch (i), perturbation covector
/// the first echelon basis vector, all but countably many parameters.
/// Nontrivial neck over a surjective image: branch (ii) with phi = (1, alpha)
/// and every nonzero parameter.  Anything else: Unknown.
Verdict aperiodicity_verdict(long long neck_euler_k, const Subspace& image);

/// Performs the sum at the invariant level: Euler characteristics and
/// signatures add, fundamental-group data propagates only along the
/// patterns the torus tags justify, and the verdict is computed from the
/// image subspace.  Throws on unequal areas, non-opposite self-intersections
/// or missing tori.
SumResult symplectic_sum(const SumSpec& spec);

Summand rescale(Summand s, const ScalarK& lambda);

/// Blow-up: e + 1, sigma - 1; a marked torus through the blown-up point
/// loses one self-intersection and the (symbolic) exceptional area.
Summand blow_up(Summand s, const std::optional<std::string>& on_torus = std::nullopt);

/// Inverse of blow_up; requires a recorded exceptional class.
Summand blow_down(Summand s, const std::optional<std::string>& on_torus = std::nullopt);

/// Recovers the originating spec of a sum; throws when the result was not
/// produced by symplectic_sum.
SumSpec cut(const SumResult& result);

struct CutObstructionReport {
    Rational omega_square = 0;
    Rational area_plus = 0;
    Rational area_minus = 0;
    Rational fiber_area = 0;  // omega on [T+] - [T-]
    bool cut_impossible = false;
};

/// Checks a candidate symplectic class w = a PD[T+] + b PD[T-] against the
/// requirements of a cut along the shared hypersurface: positive square,
/// positive areas, and equal areas of the two tori.  Unequal areas flag the
/// cut as impossible.  Throws when the square is not positive.
CutObstructionReport cut_obstruction_check(const IntMatrix& intersection,
                                           const std::pair<ScalarK, ScalarK>& omega_class);
CutObstructionReport cut_obstruction_check(const std::pair<ScalarK, ScalarK>& omega_class);

struct ProductFactor {
    std::string name;
    long long euler_char = 2;
    int dim = 2;
};

/// Crossing with a closed symplectic factor: dimensions add, Euler
/// characteristics multiply, the aperiodicity certificate survives as a
/// product certificate; signature and torus data are not tracked above
/// dimension four.
Summand product_stabilize(Summand s, const ProductFactor& factor);

/// Sum along a torus known to be disjoint from a violating hypersurface of
/// the left summand: the verdict is inherited regardless of the criterion.
/// Falls back to the plain criterion verdict when the left flag is unknown;
/// throws when the flag is present but lacks the disjointness tag.
SumResult sum_away_from_neck(const SumSpec& spec);

/// Collar family realizing an aperiodicity certificate over a 2-torus base,
/// for handing a sum verdict to the dynamical engine.
CollarFamily collar_family_from(const SumResult& result);

}  // namespace apw
