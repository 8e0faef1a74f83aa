#pragma once

#include "apw/affine.hpp"
#include "apw/collar.hpp"
#include "apw/sumops.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace apw {

/// Finite group presentation; words are lists of (generator index 1..g,
/// exponent).  The empty presentation (no generators) is rejected.
struct GroupPresentation {
    int generators = 0;
    std::vector<std::vector<std::pair<int, int>>> relators;

    void validate() const;
    /// Exponent-sum matrix, relators x generators.
    IntMatrix relation_matrix() const;
};

struct AbelianGroup {
    long long rank = 0;
    std::vector<Int> torsion;  // invariant factors > 1, in divisibility order

    friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;
};

/// Cokernel of the relation matrix (rows act as relations on Z^cols).
AbelianGroup abelianization(const IntMatrix& relations);

struct GeographyPoint {
    long long chi = 0;
    long long c = 0;
};

enum class GeographyStatus { Covered, NotCovered, OutOfRegion };

struct GeographyResult {
    GeographyStatus status = GeographyStatus::NotCovered;
    std::string range_label;  // "A".."G" when covered

    bool covered() const { return status == GeographyStatus::Covered; }
};

/// Coverage of the realizable strip 0 <= c <= 8*chi + 2 by the seven
/// constructed ranges, first match wins:
///   A: c even,  0 <= c <= 8chi - 10      B: c odd, 1 <= c <= 8chi - 17
///   C: c odd,   7 <= c <= 8chi - 11      D: c even, 364 <= c <= 8chi + 2
///   E: c odd, 383 <= c <= 8chi - 3       F: c = 8chi + 1, c >= 385
///   G: c = 8chi - 1, c >= 391
GeographyResult geography_covered(const GeographyPoint& pt);

std::vector<std::pair<GeographyPoint, GeographyResult>> geography_enumerate(long long chi_min,
                                                                            long long chi_max);

/// Sum-level derivation for points of ranges A and D from declared
/// invariant-level summands; nullopt for the other ranges.
std::optional<SumResult> geography_trace(const GeographyPoint& pt);

struct KnotData {
    std::string name;
    bool fibered = false;
    int seifert_genus = 0;
    bool alexander_nontrivial = false;
};

struct FamilyVerdict {
    CollarFamily family;
    Subspace image;  // of the fiber-integration composition, full for these
    Verdict verdict;
};

/// Constant-coefficient family on the 2n-torus: block-standard form,
/// no curvature, perturbation covector e1.  Branch (i), n >= 2.
FamilyVerdict zehnder_torus(int n);

struct MappingTorusResult {
    Summand manifold;  // circle times the mapping torus
    Subspace image;
    Verdict verdict;
};

/// Suspension of a linear symplectomorphism: the image is the invariant
/// subspace ker(1 - psi^T); the verdict is branch (i) exactly when 1 is an
/// eigenvalue of psi.
MappingTorusResult kodaira_thurston(const IntMatrix& psi);

Summand cp2_with_cubic();

/// Elliptic surfaces: E(1) from nine blow-ups of the projective plane on a
/// cubic, E(n) by iterated fiber sums.  Marked fiber T(n) plus a parallel
/// copy; aperiodic for n >= 2 with the hypersurface disjoint from T(n).
Summand elliptic_e(int n);

/// Logarithmic transform bookkeeping: invariants unchanged, verdict
/// preserved for n >= 2 with a recorded smallness caveat.
Summand log_transform(const Summand& en, int p, int q);

/// Circle times the zero-surgery on a fibered knot, with its section torus.
Summand s1_times_mk(const KnotData& k);

/// Knot-surgery homotopy elliptic surface, n >= 2 and K fibered.
Summand knot_surgery(int n, const KnotData& k);

struct GompfStage {
    int stage = 0;
    std::string torus;
    unsigned image_rank = 0;
    bool aperiodic = false;
};

struct GompfResult {
    Summand manifold;
    AbelianGroup h1;
    Verdict verdict;
    std::vector<GompfStage> chain;
};

/// Symplectic manifold with the prescribed fundamental group, built as a
/// chain of fiber sums with the rational elliptic surface; the first
/// homology comes out of the accumulated relation matrix.
GompfResult gompf_manifold(const GroupPresentation& p);

/// Nontrivial-neck example: the degree-three elliptic surface, summed with
/// the projective plane along a section-smoothed torus of square -9 and a
/// cubic.  Branch (ii).
SumResult elliptic_cp2_nontrivial_neck();

}  // namespace apw
