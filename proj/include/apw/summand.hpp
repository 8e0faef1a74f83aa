#pragma once

#include "apw/collar.hpp"
#include "apw/matrix.hpp"
#include "apw/subspace.hpp"

#include <optional>
#include <string>
#include <vector>

namespace apw {

/// Certificate attached to an aperiodicity verdict: which branch of the
/// perturbation criterion applies, the perturbation covector, the guaranteed
/// parameter set, and which marked tori stay disjoint from the violating
/// hypersurface (so later surgeries there preserve the verdict).
struct AperiodicCert {
    std::string branch;  // "i", "ii", "inherited", "product"
    std::vector<ScalarK> phi;
    USet u_set = USet::AllButCountablyMany;
    std::vector<std::string> disjoint_tori;
    std::vector<std::string> derivation;

    friend bool operator==(const AperiodicCert&, const AperiodicCert&) = default;
};

/// First-homology image of a marked torus.  Zero is an honest zero map
/// (automatic for simply connected ambients); Unknown means the model does
/// not carry the data and downstream computations must refuse rather than
/// guess.
struct H1Map {
    enum class Kind { Zero, Known, Unknown };
    Kind kind = Kind::Zero;
    IntMatrix map;  // rows = b1 of the ambient (free part), cols = 2

    static H1Map zero() { return {}; }
    static H1Map unknown() { return {Kind::Unknown, IntMatrix()}; }
    static H1Map known(IntMatrix m) { return {Kind::Known, std::move(m)}; }

    friend bool operator==(const H1Map&, const H1Map&) = default;
};

struct MarkedTorus {
    std::string label;
    long long self_int = 0;
    ScalarK area = ScalarK(1);
    H1Map h1_map;
    int pi1_image_rank = 0;
    bool homologically_nontrivial = true;  // symplectic tori always are
    bool complement_simply_connected = false;
    bool pi1_image_normally_generates = false;

    friend bool operator==(const MarkedTorus&, const MarkedTorus&) = default;
};

/// Invariant-level record of a closed symplectic manifold: the verdict
/// machinery consumes nothing finer than these numbers and tags.
struct Summand {
    std::string name;
    long long euler_char = 0;
    std::optional<long long> signature;       // dropped above dimension 4
    std::optional<long long> b1;
    std::optional<bool> simply_connected;     // nullopt: unknown
    int dim = 4;
    std::vector<MarkedTorus> tori;
    std::optional<AperiodicCert> aperiodic;   // nullopt: unknown
    int exceptional_count = 0;                // record of blow-ups not yet blown down
    std::optional<bool> minimal;              // unchecked annotation, never derived here

    std::optional<long long> c() const {
        if (!signature) return std::nullopt;
        return 3 * *signature + 2 * euler_char;
    }
    std::optional<Rational> chi_h() const {
        if (!signature) return std::nullopt;
        return Rational(euler_char + *signature) / 4;
    }
    /// (e - 2 + sigma) / 2 for simply connected four-manifolds.
    std::optional<long long> b_plus() const;

    const MarkedTorus& torus(const std::string& label) const;
    MarkedTorus* find_torus(const std::string& label);

    void validate() const;

    friend bool operator==(const Summand&, const Summand&) = default;
};

/// Gluing data for a symplectic sum.  same_ambient marks the case where both
/// tori sit in one manifold record; case_i_attested asserts the boundary
/// identification condition that makes the image formula applicable there
/// (supplied by constructors, never computed).  phi_class is the opaque
/// isotopy class tag of the normal-bundle isomorphism: it participates in
/// equality but in no invariant.
struct SumSpec {
    Summand left, right;
    std::string left_torus, right_torus;
    bool case_i_attested = false;
    std::string phi_class = "default";
    bool same_ambient = false;

    void validate() const;

    friend bool operator==(const SumSpec&, const SumSpec&) = default;
};

struct Verdict {
    enum class Kind { Aperiodic, Unknown };
    Kind kind = Kind::Unknown;
    std::optional<AperiodicCert> cert;

    bool aperiodic() const { return kind == Kind::Aperiodic; }

    friend bool operator==(const Verdict&, const Verdict&) = default;
};

struct SumResult {
    Summand manifold;
    long long neck_euler_k = 0;
    Subspace image;  // of the fiber integration composed with restriction
    Verdict verdict;
    std::optional<SumSpec> provenance;
};

/// The image-computation hypotheses fail (same-ambient sum without the
/// attested boundary condition); callers may fall back to the mapping-torus
/// route.
struct HypothesisNotMet : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace apw
