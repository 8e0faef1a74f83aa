#pragma once

#include "apw/linalg.hpp"
#include "apw/matrix.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace apw {

/// Raised when N(u,s) degenerates at the requested parameters.
struct SingularParameterError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Perturbed collar form family on (-eps, eps) x Y for a principal circle
/// bundle Y over the m-torus.  The slice form at parameters (u, s) restricts
/// to the base as N(u,s) = B + u*beta + s*gamma, plus the coupling
/// u * a ∧ phi with the connection form a; the collar direction contributes
/// ds ∧ a.  euler_k is the Euler number of the bundle: 0 forces gamma = 0,
/// and a nontrivial bundle is only carried over a 2-torus base, where the
/// curvature representative is pinned to gamma_12 = -euler_k.
struct CollarFamily {
    int m = 2;
    QMatrix B, beta, gamma;
    std::vector<ScalarK> phi;
    long long euler_k = 0;
    Rational eps = rat(1, 2);
    Rational delta = rat(1, 2);

    void validate() const;
};

/// B, beta as given; gamma derived from euler_k; delta defaulted to a
/// certified invertibility radius (see default_delta).
CollarFamily make_collar_family(const QMatrix& b, const QMatrix& beta,
                                const std::vector<ScalarK>& phi, long long euler_k,
                                const Rational& eps = rat(1, 2));

/// Pfaffian of an antisymmetric matrix over the exact scalars.
ScalarK pfaffian(const QMatrix& a);

/// Largest power-of-two rational <= 1 such that the Pfaffian of N(u,s) is
/// certified nonzero for all |u|, |s| <= delta by a coefficient-sum bound.
Rational default_delta(const QMatrix& b, const QMatrix& beta, const QMatrix& gamma);

/// N(u,s) = B + u*beta + s*gamma; affine in (u, s) and antisymmetric.
QMatrix n_matrix(const CollarFamily& fam, const ScalarK& u, const ScalarK& s);

/// For a 2-torus base, the scalar n with N = n * J, J = [[0,-1],[1,0]].
ScalarK m2_scale(const QMatrix& n);

/// Solves N(u,s) c = u*phi exactly.  N must stay pure rational at the given
/// parameters (symbolic parameters are accepted whenever the terms they
/// multiply vanish).  The solution is orthogonal to phi; both identities are
/// re-checked formally before returning.
std::vector<ScalarK> kernel_direction(const CollarFamily& fam, const ScalarK& u,
                                      const ScalarK& s);

struct OrbitVerdict {
    enum class Kind { Closed, NonClosed, Undetermined };
    Kind kind = Kind::Undetermined;
    std::optional<Rational> period;  // present and positive iff Closed
    std::string certificate;

    bool closed() const { return kind == Kind::Closed; }
};

/// Exact orbit classification of the slice field y_c + v.  Trivial bundle:
/// closed iff every component of c is rational, with period the lcm of the
/// denominators (and 1 for the fiber).  Nontrivial bundle over T^2: fiber
/// circles when c = 0, no closed orbit when the components are rationally
/// independent, and Undetermined in the remaining holonomy-sensitive case.
OrbitVerdict classify_orbit(const std::vector<ScalarK>& c, long long euler_k);

enum class USet { AllButCountablyMany, AllNonzeroU };

struct ParamSample {
    ScalarK u, s;
    OrbitVerdict verdict;
};

struct ParamReport {
    bool met = false;
    std::string branch;  // "i" (trivial bundle) or "ii" (2-torus, k != 0)
    USet u_set = USet::AllButCountablyMany;
    Rational delta;
    std::vector<ParamSample> samples;
    std::string reason;
};

/// Decides whether the perturbation criterion applies to the family and
/// reports per-parameter verdicts on a sample grid.  Branch (i) needs a
/// nonzero phi and guarantees all but countably many u; branch (ii) needs
/// rationally independent phi components and holds for every nonzero u.
ParamReport aperiodic_params(const CollarFamily& fam);

/// Compactly supported C^1 bump: identically 1 on [-eps/2, eps/2], piecewise
/// cubic smoothstep down to 0 at ±eps, zero outside.  Exact at rational s.
struct BumpSpec {
    Rational eps = rat(1, 2);

    Rational value(const Rational& s) const;
    Rational derivative(const Rational& s) const;
    double value(double s) const;
    double derivative(double s) const;
};

/// Point of the collar model: base torus coordinates, fiber coordinate, and
/// the collar coordinate s.  Base and fiber are reduced mod 1 on construction.
struct NilPoint {
    std::vector<Rational> base;
    Rational fiber = 0;
    Rational s = 0;

    NilPoint() = default;
    NilPoint(std::vector<Rational> base_, Rational fiber_, Rational s_);
};

/// Matrix of the collar form at (u, s) in the frame (base_1..base_m, fiber,
/// s-direction), with the connection covector used as the fiber coframe.
QMatrix collar_form_matrix(const CollarFamily& fam, const ScalarK& u, const ScalarK& s);

/// Covector ι_X(omega) = X^T Omega in the same frame.
std::vector<ScalarK> interior_product(const QMatrix& omega, const std::vector<ScalarK>& x);

/// Hamiltonian vector field of H = f(s) at the given collar point, in frame
/// coordinates: f'(s) * (c(u,s), 1, 0).  Satisfies ι_X ω + dH = 0 exactly.
std::vector<ScalarK> hamiltonian_field(const CollarFamily& fam, const ScalarK& u,
                                       const BumpSpec& f, const NilPoint& pt);

/// ι_X ω + dH in frame coordinates; identically zero for the field above.
std::vector<ScalarK> hamiltonian_residual(const CollarFamily& fam, const ScalarK& u,
                                          const BumpSpec& f, const NilPoint& pt);

}  // namespace apw
