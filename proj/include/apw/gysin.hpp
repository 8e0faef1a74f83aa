#pragma once

#include "apw/forms.hpp"
#include "apw/linalg.hpp"
#include "apw/subspace.hpp"

#include <vector>

namespace apw {

/// Constant-coefficient model of the total space of a principal circle bundle
/// over the m-torus with curvature form gamma (gamma represents minus the
/// Euler class).  A degree-k element is xi + a ∧ eta with xi ∈ Λ^k(V),
/// eta ∈ Λ^{k-1}(V) and a the connection form; the differential is
/// d(xi + a ∧ eta) = gamma ∧ eta.  Cohomology, the fiber integration p_! and
/// the pullback p^* are all computed by exact linear algebra in the
/// coordinate bases, so the exactness statements of the Gysin sequence become
/// checkable identities between rational subspaces.
class CircleBundleModel {
public:
    CircleBundleModel(int m, ConstForm gamma);

    int base_dim() const { return m_; }
    const ConstForm& curvature() const { return gamma_; }

    /// Dimension of Λ^k(V) (zero outside 0..m).
    size_t lambda_dim(int k) const;
    /// Dimension of the degree-k model space Λ^k ⊕ a∧Λ^{k-1}.
    size_t total_dim(int k) const;

    /// Cocycles and coboundaries in the degree-k model space, as rational
    /// subspaces in the (xi, eta) coordinates.
    Subspace cocycles(int k) const;
    Subspace coboundaries(int k) const;

    /// Image of p_! on degree-k cohomology, as a subspace of Λ^{k-1}(V):
    /// the eta-coordinate projection of the cocycle space.
    Subspace gysin_image(int k) const;

    /// Kernel of the cup product with the Euler class,
    /// ker(gamma ∧ · : Λ^{k-1} → Λ^{k+1}), computed independently of the
    /// bundle model from the wedge matrix.
    Subspace euler_cup_kernel(int k) const;

    /// p_! applied to a cocycle given in (xi, eta) coordinates.
    RatVec fiber_integrate(const RatVec& cocycle, int k) const;

    /// p^* of a base class: (xi, 0) in the degree-k model coordinates.
    RatVec pullback(const RatVec& base_class, int k) const;

    /// True iff p_!(p^*(x)) = 0 for every coordinate basis class of Λ^k(V).
    bool pullback_then_integrate_vanishes(int k) const;

private:
    int m_;
    ConstForm gamma_;
};

}  // namespace apw
