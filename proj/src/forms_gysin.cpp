#include "apw/forms.hpp"
#include "apw/gysin.hpp"

#include <stdexcept>

namespace apw {

std::vector<MultiIndex> multi_indices(int m, int k) {
    std::vector<MultiIndex> out;
    if (k < 0 || k > m) return out;
    MultiIndex idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i + 1;
    while (true) {
        out.push_back(idx);
        int pos = k - 1;
        while (pos >= 0 && idx[pos] == m - (k - 1 - pos)) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
    if (k == 0) out = {MultiIndex{}};
    return out;
}

QMatrix wedge_matrix(const ConstForm& gamma, int k) {
    int m = gamma.dim();
    auto dom = multi_indices(m, k);
    auto cod = multi_indices(m, k + 2);
    QMatrix mat(cod.size(), dom.size());
    if (k + 2 > m) return mat;  // target space vanishes; zero map
    for (size_t j = 0; j < dom.size(); ++j) {
        ConstForm basis(k, m);
        basis.set(dom[j], ScalarK(1));
        ConstForm image = wedge(gamma, basis);
        for (size_t i = 0; i < cod.size(); ++i) mat.at(i, j) = image.coeff(cod[i]);
    }
    return mat;
}

CircleBundleModel::CircleBundleModel(int m, ConstForm gamma) : m_(m), gamma_(std::move(gamma)) {
    if (gamma_.degree() != 2 || gamma_.dim() != m)
        throw std::invalid_argument("curvature must be a 2-form on the base torus");
}

size_t CircleBundleModel::lambda_dim(int k) const {
    if (k < 0 || k > m_) return 0;
    return multi_indices(m_, k).size();
}

size_t CircleBundleModel::total_dim(int k) const { return lambda_dim(k) + lambda_dim(k - 1); }

Subspace CircleBundleModel::cocycles(int k) const {
    // d(xi, eta) = (gamma ∧ eta, 0); kernel is Λ^k ⊕ ker(gamma ∧ ·).
    size_t nxi = lambda_dim(k), neta = lambda_dim(k - 1);
    QMatrix d(lambda_dim(k + 2) + lambda_dim(k + 1), nxi + neta);
    if (k >= 1 && k - 1 <= m_) {
        QMatrix w = wedge_matrix(gamma_, k - 1);  // Λ^{k-1} -> Λ^{k+1}
        for (size_t i = 0; i < w.rows(); ++i)
            for (size_t j = 0; j < w.cols(); ++j) d.at(lambda_dim(k + 2) + i, nxi + j) = w.at(i, j);
    }
    return kernel(d);
}

Subspace CircleBundleModel::coboundaries(int k) const {
    // image of d from degree k-1: (gamma ∧ eta', 0) for eta' ∈ Λ^{k-2}
    size_t nxi = lambda_dim(k), neta = lambda_dim(k - 1);
    std::vector<RatVec> gens;
    if (k >= 2) {
        QMatrix w = wedge_matrix(gamma_, k - 2);  // Λ^{k-2} -> Λ^k
        for (size_t j = 0; j < w.cols(); ++j) {
            RatVec v(nxi + neta, Rational(0));
            bool rationalized = true;
            for (size_t i = 0; i < w.rows(); ++i) {
                const ScalarK& e = w.at(i, j);
                if (e.degree() > 0) rationalized = false;
                v[i] = e.rational_part();
            }
            if (!rationalized)
                throw std::invalid_argument("model requires rational curvature coefficients");
            gens.push_back(std::move(v));
        }
    }
    return Subspace::span(nxi + neta, std::move(gens));
}

Subspace CircleBundleModel::gysin_image(int k) const {
    size_t nxi = lambda_dim(k), neta = lambda_dim(k - 1);
    std::vector<RatVec> projected;
    Subspace closed = cocycles(k);
    for (const auto& row : closed.basis()) {
        RatVec eta(neta);
        for (size_t j = 0; j < neta; ++j) eta[j] = row[nxi + j];
        projected.push_back(std::move(eta));
    }
    return Subspace::span(neta, std::move(projected));
}

Subspace CircleBundleModel::euler_cup_kernel(int k) const {
    return kernel(wedge_matrix(gamma_, k - 1));
}

RatVec CircleBundleModel::fiber_integrate(const RatVec& cocycle, int k) const {
    size_t nxi = lambda_dim(k), neta = lambda_dim(k - 1);
    if (cocycle.size() != nxi + neta)
        throw std::invalid_argument("cocycle coordinate length mismatch");
    return RatVec(cocycle.begin() + nxi, cocycle.end());
}

RatVec CircleBundleModel::pullback(const RatVec& base_class, int k) const {
    size_t nxi = lambda_dim(k), neta = lambda_dim(k - 1);
    if (base_class.size() != nxi) throw std::invalid_argument("base class length mismatch");
    RatVec out(nxi + neta, Rational(0));
    for (size_t i = 0; i < nxi; ++i) out[i] = base_class[i];
    return out;
}

bool CircleBundleModel::pullback_then_integrate_vanishes(int k) const {
    size_t nxi = lambda_dim(k);
    for (size_t i = 0; i < nxi; ++i) {
        RatVec base(nxi, Rational(0));
        base[i] = 1;
        RatVec lifted = pullback(base, k);
        for (const auto& c : fiber_integrate(lifted, k))
            if (c != 0) return false;
    }
    return true;
}

}  // namespace apw
