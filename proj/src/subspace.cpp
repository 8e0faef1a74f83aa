#include "apw/subspace.hpp"

#include "apw/linalg.hpp"

#include <stdexcept>

namespace apw {

Subspace Subspace::span(size_t ambient, std::vector<RatVec> vectors) {
    for (const auto& v : vectors)
        if (v.size() != ambient) throw std::invalid_argument("span: vector length mismatch");
    rref_inplace(vectors);
    Subspace s(ambient);
    s.basis_ = std::move(vectors);
    return s;
}

bool Subspace::contains(const RatVec& v) const {
    if (v.size() != ambient_) throw std::invalid_argument("contains: length mismatch");
    RatVec w = v;
    // reduce against the echelon basis
    for (const auto& row : basis_) {
        size_t pivot = 0;
        while (pivot < ambient_ && row[pivot] == 0) ++pivot;
        if (pivot == ambient_) continue;
        if (w[pivot] == 0) continue;
        Rational f = w[pivot];  // row has pivot 1 in RREF
        for (size_t j = 0; j < ambient_; ++j) w[j] -= f * row[j];
    }
    for (const auto& x : w)
        if (x != 0) return false;
    return true;
}

Subspace Subspace::sum(const Subspace& other) const {
    if (ambient_ != other.ambient_) throw std::invalid_argument("sum: ambient mismatch");
    std::vector<RatVec> rows = basis_;
    rows.insert(rows.end(), other.basis_.begin(), other.basis_.end());
    return span(ambient_, std::move(rows));
}

Subspace Subspace::intersect(const Subspace& other) const {
    if (ambient_ != other.ambient_) throw std::invalid_argument("intersect: ambient mismatch");
    if (basis_.empty() || other.basis_.empty()) return Subspace::zero(ambient_);

    // x in U cap V  <=>  x = a^T U = b^T V; solve [U^T | -V^T] (a,b)^T = 0 and
    // push the a-part back through U.
    size_t du = basis_.size(), dv = other.basis_.size();
    QMatrix stacked(ambient_, du + dv);
    for (size_t j = 0; j < du; ++j)
        for (size_t i = 0; i < ambient_; ++i) stacked.at(i, j) = ScalarK(basis_[j][i]);
    for (size_t j = 0; j < dv; ++j)
        for (size_t i = 0; i < ambient_; ++i)
            stacked.at(i, du + j) = ScalarK(-other.basis_[j][i]);
    Subspace null = kernel(stacked);

    std::vector<RatVec> vectors;
    for (const auto& coeffs : null.basis()) {
        RatVec x(ambient_, Rational(0));
        for (size_t j = 0; j < du; ++j)
            for (size_t i = 0; i < ambient_; ++i) x[i] += coeffs[j] * basis_[j][i];
        vectors.push_back(std::move(x));
    }
    return span(ambient_, std::move(vectors));
}

}  // namespace apw
