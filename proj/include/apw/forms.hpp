#pragma once

#include "apw/matrix.hpp"
#include "apw/scalar.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

namespace apw {

/// Multi-index 1 <= i1 < i2 < ... <= m.
using MultiIndex = std::vector<int>;

/// Constant-coefficient differential form on the m-torus.  Antisymmetry is
/// encoded by keeping only strictly increasing multi-indices.
class ConstForm {
public:
    ConstForm() = default;
    ConstForm(int degree, int m) : degree_(degree), m_(m) {
        if (degree < 0 || m < 0 || degree > m)
            throw std::invalid_argument("form degree out of range");
    }

    static ConstForm dx(int i, int m) {
        ConstForm f(1, m);
        f.set({i}, ScalarK(1));
        return f;
    }
    /// ω = Σ_{i<j} N_ij dx^i ∧ dx^j for an antisymmetric matrix N
    /// (equivalently (1/2) Σ_{i,j} N_ij dx^i ∧ dx^j).
    static ConstForm from_antisymmetric(const QMatrix& n) {
        if (!n.is_antisymmetric()) throw std::invalid_argument("matrix is not antisymmetric");
        ConstForm f(2, static_cast<int>(n.rows()));
        for (size_t i = 0; i < n.rows(); ++i)
            for (size_t j = i + 1; j < n.cols(); ++j)
                f.set({static_cast<int>(i) + 1, static_cast<int>(j) + 1}, n.at(i, j));
        return f;
    }
    static ConstForm from_covector(const std::vector<ScalarK>& v) {
        ConstForm f(1, static_cast<int>(v.size()));
        for (size_t i = 0; i < v.size(); ++i) f.set({static_cast<int>(i) + 1}, v[i]);
        return f;
    }

    int degree() const { return degree_; }
    int dim() const { return m_; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::map<MultiIndex, ScalarK>& coeffs() const { return coeffs_; }

    ScalarK coeff(const MultiIndex& idx) const {
        auto it = coeffs_.find(idx);
        return it == coeffs_.end() ? ScalarK(0) : it->second;
    }

    void set(const MultiIndex& idx, const ScalarK& c) {
        if (static_cast<int>(idx.size()) != degree_)
            throw std::invalid_argument("multi-index degree mismatch");
        for (size_t k = 0; k < idx.size(); ++k) {
            if (idx[k] < 1 || idx[k] > m_) throw std::invalid_argument("index out of range");
            if (k > 0 && idx[k] <= idx[k - 1])
                throw std::invalid_argument("multi-index must be strictly increasing");
        }
        if (c.is_zero())
            coeffs_.erase(idx);
        else
            coeffs_[idx] = c;
    }

    friend ConstForm operator+(const ConstForm& a, const ConstForm& b) {
        if (a.degree_ != b.degree_ || a.m_ != b.m_)
            throw std::invalid_argument("form shape mismatch");
        ConstForm out = a;
        for (const auto& [idx, c] : b.coeffs_) out.set(idx, out.coeff(idx) + c);
        return out;
    }
    friend ConstForm operator*(const ScalarK& s, const ConstForm& f) {
        ConstForm out(f.degree_, f.m_);
        for (const auto& [idx, c] : f.coeffs_) out.set(idx, s * c);
        return out;
    }
    friend bool operator==(const ConstForm& a, const ConstForm& b) {
        return a.degree_ == b.degree_ && a.m_ == b.m_ && a.coeffs_ == b.coeffs_;
    }

    std::string str() const {
        if (coeffs_.empty()) return "0";
        std::string out;
        for (const auto& [idx, c] : coeffs_) {
            if (!out.empty()) out += " + ";
            out += "(" + c.str() + ")";
            for (int i : idx) out += " dx" + std::to_string(i);
        }
        return out;
    }

private:
    int degree_ = 0, m_ = 0;
    std::map<MultiIndex, ScalarK> coeffs_;
};

/// Exterior product with sign bookkeeping by merge parity.
/// Throws when deg(a) + deg(b) exceeds the ambient dimension.
inline ConstForm wedge(const ConstForm& a, const ConstForm& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("wedge: ambient dimension mismatch");
    int deg = a.degree() + b.degree();
    if (deg > a.dim()) throw std::invalid_argument("wedge: degree overflow");
    ConstForm out(deg, a.dim());
    for (const auto& [ia, ca] : a.coeffs()) {
        for (const auto& [ib, cb] : b.coeffs()) {
            // merge the index sets, counting inversions; repeated index kills the term
            MultiIndex merged;
            merged.reserve(ia.size() + ib.size());
            size_t p = 0, q = 0;
            int inversions = 0;
            bool dead = false;
            while (p < ia.size() || q < ib.size()) {
                if (q == ib.size() || (p < ia.size() && ia[p] < ib[q])) {
                    merged.push_back(ia[p++]);
                } else if (p == ia.size() || ib[q] < ia[p]) {
                    inversions += static_cast<int>(ia.size() - p);
                    merged.push_back(ib[q++]);
                } else {
                    dead = true;
                    break;
                }
            }
            if (dead) continue;
            ScalarK term = ca * cb;
            if (inversions % 2) term = -term;
            out.set(merged, out.coeff(merged) + term);
        }
    }
    return out;
}

/// Matrix of the linear map η ↦ γ ∧ η from degree-k forms to degree-(k+2)
/// forms, in the lexicographic multi-index bases.
QMatrix wedge_matrix(const ConstForm& gamma, int k);

/// All strictly increasing multi-indices of the given size, lexicographic.
std::vector<MultiIndex> multi_indices(int m, int k);

}  // namespace apw
