#pragma once

#include "apw/rational.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace apw {

using RatVec = std::vector<Rational>;

/// Rational subspace of R^n in reduced row echelon form, the canonical
/// representative: two subspaces are equal iff their bases compare equal.
class Subspace {
public:
    Subspace() = default;
    explicit Subspace(size_t ambient) : ambient_(ambient) {}

    static Subspace zero(size_t ambient) { return Subspace(ambient); }
    static Subspace full(size_t ambient) {
        std::vector<RatVec> rows(ambient, RatVec(ambient, Rational(0)));
        for (size_t i = 0; i < ambient; ++i) rows[i][i] = 1;
        Subspace s(ambient);
        s.basis_ = rows;
        return s;
    }
    /// Span of the given vectors, reduced to RREF.
    static Subspace span(size_t ambient, std::vector<RatVec> vectors);

    size_t ambient() const { return ambient_; }
    size_t dim() const { return basis_.size(); }
    const std::vector<RatVec>& basis() const { return basis_; }

    bool contains(const RatVec& v) const;
    bool contains(const Subspace& other) const {
        for (const auto& row : other.basis_)
            if (!contains(row)) return false;
        return true;
    }

    Subspace intersect(const Subspace& other) const;
    Subspace sum(const Subspace& other) const;

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }
    friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

    std::string str() const {
        std::string out = "span{";
        for (size_t i = 0; i < basis_.size(); ++i) {
            out += i ? ", (" : "(";
            for (size_t j = 0; j < ambient_; ++j) {
                if (j) out += ",";
                out += to_string(basis_[i][j]);
            }
            out += ")";
        }
        return out + "}";
    }

private:
    size_t ambient_ = 0;
    std::vector<RatVec> basis_;  // RREF rows, pivot columns strictly increasing
};

}  // namespace apw
