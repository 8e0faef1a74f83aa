#include "apw/linalg.hpp"

#include <map>
#include <set>
#include <stdexcept>

namespace apw {

std::vector<size_t> rref_inplace(std::vector<RatVec>& rows) {
    std::vector<size_t> pivots;
    if (rows.empty()) return pivots;
    size_t ncols = rows[0].size();
    size_t r = 0;
    for (size_t c = 0; c < ncols && r < rows.size(); ++c) {
        size_t p = r;
        while (p < rows.size() && rows[p][c] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[r], rows[p]);
        Rational inv = Rational(1) / rows[r][c];
        for (size_t j = c; j < ncols; ++j) rows[r][j] *= inv;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            Rational f = rows[i][c];
            for (size_t j = c; j < ncols; ++j) rows[i][j] -= f * rows[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    rows.resize(pivots.size());
    return pivots;
}

namespace {

std::vector<RatVec> to_rational_rows(const QMatrix& m) {
    std::vector<RatVec> rows(m.rows(), RatVec(m.cols()));
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) {
            const ScalarK& e = m.at(i, j);
            if (e.degree() > 0)
                throw std::invalid_argument("operation requires a pure-rational matrix");
            rows[i][j] = e.rational_part();
        }
    return rows;
}

// Gaussian elimination over the fraction field of the formal tag algebra.
// Entries are kept as num/den pairs of ScalarK polynomials; no reduction is
// attempted, which is fine at the sizes this is used for.
struct Frac {
    ScalarK num = ScalarK(0);
    ScalarK den = ScalarK(1);
    bool zero() const { return num.is_zero(); }
};

unsigned symbolic_rank(const QMatrix& m) {
    size_t nr = m.rows(), nc = m.cols();
    std::vector<std::vector<Frac>> w(nr, std::vector<Frac>(nc));
    for (size_t i = 0; i < nr; ++i)
        for (size_t j = 0; j < nc; ++j) w[i][j].num = m.at(i, j);
    unsigned rank = 0;
    size_t row = 0;
    for (size_t c = 0; c < nc && row < nr; ++c) {
        size_t p = row;
        while (p < nr && w[p][c].zero()) ++p;
        if (p == nr) continue;
        std::swap(w[row], w[p]);
        for (size_t i = row + 1; i < nr; ++i) {
            if (w[i][c].zero()) continue;
            // row_i -= (a_ic / a_rc) * row_r, in fraction form
            ScalarK fn = w[i][c].num, fd = w[i][c].den;
            ScalarK pn = w[row][c].num, pd = w[row][c].den;
            for (size_t j = c; j < nc; ++j) {
                // w[i][j] = w[i][j] - (fn*pd)/(fd*pn) * w[row][j]
                ScalarK n1 = w[i][j].num * fd * pn * w[row][j].den -
                             w[row][j].num * fn * pd * w[i][j].den;
                ScalarK d1 = w[i][j].den * fd * pn * w[row][j].den;
                w[i][j].num = n1;
                w[i][j].den = d1;
            }
        }
        ++rank;
        ++row;
    }
    return rank;
}

}  // namespace

unsigned rank(const QMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    if (!m.is_rational()) return symbolic_rank(m);
    auto rows = to_rational_rows(m);
    return static_cast<unsigned>(rref_inplace(rows).size());
}

Subspace kernel(const QMatrix& m) {
    auto rows = to_rational_rows(m);
    size_t ncols = m.cols();
    auto pivots = rref_inplace(rows);
    std::set<size_t> pivot_set(pivots.begin(), pivots.end());
    std::vector<RatVec> basis;
    for (size_t free_col = 0; free_col < ncols; ++free_col) {
        if (pivot_set.count(free_col)) continue;
        RatVec v(ncols, Rational(0));
        v[free_col] = 1;
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -rows[r][free_col];
        basis.push_back(std::move(v));
    }
    return Subspace::span(ncols, std::move(basis));
}

Subspace kernel(const IntMatrix& m) { return kernel(m.to_q()); }

Subspace intersect(const Subspace& u, const Subspace& v) {
    if (u.ambient() != v.ambient())
        throw std::invalid_argument("intersect: ambient dimension mismatch");
    return u.intersect(v);
}

std::optional<std::vector<ScalarK>> solve(const QMatrix& a, const std::vector<ScalarK>& b) {
    if (!a.is_square() || a.rows() != b.size())
        throw std::invalid_argument("solve: shape mismatch");
    size_t n = a.rows();
    auto rows = to_rational_rows(a);

    // Collect the monomials present on the right-hand side; solve each
    // coefficient vector against the same decomposition of A.
    std::set<TagMonomial> monomials;
    for (const auto& s : b)
        for (const auto& [m, c] : s.coeffs()) monomials.insert(m);
    if (monomials.empty()) monomials.insert({});

    // LU-style elimination on the augmented system, one augmentation per monomial.
    size_t k = monomials.size();
    std::vector<RatVec> aug(n, RatVec(n + k, Rational(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) aug[i][j] = rows[i][j];
    {
        size_t col = n;
        for (const auto& mono : monomials) {
            for (size_t i = 0; i < n; ++i) aug[i][col] = b[i].coeff(mono);
            ++col;
        }
    }
    auto pivots = rref_inplace(aug);
    if (pivots.size() != n || (n > 0 && pivots.back() >= n)) return std::nullopt;

    std::vector<ScalarK> x(n);
    size_t col = n;
    for (const auto& mono : monomials) {
        for (size_t i = 0; i < n; ++i) {
            Rational c = aug[i][col];
            if (c == 0) continue;
            ScalarK piece = mono.empty() ? ScalarK(c) : ScalarK(0);
            if (!mono.empty()) {
                piece = ScalarK(c);
                for (const auto& sym : mono) piece = piece * ScalarK::tag(sym);
            }
            x[i] += piece;
        }
        ++col;
    }
    return x;
}

std::optional<QMatrix> inverse(const QMatrix& a) {
    if (!a.is_square()) throw std::invalid_argument("inverse: square matrix required");
    size_t n = a.rows();
    auto rows = to_rational_rows(a);
    std::vector<RatVec> aug(n, RatVec(2 * n, Rational(0)));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) aug[i][j] = rows[i][j];
        aug[i][n + i] = 1;
    }
    auto pivots = rref_inplace(aug);
    if (pivots.size() != n || (n > 0 && pivots.back() >= n)) return std::nullopt;
    QMatrix inv(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv.at(i, j) = ScalarK(aug[i][n + j]);
    return inv;
}

Rational det(const QMatrix& a) {
    if (!a.is_square()) throw std::invalid_argument("det: square matrix required");
    auto rows = to_rational_rows(a);
    size_t n = a.rows();
    Rational out(1);
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && rows[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(rows[p], rows[c]);
            out = -out;
        }
        out *= rows[c][c];
        Rational inv = Rational(1) / rows[c][c];
        for (size_t i = c + 1; i < n; ++i) {
            if (rows[i][c] == 0) continue;
            Rational f = rows[i][c] * inv;
            for (size_t j = c; j < n; ++j) rows[i][j] -= f * rows[c][j];
        }
    }
    return out;
}

namespace {

// Row/column reduction to diagonal form with unimodular bookkeeping.
void snf_reduce(IntMatrix& a, IntMatrix& u, IntMatrix& v) {
    size_t nr = a.rows(), nc = a.cols();
    size_t t = 0;
    while (t < nr && t < nc) {
        // find a nonzero pivot at or after (t,t)
        size_t pi = t, pj = t;
        bool found = false;
        for (size_t i = t; i < nr && !found; ++i)
            for (size_t j = t; j < nc && !found; ++j)
                if (a.at(i, j) != 0) {
                    pi = i;
                    pj = j;
                    found = true;
                }
        if (!found) break;
        if (pi != t)
            for (size_t j = 0; j < nc; ++j) std::swap(a.at(t, j), a.at(pi, j));
        if (pi != t)
            for (size_t j = 0; j < nr; ++j) std::swap(u.at(t, j), u.at(pi, j));
        if (pj != t)
            for (size_t i = 0; i < nr; ++i) std::swap(a.at(i, t), a.at(i, pj));
        if (pj != t)
            for (size_t i = 0; i < nc; ++i) std::swap(v.at(i, t), v.at(i, pj));

        bool clean = false;
        while (!clean) {
            clean = true;
            for (size_t i = t + 1; i < nr; ++i) {
                if (a.at(i, t) == 0) continue;
                Int q = a.at(i, t) / a.at(t, t);
                for (size_t j = 0; j < nc; ++j) a.at(i, j) -= q * a.at(t, j);
                for (size_t j = 0; j < nr; ++j) u.at(i, j) -= q * u.at(t, j);
                if (a.at(i, t) != 0) {
                    // remainder is smaller, promote it to the pivot slot
                    for (size_t j = 0; j < nc; ++j) std::swap(a.at(t, j), a.at(i, j));
                    for (size_t j = 0; j < nr; ++j) std::swap(u.at(t, j), u.at(i, j));
                    clean = false;
                }
            }
            for (size_t j = t + 1; j < nc; ++j) {
                if (a.at(t, j) == 0) continue;
                Int q = a.at(t, j) / a.at(t, t);
                for (size_t i = 0; i < nr; ++i) a.at(i, j) -= q * a.at(i, t);
                for (size_t i = 0; i < nc; ++i) v.at(i, j) -= q * v.at(i, t);
                if (a.at(t, j) != 0) {
                    for (size_t i = 0; i < nr; ++i) std::swap(a.at(i, t), a.at(i, j));
                    for (size_t i = 0; i < nc; ++i) std::swap(v.at(i, t), v.at(i, j));
                    clean = false;
                }
            }
        }
        ++t;
    }
}

}  // namespace

SmithNormalForm smith_normal_form(const IntMatrix& a) {
    SmithNormalForm out;
    out.d = a;
    out.u = IntMatrix::identity(a.rows());
    out.v = IntMatrix::identity(a.cols());
    snf_reduce(out.d, out.u, out.v);

    size_t n = std::min(a.rows(), a.cols());
    // enforce the divisibility chain d1 | d2 | ...
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i + 1 < n; ++i) {
            Int &di = out.d.at(i, i), &dj = out.d.at(i + 1, i + 1);
            if (dj == 0 || di == 0) {
                if (di == 0 && dj != 0) {
                    // push zeros to the end
                    for (size_t c = 0; c < out.d.cols(); ++c)
                        std::swap(out.d.at(i, c), out.d.at(i + 1, c));
                    for (size_t c = 0; c < out.u.cols(); ++c)
                        std::swap(out.u.at(i, c), out.u.at(i + 1, c));
                    for (size_t r = 0; r < out.d.rows(); ++r)
                        std::swap(out.d.at(r, i), out.d.at(r, i + 1));
                    for (size_t r = 0; r < out.v.rows(); ++r)
                        std::swap(out.v.at(r, i), out.v.at(r, i + 1));
                    changed = true;
                }
                continue;
            }
            if (dj % di != 0) {
                // standard 2x2 trick: add column j to column i, then re-reduce
                for (size_t r = 0; r < out.d.rows(); ++r) out.d.at(r, i) += out.d.at(r, i + 1);
                for (size_t r = 0; r < out.v.rows(); ++r) out.v.at(r, i) += out.v.at(r, i + 1);
                snf_reduce(out.d, out.u, out.v);
                changed = true;
            }
        }
    }
    // normalize signs
    for (size_t i = 0; i < n; ++i) {
        if (out.d.at(i, i) < 0) {
            for (size_t c = 0; c < out.d.cols(); ++c) out.d.at(i, c) = -out.d.at(i, c);
            for (size_t c = 0; c < out.u.cols(); ++c) out.u.at(i, c) = -out.u.at(i, c);
        }
    }
    return out;
}

bool rationally_independent(const std::vector<ScalarK>& xs) {
    if (xs.empty()) return true;
    std::set<TagMonomial> monos;
    for (const auto& x : xs) {
        if (x.degree() > 1)
            throw std::domain_error(
                "rationally_independent: composite tags are outside the declared fragment");
        for (const auto& [m, c] : x.coeffs()) monos.insert(m);
    }
    monos.insert({});
    QMatrix coeff(xs.size(), monos.size());
    size_t j = 0;
    for (const auto& m : monos) {
        for (size_t i = 0; i < xs.size(); ++i) coeff.at(i, j) = ScalarK(xs[i].coeff(m));
        ++j;
    }
    return rank(coeff) == xs.size();
}

}  // namespace apw
