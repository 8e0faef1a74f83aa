#pragma once

#include "apw/scalar.hpp"

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace apw {

/// Dense matrix over the exact scalar space.  Most call sites keep entries
/// pure rational; the handful of symbolic sites stay within the formal-tag
/// semantics of ScalarK.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    QMatrix(std::initializer_list<std::initializer_list<ScalarK>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        for (const auto& row : init) {
            if (row.size() != cols_) throw std::invalid_argument("ragged matrix literal");
            for (const auto& e : row) a_.push_back(e);
        }
    }

    static QMatrix identity(size_t n) {
        QMatrix m(n, n);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = ScalarK(1);
        return m;
    }
    static QMatrix zero(size_t r, size_t c) { return QMatrix(r, c); }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    ScalarK& at(size_t i, size_t j) { return a_.at(i * cols_ + j); }
    const ScalarK& at(size_t i, size_t j) const { return a_.at(i * cols_ + j); }

    bool is_rational() const {
        for (const auto& e : a_)
            if (e.degree() > 0) return false;
        return true;
    }
    bool is_zero() const {
        for (const auto& e : a_)
            if (!e.is_zero()) return false;
        return true;
    }
    bool is_square() const { return rows_ == cols_; }
    bool is_antisymmetric() const {
        if (!is_square()) return false;
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j <= i; ++j)
                if (at(i, j) != -at(j, i)) return false;
        return true;
    }

    QMatrix transpose() const {
        QMatrix t(cols_, rows_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    friend QMatrix operator+(const QMatrix& a, const QMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("matrix shape mismatch");
        QMatrix out(a.rows_, a.cols_);
        for (size_t i = 0; i < a.a_.size(); ++i) out.a_[i] = a.a_[i] + b.a_[i];
        return out;
    }
    friend QMatrix operator*(const ScalarK& s, const QMatrix& m) {
        QMatrix out(m.rows_, m.cols_);
        for (size_t i = 0; i < m.a_.size(); ++i) out.a_[i] = s * m.a_[i];
        return out;
    }
    friend QMatrix operator*(const QMatrix& a, const QMatrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
        QMatrix out(a.rows_, b.cols_);
        for (size_t i = 0; i < a.rows_; ++i)
            for (size_t k = 0; k < a.cols_; ++k) {
                if (a.at(i, k).is_zero()) continue;
                for (size_t j = 0; j < b.cols_; ++j)
                    out.at(i, j) += a.at(i, k) * b.at(k, j);
            }
        return out;
    }

    std::vector<ScalarK> apply(const std::vector<ScalarK>& v) const {
        if (v.size() != cols_) throw std::invalid_argument("vector length mismatch");
        std::vector<ScalarK> out(rows_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) out[i] += at(i, j) * v[j];
        return out;
    }

    friend bool operator==(const QMatrix& a, const QMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<ScalarK> a_;
};

/// Integer matrix; carries Smith normal form inputs, GL(m,Z) data and H1 maps.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Int(0)) {}
    IntMatrix(std::initializer_list<std::initializer_list<long long>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        for (const auto& row : init) {
            if (row.size() != cols_) throw std::invalid_argument("ragged matrix literal");
            for (long long e : row) a_.push_back(Int(e));
        }
    }

    static IntMatrix identity(size_t n) {
        IntMatrix m(n, n);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    Int& at(size_t i, size_t j) { return a_.at(i * cols_ + j); }
    const Int& at(size_t i, size_t j) const { return a_.at(i * cols_ + j); }
    bool is_square() const { return rows_ == cols_; }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
        IntMatrix out(a.rows_, b.cols_);
        for (size_t i = 0; i < a.rows_; ++i)
            for (size_t k = 0; k < a.cols_; ++k) {
                if (a.at(i, k) == 0) continue;
                for (size_t j = 0; j < b.cols_; ++j) out.at(i, j) += a.at(i, k) * b.at(k, j);
            }
        return out;
    }
    friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("matrix shape mismatch");
        IntMatrix out(a.rows_, a.cols_);
        for (size_t i = 0; i < a.a_.size(); ++i) out.a_[i] = a.a_[i] - b.a_[i];
        return out;
    }
    friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

    IntMatrix transpose() const {
        IntMatrix t(cols_, rows_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    IntMatrix pow(unsigned n) const {
        if (!is_square()) throw std::invalid_argument("pow needs a square matrix");
        IntMatrix acc = identity(rows_);
        for (unsigned i = 0; i < n; ++i) acc = acc * *this;
        return acc;
    }

    QMatrix to_q() const {
        QMatrix q(rows_, cols_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) q.at(i, j) = ScalarK(Rational(at(i, j)));
        return q;
    }

    /// Exact determinant by fraction-free elimination.
    Int det() const {
        if (!is_square()) throw std::invalid_argument("det needs a square matrix");
        size_t n = rows_;
        std::vector<Int> w = a_;
        auto e = [&](size_t i, size_t j) -> Int& { return w[i * n + j]; };
        Int prev = 1;
        int sign = 1;
        for (size_t k = 0; k + 1 < n; ++k) {
            if (e(k, k) == 0) {
                size_t p = k + 1;
                while (p < n && e(p, k) == 0) ++p;
                if (p == n) return 0;
                for (size_t j = 0; j < n; ++j) std::swap(e(k, j), e(p, j));
                sign = -sign;
            }
            for (size_t i = k + 1; i < n; ++i)
                for (size_t j = k + 1; j < n; ++j)
                    e(i, j) = (e(i, j) * e(k, k) - e(i, k) * e(k, j)) / prev;
            prev = e(k, k);
        }
        return n == 0 ? Int(1) : Int(sign) * e(n - 1, n - 1);
    }

private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<Int> a_;
};

}  // namespace apw
