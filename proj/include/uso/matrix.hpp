#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "uso/dimset.hpp"
#include "uso/rational.hpp"

namespace uso {

class RationalVector {
public:
    RationalVector() = default;
    explicit RationalVector(int n) : v_(n) {}
    RationalVector(std::initializer_list<Rational> init) : v_(init) {}
    explicit RationalVector(std::vector<Rational> v) : v_(std::move(v)) {}

    int size() const { return int(v_.size()); }
    Rational& operator[](int i) { return v_[i]; }
    const Rational& operator[](int i) const { return v_[i]; }

    friend bool operator==(const RationalVector& a, const RationalVector& b) { return a.v_ == b.v_; }
    friend bool operator!=(const RationalVector& a, const RationalVector& b) { return !(a == b); }

private:
    std::vector<Rational> v_;
};

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
public:
    RationalMatrix() : rows_(0), cols_(0) {}
    RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols) {}

    static RationalMatrix identity(int n) {
        RationalMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    /// Builds from integer rows; handy for literal test matrices.
    static RationalMatrix from_rows(const std::vector<std::vector<long long>>& rows) {
        RationalMatrix m(int(rows.size()), rows.empty() ? 0 : int(rows[0].size()));
        for (int r = 0; r < m.rows(); ++r) {
            if (int(rows[r].size()) != m.cols()) throw Error("ragged matrix rows");
            for (int c = 0; c < m.cols(); ++c) m.at(r, c) = rows[r][c];
        }
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Rational& at(int r, int c) { return a_[std::size_t(r) * cols_ + c]; }
    const Rational& at(int r, int c) const { return a_[std::size_t(r) * cols_ + c]; }

    RationalVector column(int c) const {
        RationalVector v(rows_);
        for (int r = 0; r < rows_; ++r) v[r] = at(r, c);
        return v;
    }

    bool is_symmetric() const {
        if (!is_square()) return false;
        for (int r = 0; r < rows_; ++r)
            for (int c = r + 1; c < cols_; ++c)
                if (at(r, c) != at(c, r)) return false;
        return true;
    }

    friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }
    friend bool operator!=(const RationalMatrix& a, const RationalMatrix& b) { return !(a == b); }

private:
    int rows_;
    int cols_;
    std::vector<Rational> a_;
};

inline RationalVector multiply(const RationalMatrix& m, const RationalVector& x) {
    if (m.cols() != x.size()) throw DimensionMismatch("matrix-vector size mismatch");
    RationalVector out(m.rows());
    for (int r = 0; r < m.rows(); ++r) {
        Rational acc;
        for (int c = 0; c < m.cols(); ++c) acc += m.at(r, c) * x[c];
        out[r] = acc;
    }
    return out;
}

inline Rational dot(const RationalVector& a, const RationalVector& b) {
    if (a.size() != b.size()) throw DimensionMismatch("vector size mismatch");
    Rational acc;
    for (int i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

/// Rows and columns restricted to the index set (dimension i of the set
/// selects 0-based row/column i-1).
inline RationalMatrix principal_submatrix(const RationalMatrix& m, DimSet idx) {
    const std::vector<int> dims = idx.dims();
    RationalMatrix out(int(dims.size()), int(dims.size()));
    for (std::size_t r = 0; r < dims.size(); ++r)
        for (std::size_t c = 0; c < dims.size(); ++c)
            out.at(int(r), int(c)) = m.at(dims[r] - 1, dims[c] - 1);
    return out;
}

namespace detail {

/// Clears denominators row by row; returns the integer matrix (columns of b
/// appended if given) so that row i equals scale[i] times the input row.
struct ScaledRows {
    std::vector<std::vector<BigInt>> a;
    std::vector<BigInt> scale;
};

inline ScaledRows scale_to_integers(const RationalMatrix& m, const RationalVector* b) {
    ScaledRows out;
    out.a.resize(m.rows());
    out.scale.resize(m.rows());
    for (int r = 0; r < m.rows(); ++r) {
        BigInt l = 1;
        for (int c = 0; c < m.cols(); ++c)
            l = boost::multiprecision::lcm(l, m.at(r, c).denominator());
        if (b) l = boost::multiprecision::lcm(l, (*b)[r].denominator());
        out.scale[r] = l;
        out.a[r].reserve(m.cols() + (b ? 1 : 0));
        for (int c = 0; c < m.cols(); ++c)
            out.a[r].push_back(m.at(r, c).numerator() * (l / m.at(r, c).denominator()));
        if (b) out.a[r].push_back((*b)[r].numerator() * (l / (*b)[r].denominator()));
    }
    return out;
}

/// Bareiss fraction-free forward elimination in place; pivots on the first
/// nonzero entry per column. Returns the permutation sign, or 0 if the
/// leading square block is singular (elimination stops there).
inline int bareiss_eliminate(std::vector<std::vector<BigInt>>& a, int n) {
    int sign = 1;
    BigInt prev = 1;
    const int width = n == 0 ? 0 : int(a[0].size());
    for (int c = 0; c < n; ++c) {
        int pivot = -1;
        for (int r = c; r < n; ++r)
            if (a[r][c] != 0) { pivot = r; break; }
        if (pivot < 0) return 0;
        if (pivot != c) {
            std::swap(a[pivot], a[c]);
            sign = -sign;
        }
        for (int r = c + 1; r < n; ++r) {
            for (int j = c + 1; j < width; ++j)
                a[r][j] = (a[c][c] * a[r][j] - a[r][c] * a[c][j]) / prev;  // exact division
            a[r][c] = 0;
        }
        prev = a[c][c];
    }
    return sign;
}

}  // namespace detail

/// Exact determinant via fraction-free (Bareiss) elimination on the
/// row-scaled integer matrix.
inline Rational determinant(const RationalMatrix& m) {
    if (!m.is_square()) throw DimensionMismatch("determinant of a non-square matrix");
    const int n = m.rows();
    if (n == 0) return 1;
    detail::ScaledRows s = detail::scale_to_integers(m, nullptr);
    const int sign = detail::bareiss_eliminate(s.a, n);
    if (sign == 0) return 0;
    BigInt scale_product = 1;
    for (const BigInt& f : s.scale) scale_product *= f;
    return Rational(sign * s.a[n - 1][n - 1], scale_product);
}

/// Exact solution of a·x = b. Bareiss elimination on the augmented system,
/// then rational back-substitution. Throws SingularMatrix on rank
/// deficiency.
inline RationalVector solve_exact(const RationalMatrix& a, const RationalVector& b) {
    if (!a.is_square()) throw DimensionMismatch("solve requires a square matrix");
    if (a.rows() != b.size()) throw DimensionMismatch("right-hand side has wrong length");
    const int n = a.rows();
    if (n == 0) return RationalVector(0);
    detail::ScaledRows s = detail::scale_to_integers(a, &b);
    if (detail::bareiss_eliminate(s.a, n) == 0) throw SingularMatrix("matrix is rank deficient");
    RationalVector x(n);
    for (int r = n - 1; r >= 0; --r) {
        Rational acc(s.a[r][n]);
        for (int c = r + 1; c < n; ++c) acc -= Rational(s.a[r][c]) * x[c];
        x[r] = acc / Rational(s.a[r][r]);
    }
    return x;
}

}  // namespace uso
