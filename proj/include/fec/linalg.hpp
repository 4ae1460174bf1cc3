#pragma once

#include "fec/rational.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fec {

/// Dense row-major rational matrix.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    Vec row(std::size_t i) const { return Vec(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_); }
    Vec col(std::size_t j) const
    {
        Vec c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }
    void set_row(std::size_t i, const Vec& r)
    {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = r[j];
    }

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static Matrix from_rows(const std::vector<Vec>& rows, std::size_t cols)
    {
        Matrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
        return m;
    }

    static Matrix from_cols(const std::vector<Vec>& cols, std::size_t rows)
    {
        Matrix m(rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
        return m;
    }

    bool is_zero() const
    {
        for (const auto& x : a_)
            if (sgn(x) != 0) return false;
        return true;
    }

    std::size_t nonzeros() const
    {
        std::size_t n = 0;
        for (const auto& x : a_)
            if (sgn(x) != 0) ++n;
        return n;
    }

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> a_;
};

inline Matrix transpose(const Matrix& a)
{
    Matrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

inline Matrix multiply(const Matrix& a, const Matrix& b)
{
    if (a.cols() != b.rows()) throw std::invalid_argument("multiply: dimension mismatch");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t l = 0; l < a.cols(); ++l) {
            const Rational& x = a(i, l);
            if (sgn(x) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (sgn(b(l, j)) != 0) c(i, j) += x * b(l, j);
        }
    return c;
}

inline Vec multiply(const Matrix& a, const Vec& x)
{
    if (a.cols() != x.size()) throw std::invalid_argument("multiply: dimension mismatch");
    Vec y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (sgn(x[j]) != 0 && sgn(a(i, j)) != 0) y[i] += a(i, j) * x[j];
    return y;
}

inline Matrix hstack(const Matrix& a, const Matrix& b)
{
    if (a.rows() != b.rows()) throw std::invalid_argument("hstack: row mismatch");
    Matrix c(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
    }
    return c;
}

inline Matrix vstack(const Matrix& a, const Matrix& b)
{
    if (a.cols() != b.cols()) throw std::invalid_argument("vstack: column mismatch");
    Matrix c(a.rows() + b.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(a.rows() + i, j) = b(i, j);
    return c;
}

/// Result of Gaussian elimination. Pivot rows are normalized to a leading 1.
struct Echelon {
    std::vector<Vec> rows;
    std::vector<std::size_t> pivot_cols;
    std::size_t rank = 0;
    Rational pivot_product = 1; // signed product of pivots (determinant when square and full rank)
};

/// Gaussian elimination with sparse-aware pivoting. Pivots are only taken in
/// columns below `pivot_limit`; with `reduced` the form is fully reduced.
inline Echelon eliminate(const Matrix& m, std::size_t pivot_limit, bool reduced)
{
    Echelon e;
    const std::size_t nr = m.rows(), nc = m.cols();
    e.rows.resize(nr);
    for (std::size_t i = 0; i < nr; ++i) e.rows[i] = m.row(i);
    auto& rows = e.rows;
    std::size_t r = 0;
    std::vector<std::size_t> nz;
    for (std::size_t c = 0; c < std::min(pivot_limit, nc) && r < nr; ++c) {
        std::size_t best = nr, best_nnz = 0;
        for (std::size_t i = r; i < nr; ++i) {
            if (sgn(rows[i][c]) == 0) continue;
            std::size_t cnt = 0;
            for (std::size_t j = c; j < nc; ++j)
                if (sgn(rows[i][j]) != 0) ++cnt;
            if (best == nr || cnt < best_nnz) {
                best = i;
                best_nnz = cnt;
                if (cnt == 1) break;
            }
        }
        if (best == nr) continue;
        if (best != r) {
            std::swap(rows[best], rows[r]);
            e.pivot_product = -e.pivot_product;
        }
        Vec& p = rows[r];
        Rational piv = p[c];
        e.pivot_product *= piv;
        nz.clear();
        for (std::size_t j = c; j < nc; ++j)
            if (sgn(p[j]) != 0) {
                if (j != c) p[j] /= piv;
                nz.push_back(j);
            }
        p[c] = 1;
        const std::size_t start = reduced ? 0 : r + 1;
        for (std::size_t i = start; i < nr; ++i) {
            if (i == r) continue;
            Vec& q = rows[i];
            if (sgn(q[c]) == 0) continue;
            Rational f = q[c];
            for (std::size_t j : nz) q[j] -= f * p[j];
        }
        e.pivot_cols.push_back(c);
        ++r;
    }
    e.rank = r;
    return e;
}

inline std::size_t rank(const Matrix& m)
{
    if (m.rows() == 0 || m.cols() == 0) return 0;
    // Eliminating along the shorter dimension is cheaper.
    if (m.rows() > m.cols()) return eliminate(transpose(m), m.rows(), false).rank;
    return eliminate(m, m.cols(), false).rank;
}

inline Rational determinant(const Matrix& m)
{
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
    if (m.rows() == 0) return 1;
    Echelon e = eliminate(m, m.cols(), false);
    if (e.rank < m.rows()) return 0;
    return e.pivot_product;
}

/// Solves A X = B for square nonsingular A; nullopt if A is singular.
inline std::optional<Matrix> solve(const Matrix& a, const Matrix& b)
{
    if (a.rows() != a.cols() || a.rows() != b.rows()) throw std::invalid_argument("solve: dimension mismatch");
    const std::size_t n = a.rows();
    Echelon e = eliminate(hstack(a, b), n, true);
    if (e.rank < n) return std::nullopt;
    Matrix x(n, b.cols());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) x(e.pivot_cols[i], j) = e.rows[i][n + j];
    return x;
}

inline std::optional<Matrix> inverse(const Matrix& a) { return solve(a, Matrix::identity(a.rows())); }

/// Basis of the right nullspace of A, as the columns of the returned matrix.
inline Matrix nullspace(const Matrix& a)
{
    const std::size_t nc = a.cols();
    if (a.rows() == 0) return Matrix::identity(nc);
    Echelon e = eliminate(a, nc, true);
    std::vector<char> is_pivot(nc, 0);
    for (auto c : e.pivot_cols) is_pivot[c] = 1;
    std::vector<std::size_t> free;
    for (std::size_t c = 0; c < nc; ++c)
        if (!is_pivot[c]) free.push_back(c);
    Matrix n(nc, free.size());
    for (std::size_t t = 0; t < free.size(); ++t) {
        n(free[t], t) = 1;
        for (std::size_t i = 0; i < e.rank; ++i) n(e.pivot_cols[i], t) = -e.rows[i][free[t]];
    }
    return n;
}

/// True if every column of B lies in the column span of A.
inline bool column_span_contains(const Matrix& a, const Matrix& b)
{
    return rank(hstack(a, b)) == rank(a);
}

} // namespace fec
