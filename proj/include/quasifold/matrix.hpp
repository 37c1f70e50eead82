#pragma once

// Exact dense linear algebra over a ScalarDomain.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quasifold/error.hpp"
#include "quasifold/scalar.hpp"

namespace quasifold {

using Vec = std::vector<Scalar>;

/// Row-major matrix of scalars sharing one domain. Rows and columns may carry
/// 1-based ray labels so that exponent matrices report ray indices.
class Mat {
public:
    Mat() : dom_(ScalarDomain::rational()) {}

    Mat(DomainPtr dom, std::size_t rows, std::size_t cols)
        : dom_(std::move(dom)), rows_(rows), cols_(cols), e_(rows * cols, Scalar::zero(dom_)) {}

    static Mat identity(const DomainPtr& dom, std::size_t n) {
        Mat m(dom, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(dom);
        return m;
    }

    /// Columns must share a length; an empty list needs `rows` to fix the shape.
    static Mat from_columns(const DomainPtr& dom, const std::vector<Vec>& columns, std::size_t rows = 0) {
        if (!columns.empty()) rows = columns.front().size();
        Mat m(dom, rows, columns.size());
        for (std::size_t j = 0; j < columns.size(); ++j) {
            if (columns[j].size() != rows) throw dimension_mismatch("columns of unequal length");
            for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
        }
        return m;
    }

    static Mat from_rows(const DomainPtr& dom, const std::vector<Vec>& rows) {
        const std::size_t cols = rows.empty() ? 0 : rows.front().size();
        Mat m(dom, rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw dimension_mismatch("rows of unequal length");
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    const DomainPtr& domain() const noexcept { return dom_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Scalar& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    Vec column(std::size_t j) const {
        Vec v;
        v.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
        return v;
    }

    Vec row(std::size_t i) const { return Vec(e_.begin() + i * cols_, e_.begin() + (i + 1) * cols_); }

    const std::vector<int>& row_labels() const noexcept { return row_labels_; }
    const std::vector<int>& col_labels() const noexcept { return col_labels_; }

    Mat& set_labels(std::vector<int> rows, std::vector<int> cols) {
        if ((!rows.empty() && rows.size() != rows_) || (!cols.empty() && cols.size() != cols_))
            throw dimension_mismatch("label count does not match matrix shape");
        auto distinct = [](std::vector<int> v) {
            std::sort(v.begin(), v.end());
            return std::adjacent_find(v.begin(), v.end()) == v.end();
        };
        if (!distinct(rows) || !distinct(cols)) throw input_error("matrix labels must be distinct");
        row_labels_ = std::move(rows);
        col_labels_ = std::move(cols);
        return *this;
    }

    /// Position of a labeled row or column.
    std::size_t row_of(int label) const { return position(row_labels_, label); }
    std::size_t col_of(int label) const { return position(col_labels_, label); }

    Mat transpose() const {
        Mat t(dom_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        t.row_labels_ = col_labels_;
        t.col_labels_ = row_labels_;
        return t;
    }

    bool is_identity() const {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) {
                const Scalar& v = (*this)(i, j);
                if (i == j ? !v.is_one() : !v.is_zero()) return false;
            }
        return true;
    }

    /// Entry equality; labels are not compared.
    friend bool operator==(const Mat& a, const Mat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }

private:
    static std::size_t position(const std::vector<int>& labels, int label) {
        auto it = std::find(labels.begin(), labels.end(), label);
        if (it == labels.end()) throw input_error("label " + std::to_string(label) + " not present");
        return static_cast<std::size_t>(it - labels.begin());
    }

    DomainPtr dom_;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Scalar> e_;
    std::vector<int> row_labels_, col_labels_;
};

inline Mat matmul(const Mat& a, const Mat& b) {
    if (a.cols() != b.rows())
        throw dimension_mismatch("matmul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " times " +
                                 std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    Mat c(a.domain(), a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Scalar& aik = a(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (!b(k, j).is_zero()) c(i, j) += aik * b(k, j);
        }
    c.set_labels(a.row_labels(), b.col_labels());
    return c;
}

inline Vec matvec(const Mat& a, const Vec& x) {
    if (a.cols() != x.size()) throw dimension_mismatch("matvec: size mismatch");
    Vec y(a.rows(), Scalar::zero(a.domain()));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!a(i, j).is_zero() && !x[j].is_zero()) y[i] += a(i, j) * x[j];
    return y;
}

inline bool is_zero_vec(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

namespace detail {

/// Fraction-free (Bareiss) forward elimination of the augmented system [A | B]
/// followed by back substitution. Pivot: first nonzero entry at or below the
/// diagonal, lowest row index wins.
inline Mat bareiss_solve(const Mat& a, const Mat& b) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw dimension_mismatch("solve: matrix is not square");
    if (b.rows() != n) throw dimension_mismatch("solve: right-hand side has wrong length");
    const std::size_t m = b.cols();
    const std::size_t w = n + m;
    std::vector<std::vector<Scalar>> t(n, std::vector<Scalar>(w));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) t[i][j] = a(i, j);
        for (std::size_t j = 0; j < m; ++j) t[i][n + j] = b(i, j);
    }
    Scalar prev = Scalar::one(a.domain());
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && t[p][k].is_zero()) ++p;
        if (p == n) throw singular_matrix("matrix is singular (no pivot in column " + std::to_string(k + 1) + ")");
        if (p != k) std::swap(t[p], t[k]);
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < w; ++j) t[i][j] = (t[k][k] * t[i][j] - t[i][k] * t[k][j]) / prev;
            t[i][k] = Scalar::zero(a.domain());
        }
        prev = t[k][k];
    }
    Mat x(a.domain(), n, m);
    for (std::size_t c = 0; c < m; ++c)
        for (std::size_t i = n; i-- > 0;) {
            Scalar acc = t[i][n + c];
            for (std::size_t j = i + 1; j < n; ++j)
                if (!t[i][j].is_zero()) acc -= t[i][j] * x(j, c);
            x(i, c) = acc / t[i][i];
        }
    return x;
}

/// Reduced row echelon form; returns (R, pivot columns).
inline std::pair<Mat, std::vector<std::size_t>> rref(Mat r) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < r.cols() && row < r.rows(); ++col) {
        std::size_t p = row;
        while (p < r.rows() && r(p, col).is_zero()) ++p;
        if (p == r.rows()) continue;
        if (p != row)
            for (std::size_t j = 0; j < r.cols(); ++j) std::swap(r(p, j), r(row, j));
        const Scalar inv = r(row, col).inverse();
        for (std::size_t j = col; j < r.cols(); ++j) r(row, j) *= inv;
        for (std::size_t i = 0; i < r.rows(); ++i) {
            if (i == row || r(i, col).is_zero()) continue;
            const Scalar f = r(i, col);
            for (std::size_t j = col; j < r.cols(); ++j)
                if (!r(row, j).is_zero()) r(i, j) -= f * r(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(r), std::move(pivots)};
}

}  // namespace detail

/// Exact x with A x = b.
inline Vec solve(const Mat& a, const Vec& b) {
    return detail::bareiss_solve(a, Mat::from_columns(a.domain(), {b}, a.rows())).column(0);
}

/// Exact X with A X = B; X's rows take A's column labels, X's columns take B's.
inline Mat solve(const Mat& a, const Mat& b) {
    Mat x = detail::bareiss_solve(a, b);
    x.set_labels(a.col_labels(), b.col_labels());
    return x;
}

/// Inverse with swapped labels: rows labeled by A's columns and vice versa.
inline Mat invert(const Mat& a) {
    Mat x = detail::bareiss_solve(a, Mat::identity(a.domain(), a.rows()));
    x.set_labels(a.col_labels(), a.row_labels());
    return x;
}

inline std::size_t rank(const Mat& a) { return detail::rref(a).second.size(); }

/// Column indices (0-based) of a maximal independent column subset, first-found order.
inline std::vector<std::size_t> pivot_columns(const Mat& a) { return detail::rref(a).second; }

/// Basis of ker(A) for A of full row rank: one vector per non-pivot column.
inline std::vector<Vec> kernel_basis(const Mat& a) {
    auto [r, pivots] = detail::rref(a);
    if (pivots.size() != a.rows())
        throw rank_deficient("kernel_basis: matrix has rank " + std::to_string(pivots.size()) + " < " +
                             std::to_string(a.rows()) + " rows");
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<Vec> basis;
    for (std::size_t f = 0; f < a.cols(); ++f) {
        if (is_pivot[f]) continue;
        Vec v(a.cols(), Scalar::zero(a.domain()));
        v[f] = Scalar::one(a.domain());
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Distinguished kernel basis {e_j - A_I^{-1} A e_j : j not in I} where A_I is
/// the square submatrix on the columns `index_set` (0-based positions).
/// Vectors come in increasing order of j.
inline std::vector<Vec> kernel_basis(const Mat& a, const std::vector<std::size_t>& index_set) {
    if (index_set.size() != a.rows())
        throw dimension_mismatch("kernel_basis: index set must have one entry per row");
    std::vector<Vec> cols;
    for (auto c : index_set) {
        if (c >= a.cols()) throw dimension_mismatch("kernel_basis: index out of range");
        cols.push_back(a.column(c));
    }
    const Mat a_i = Mat::from_columns(a.domain(), cols, a.rows());
    const Mat a_inv = invert(a_i);
    std::vector<Vec> basis;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        if (std::find(index_set.begin(), index_set.end(), j) != index_set.end()) continue;
        const Vec coeff = matvec(a_inv, a.column(j));
        Vec v(a.cols(), Scalar::zero(a.domain()));
        v[j] = Scalar::one(a.domain());
        for (std::size_t i = 0; i < index_set.size(); ++i) v[index_set[i]] = -coeff[i];
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace quasifold
