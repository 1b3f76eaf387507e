#pragma once

// Dense matrices over an exact field, with Gauss-Jordan elimination.
//
// Vectors are columns and a matrix acts from the left. Matrices with zero
// rows or zero columns are ordinary values: they describe maps to or from the
// zero space.

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "chaindecomp/errors.hpp"
#include "chaindecomp/field.hpp"

namespace chaindecomp {

class Matrix {
  public:
    Matrix() : Matrix(Field::rationals(), 0, 0) {}

    Matrix(const Field& field, std::size_t rows, std::size_t cols)
        : field_(field), rows_(rows), cols_(cols), entries_(rows * cols, Scalar::zero(field)) {}

    /// Takes row-major entries; every entry must belong to `field`.
    Matrix(const Field& field, std::size_t rows, std::size_t cols, std::vector<Scalar> entries)
        : field_(field), rows_(rows), cols_(cols), entries_(std::move(entries)) {
        if (entries_.size() != rows * cols)
            throw ShapeError("matrix entry count " + std::to_string(entries_.size()) + " != " +
                             std::to_string(rows) + "x" + std::to_string(cols));
        for (const auto& e : entries_)
            if (e.field() != field_)
                throw ContextMismatch("matrix entry over " + e.field().name() + " in a matrix over " + field_.name());
    }

    static Matrix from_ints(const Field& field, std::initializer_list<std::initializer_list<long>> rows) {
        const std::size_t r = rows.size();
        const std::size_t c = r ? rows.begin()->size() : 0;
        Matrix m(field, r, c);
        std::size_t i = 0;
        for (const auto& row : rows) {
            if (row.size() != c) throw ShapeError("ragged initializer");
            std::size_t j = 0;
            for (long v : row) m(i, j++) = Scalar::from_int(field, v);
            ++i;
        }
        return m;
    }

    static Matrix identity(const Field& field, std::size_t n) {
        Matrix m(field, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(field);
        return m;
    }

    static Matrix scalar_multiple(const Field& field, std::size_t n, long c) {
        Matrix m(field, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::from_int(field, c);
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    const Field& field() const noexcept { return field_; }
    bool is_square() const noexcept { return rows_ == cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    Scalar& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    /// Checked write: rejects a scalar from another field.
    void set(std::size_t i, std::size_t j, Scalar v) {
        if (v.field() != field_) throw ContextMismatch("entry over " + v.field().name() + " written to " + field_.name());
        (*this)(i, j) = std::move(v);
    }

    bool is_zero() const {
        for (const auto& e : entries_)
            if (!e.is_zero()) return false;
        return true;
    }

    Matrix transpose() const {
        Matrix t(field_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        if (r0 + nr > rows_ || c0 + nc > cols_) throw ShapeError("block out of range");
        Matrix b(field_, nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }

    void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
        check_same_field(b);
        if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) throw ShapeError("set_block out of range");
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }

    Matrix row(std::size_t i) const { return block(i, 0, 1, cols_); }
    Matrix col(std::size_t j) const { return block(0, j, rows_, 1); }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        a.check_same_field(b);
        if (a.cols_ != b.rows_)
            throw ShapeError("product of " + a.shape_string() + " and " + b.shape_string());
        Matrix c(a.field_, a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Scalar& aik = a(i, k);
                if (aik.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (!b(k, j).is_zero()) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        a.check_same_shape(b);
        Matrix c = a;
        for (std::size_t k = 0; k < c.entries_.size(); ++k) c.entries_[k] += b.entries_[k];
        return c;
    }

    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        a.check_same_shape(b);
        Matrix c = a;
        for (std::size_t k = 0; k < c.entries_.size(); ++k) c.entries_[k] -= b.entries_[k];
        return c;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

    // Elementary operations, used by the elimination routines below and by
    // the t=3 canonical-form reduction.
    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }
    void scale_row(std::size_t r, const Scalar& s) {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) *= s;
    }
    /// row[dst] += s * row[src]
    void add_row_multiple(std::size_t dst, std::size_t src, const Scalar& s) {
        if (s.is_zero()) return;
        for (std::size_t j = 0; j < cols_; ++j)
            if (!(*this)(src, j).is_zero()) (*this)(dst, j) += s * (*this)(src, j);
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }
    /// col[dst] += s * col[src]
    void add_col_multiple(std::size_t dst, std::size_t src, const Scalar& s) {
        if (s.is_zero()) return;
        for (std::size_t i = 0; i < rows_; ++i)
            if (!(*this)(i, src).is_zero()) (*this)(i, dst) += s * (*this)(i, src);
    }

    std::string shape_string() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

    void check_same_field(const Matrix& o) const {
        if (field_ != o.field_) throw ContextMismatch("matrices over " + field_.name() + " and " + o.field_.name());
    }

  private:
    void check_same_shape(const Matrix& o) const {
        check_same_field(o);
        if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeError(shape_string() + " vs " + o.shape_string());
    }

    Field field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Scalar> entries_;
};

inline std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? "; " : "");
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
    }
    return os << ']';
}

inline Matrix hstack(const Matrix& a, const Matrix& b) {
    a.check_same_field(b);
    if (a.rows() != b.rows()) throw ShapeError("hstack of " + a.shape_string() + " and " + b.shape_string());
    Matrix m(a.field(), a.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(0, a.cols(), b);
    return m;
}

inline Matrix vstack(const Matrix& a, const Matrix& b) {
    a.check_same_field(b);
    if (a.cols() != b.cols()) throw ShapeError("vstack of " + a.shape_string() + " and " + b.shape_string());
    Matrix m(a.field(), a.rows() + b.rows(), a.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), 0, b);
    return m;
}

inline Matrix block_diag(const Matrix& a, const Matrix& b) {
    a.check_same_field(b);
    Matrix m(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), a.cols(), b);
    return m;
}

struct RrefResult {
    Matrix reduced;
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_cols;
};

/// Reduced row-echelon form. Pivots are chosen in the leftmost column that
/// has a nonzero entry at or below the current row, topmost such entry first.
inline RrefResult rref(Matrix m) {
    RrefResult out{std::move(m), 0, {}};
    Matrix& a = out.reduced;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && a(p, c).is_zero()) ++p;
        if (p == a.rows()) continue;
        a.swap_rows(r, p);
        if (!a(r, c).is_one()) a.scale_row(r, a(r, c).inverse());
        for (std::size_t i = 0; i < a.rows(); ++i)
            if (i != r && !a(i, c).is_zero()) a.add_row_multiple(i, r, -a(i, c));
        out.pivot_cols.push_back(c);
        ++r;
    }
    out.rank = r;
    return out;
}

inline std::size_t rank(const Matrix& m) { return rref(m).rank; }

/// Gauss-Jordan inverse; throws SingularError.
inline Matrix inverse(const Matrix& m) {
    if (!m.is_square()) throw ShapeError("inverse of non-square " + m.shape_string());
    const std::size_t n = m.rows();
    auto r = rref(hstack(m, Matrix::identity(m.field(), n)));
    if (n > 0 && (r.rank < n || r.pivot_cols[n - 1] != n - 1)) throw SingularError("matrix is singular");
    return r.reduced.block(0, n, n, n);
}

inline bool is_invertible(const Matrix& m) { return m.is_square() && rank(m) == m.rows(); }

/// One solution x of a·x = b (b a column), free variables set to zero.
inline std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
    if (b.cols() != 1 || b.rows() != a.rows()) throw ShapeError("solve: rhs must be a column of matching height");
    const auto r = rref(hstack(a, b));
    if (r.rank > 0 && r.pivot_cols.back() == a.cols()) return std::nullopt;
    Matrix x(a.field(), a.cols(), 1);
    for (std::size_t i = 0; i < r.rank; ++i) x(r.pivot_cols[i], 0) = r.reduced(i, a.cols());
    return x;
}

inline Scalar determinant(Matrix a) {
    if (!a.is_square()) throw ShapeError("determinant of non-square " + a.shape_string());
    Scalar det = Scalar::one(a.field());
    for (std::size_t c = 0; c < a.cols(); ++c) {
        std::size_t p = c;
        while (p < a.rows() && a(p, c).is_zero()) ++p;
        if (p == a.rows()) return Scalar::zero(a.field());
        if (p != c) {
            a.swap_rows(p, c);
            det = -det;
        }
        det *= a(c, c);
        const Scalar inv = a(c, c).inverse();
        for (std::size_t i = c + 1; i < a.rows(); ++i)
            if (!a(i, c).is_zero()) a.add_row_multiple(i, c, -(a(i, c) * inv));
    }
    return det;
}

}  // namespace chaindecomp
