#pragma once

// Subspaces of F^n held as reduced row-echelon bases, so that two subspaces
// are equal exactly when their bases are equal matrices.

#include <cstddef>
#include <string>

#include "chaindecomp/matrix.hpp"

namespace chaindecomp {

class Subspace {
  public:
    /// Row span of `generators` (any number of rows, ambient = cols).
    static Subspace span(const Matrix& generators) {
        auto r = rref(generators);
        return Subspace(r.reduced.block(0, 0, r.rank, generators.cols()));
    }

    static Subspace zero(const Field& f, std::size_t ambient) { return Subspace(Matrix(f, 0, ambient)); }
    static Subspace full(const Field& f, std::size_t ambient) { return Subspace(Matrix::identity(f, ambient)); }

    std::size_t ambient_dim() const noexcept { return basis_.cols(); }
    std::size_t dim() const noexcept { return basis_.rows(); }
    const Field& field() const noexcept { return basis_.field(); }

    /// Rows are the basis vectors, in RREF.
    const Matrix& basis() const noexcept { return basis_; }

    /// Basis vector k as a column.
    Matrix vector(std::size_t k) const { return basis_.row(k).transpose(); }

    friend bool operator==(const Subspace&, const Subspace&) = default;

  private:
    explicit Subspace(Matrix basis) : basis_(std::move(basis)) {}
    Matrix basis_;
};

inline std::ostream& operator<<(std::ostream& os, const Subspace& s) {
    return os << "span" << s.basis() << " in F^" << s.ambient_dim();
}

namespace detail {
inline void check_ambient(const Subspace& a, std::size_t n, const char* what) {
    if (a.ambient_dim() != n)
        throw ShapeError(std::string(what) + ": ambient dimension " + std::to_string(a.ambient_dim()) +
                         ", expected " + std::to_string(n));
}
}  // namespace detail

/// {x : m x = 0}
inline Subspace kernel_basis(const Matrix& m) {
    const auto r = rref(m);
    const std::size_t n = m.cols();
    Matrix gens(m.field(), n - r.rank, n);
    std::size_t row = 0, next_pivot = 0;
    for (std::size_t c = 0; c < n; ++c) {
        if (next_pivot < r.rank && r.pivot_cols[next_pivot] == c) {
            ++next_pivot;
            continue;
        }
        // free column c: x_c = 1, x_{pivot_i} = -reduced(i, c)
        gens(row, c) = Scalar::one(m.field());
        for (std::size_t i = 0; i < r.rank; ++i) gens(row, r.pivot_cols[i]) = -r.reduced(i, c);
        ++row;
    }
    return Subspace::span(gens);
}

/// Column space of m.
inline Subspace image_basis(const Matrix& m) { return Subspace::span(m.transpose()); }

/// Vectors y with y . x = 0 for all x in s, as a subspace of the same F^n.
inline Subspace annihilator(const Subspace& s) { return kernel_basis(s.basis()); }

inline Subspace map_subspace(const Matrix& m, const Subspace& s) {
    m.check_same_field(s.basis());
    detail::check_ambient(s, m.cols(), "map_subspace");
    // rows of basis * m^T are the images m x of the basis vectors
    return Subspace::span(s.basis() * m.transpose());
}

/// {x : m x in s}
inline Subspace preimage_subspace(const Matrix& m, const Subspace& s) {
    m.check_same_field(s.basis());
    detail::check_ambient(s, m.rows(), "preimage_subspace");
    // m x lies in s iff every annihilating functional of s kills m x.
    return kernel_basis(annihilator(s).basis() * m);
}

inline Subspace subspace_sum(const Subspace& a, const Subspace& b) {
    a.basis().check_same_field(b.basis());
    detail::check_ambient(b, a.ambient_dim(), "subspace_sum");
    return Subspace::span(vstack(a.basis(), b.basis()));
}

inline Subspace intersection(const Subspace& a, const Subspace& b) {
    a.basis().check_same_field(b.basis());
    detail::check_ambient(b, a.ambient_dim(), "intersection");
    return kernel_basis(vstack(annihilator(a).basis(), annihilator(b).basis()));
}

/// b is a subset of a.
inline bool subspace_contains(const Subspace& a, const Subspace& b) {
    detail::check_ambient(b, a.ambient_dim(), "subspace_contains");
    return subspace_sum(a, b).dim() == a.dim();
}

inline bool subspace_equal(const Subspace& a, const Subspace& b) {
    detail::check_ambient(b, a.ambient_dim(), "subspace_equal");
    return a == b;
}

inline std::size_t subspace_dim(const Subspace& a) { return a.dim(); }

}  // namespace chaindecomp
