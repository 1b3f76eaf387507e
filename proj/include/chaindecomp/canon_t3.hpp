#pragma once

// Canonical form of chains U1 -> U2 <- U3 given by the block matrix [M1 | M2].
// Rows of both blocks change together (S2^{-1}); columns change within each
// block (S1, S3). The result is
//
//            |  0  I_p  |  0 I_r   0   |
//   [N1|N2] =|  0   0   |  0  0    0   |   top strip: p rows
//            |----------+--------------|
//            |  0   0   |  0     I_q   |   bottom strip: d2-p rows
//            |  0   0   |  0      0    |

#include <cstddef>

#include "chaindecomp/chain.hpp"
#include "chaindecomp/invariants.hpp"

namespace chaindecomp {

struct CanonicalT3 {
    std::size_t p = 0, q = 0, r = 0;
    Matrix s1, s2, s3;  // S2^{-1} M1 S1 = N1, S2^{-1} M2 S3 = N2
    Matrix n1, n2;
};

/// [[0, I_rank], [0, 0]] of the given size.
inline Matrix corner_identity(const Field& f, std::size_t rows, std::size_t cols, std::size_t rank) {
    Matrix m(f, rows, cols);
    for (std::size_t k = 0; k < rank; ++k) m(k, cols - rank + k) = Scalar::one(f);
    return m;
}

namespace detail {

/// Row ops P and column ops Q with P x Q = corner_identity(rank x).
struct CornerReduction {
    Matrix row_ops, col_ops;
    std::size_t rank;
};

inline CornerReduction reduce_to_corner(const Matrix& x) {
    const Field& f = x.field();
    const std::size_t m = x.rows(), n = x.cols();
    auto red = rref(hstack(x, Matrix::identity(f, m)));
    // pivots of x itself come first: they are the columns < n
    std::size_t rank = 0;
    while (rank < red.pivot_cols.size() && red.pivot_cols[rank] < n) ++rank;
    Matrix p = red.reduced.block(0, n, m, m);
    Matrix r = red.reduced.block(0, 0, m, n);

    // move pivot columns (in order) to the right end, free columns to the left
    std::vector<std::size_t> order;
    std::vector<bool> is_pivot(n, false);
    for (std::size_t k = 0; k < rank; ++k) is_pivot[red.pivot_cols[k]] = true;
    for (std::size_t c = 0; c < n; ++c)
        if (!is_pivot[c]) order.push_back(c);
    for (std::size_t k = 0; k < rank; ++k) order.push_back(red.pivot_cols[k]);
    Matrix q(f, n, n);
    for (std::size_t k = 0; k < n; ++k) q(order[k], k) = Scalar::one(f);

    // clear the free columns with the identity block
    Matrix rq = r * q;
    Matrix clear = Matrix::identity(f, n);
    for (std::size_t row = 0; row < rank; ++row)
        for (std::size_t c = 0; c + rank < n; ++c)
            if (!rq(row, c).is_zero()) clear(n - rank + row, c) = -rq(row, c);
    return {std::move(p), q * clear, rank};
}

}  // namespace detail

inline CanonicalT3 reduce_t3(const Matrix& m1, const Matrix& m2) {
    m1.check_same_field(m2);
    if (m1.rows() != m2.rows())
        throw ShapeError("reduce_t3: M1 is " + m1.shape_string() + " but M2 is " + m2.shape_string());
    const Field& f = m1.field();
    const std::size_t d1 = m1.cols(), d2 = m1.rows(), d3 = m2.cols();

    Matrix rows = Matrix::identity(f, d2);  // accumulated S2^{-1}
    Matrix c1 = Matrix::identity(f, d1);
    Matrix c3 = Matrix::identity(f, d3);

    // (a) M1 to corner form
    const auto a = detail::reduce_to_corner(m1);
    const std::size_t p = a.rank;
    rows = a.row_ops * rows;
    c1 = c1 * a.col_ops;
    Matrix n2 = a.row_ops * m2;

    // (b) bottom strip of M2 to corner form; row ops stay inside the strip
    const auto b = detail::reduce_to_corner(n2.block(p, 0, d2 - p, d3));
    const std::size_t q = b.rank;
    Matrix lift_b = Matrix::identity(f, d2);
    lift_b.set_block(p, p, b.row_ops);
    rows = lift_b * rows;
    c3 = c3 * b.col_ops;
    n2 = lift_b * n2 * b.col_ops;

    // (c) clear M12 (top strip, last q columns) with the rows of I_q
    Matrix clear = Matrix::identity(f, d2);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t k = 0; k < q; ++k) clear(i, p + k) = -n2(i, d3 - q + k);
    rows = clear * rows;
    n2 = clear * n2;

    // (d) M11 to corner form, then restore I_p in N1 by column operations
    const auto d = detail::reduce_to_corner(n2.block(0, 0, p, d3 - q));
    const std::size_t r = d.rank;
    Matrix lift_d = Matrix::identity(f, d2);
    lift_d.set_block(0, 0, d.row_ops);
    Matrix cols_d = Matrix::identity(f, d3);
    cols_d.set_block(0, 0, d.col_ops);
    Matrix restore = Matrix::identity(f, d1);
    restore.set_block(d1 - p, d1 - p, inverse(d.row_ops));
    rows = lift_d * rows;
    c3 = c3 * cols_d;
    c1 = c1 * restore;

    CanonicalT3 out{p, q, r, std::move(c1), inverse(rows), std::move(c3), Matrix(f, d2, d1), Matrix(f, d2, d3)};
    out.n1.set_block(0, 0, corner_identity(f, p, d1, p));
    out.n2.set_block(0, 0, corner_identity(f, p, d3 - q, r));
    out.n2.set_block(p, d3 - q, corner_identity(f, d2 - p, q, q));

    if (rows * m1 * out.s1 != out.n1 || rows * m2 * out.s3 != out.n2)
        throw VerificationError("reduce_t3: transformation identities do not hold");
    return out;
}

inline CanonicalT3 reduce_t3(const Chain& c) {
    require_valid(c);
    if (c.t() != 3 || c.directions()[0] != Direction::Forward || c.directions()[1] != Direction::Backward)
        throw ShapeError("canonical t=3 form needs orientation \"><\", got \"" + to_string(c.directions()) + "\"");
    return reduce_t3(c.maps[0], c.maps[1]);
}

/// Interval multiplicities read off the block sizes.
inline IntervalMultiset read_intervals_t3(const CanonicalT3& canon, std::size_t d1, std::size_t d2, std::size_t d3) {
    const long p = static_cast<long>(canon.p), q = static_cast<long>(canon.q), r = static_cast<long>(canon.r);
    const long counts[6][3] = {
        {1, 1, static_cast<long>(d1) - p}, {1, 2, p - r},  {1, 3, r},
        {2, 2, static_cast<long>(d2) - p - q}, {2, 3, q}, {3, 3, static_cast<long>(d3) - r - q},
    };
    IntervalMultiset out(3);
    for (const auto& [a, b, m] : counts) {
        if (m < 0)
            throw std::invalid_argument("malformed canonical data: negative count for L" + std::to_string(a) +
                                        std::to_string(b));
        out.add(static_cast<std::size_t>(a), static_cast<std::size_t>(b), static_cast<std::size_t>(m));
    }
    return out;
}

}  // namespace chaindecomp
