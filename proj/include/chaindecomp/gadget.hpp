#pragma once

// Embedding of unitary similarity into isometry of chains U1 -> U2 <- U3.
//
// For an m x m matrix X the chain is given by
//
//         | I  0  0 |          | I  0 |
//     M = | 0 2I  0 |,   N_X = | I  I |
//         | 0  0 3I |          | I  X |
//
// and (M, N_X), (M, N_Y) are related by unitary S1, S2, S3 with
// S2^{-1} M S1 = M and S2^{-1} N_X S3 = N_Y exactly when X and Y are unitarily
// similar. Over Q, "unitary" means exactly orthogonal: S^T S = I.

#include <cstddef>
#include <string>

#include "chaindecomp/chain.hpp"

namespace chaindecomp {

struct Gadget {
    Matrix m;  // 3m x 3m
    Matrix n;  // 3m x 2m
};

/// Thrown by extract_similarity; `check` names the failed condition.
struct GadgetCheckError : std::domain_error {
    enum class Check { Shape, Orthogonality, FirstEquation, SecondEquation, BlockStructure, Strip1, Strip2, Strip3, Similarity };
    Check check;
    GadgetCheckError(Check c, const std::string& what) : std::domain_error(what), check(c) {}
};

inline void require_gadget_field(const Field& f) {
    // M M^T = I + 4I + 9I needs 1, 4, 9 distinct and nonzero
    if (!f.is_rational() && f.modulus() <= 5)
        throw std::invalid_argument("gadget needs characteristic 0 or at least 7, got " + f.name());
}

inline Gadget build_gadget(const Matrix& x) {
    if (!x.is_square()) throw ShapeError("gadget needs a square matrix, got " + x.shape_string());
    const Field& f = x.field();
    require_gadget_field(f);
    const std::size_t m = x.rows();
    const Matrix id = Matrix::identity(f, m);

    Gadget g{Matrix(f, 3 * m, 3 * m), Matrix(f, 3 * m, 2 * m)};
    for (std::size_t k = 0; k < 3; ++k) g.m.set_block(k * m, k * m, Matrix::scalar_multiple(f, m, static_cast<long>(k + 1)));
    g.n.set_block(0, 0, id);
    g.n.set_block(m, 0, id);
    g.n.set_block(m, m, id);
    g.n.set_block(2 * m, 0, id);
    g.n.set_block(2 * m, m, x);
    return g;
}

/// The chain U1 -M-> U2 <-N_X- U3 with dims (3m, 3m, 2m).
inline Chain gadget_chain(const Matrix& x) {
    auto g = build_gadget(x);
    const std::size_t m = x.rows();
    return Chain{{{Direction::Forward, Direction::Backward}, {3 * m, 3 * m, 2 * m}}, {std::move(g.m), std::move(g.n)}, x.field()};
}

inline Matrix repeat_diag(const Matrix& c, std::size_t copies) {
    Matrix out(c.field(), 0, 0);
    for (std::size_t k = 0; k < copies; ++k) out = block_diag(out, c);
    return out;
}

/// Whether c^{-1} x c = y, cross-checked against the chain equations with
/// S1 = S2 = c+c+c and S3 = c+c. Throws SingularError for singular c and
/// VerificationError if the two answers disagree.
inline bool verify_transport(const Matrix& x, const Matrix& y, const Matrix& c) {
    if (!x.is_square() || x.rows() != y.rows() || y.cols() != y.rows() || c.rows() != x.rows() || !c.is_square())
        throw ShapeError("verify_transport: x, y, c must be square of one size");
    const Matrix cinv = inverse(c);
    const bool similar = cinv * x * c == y;

    const Gadget gx = build_gadget(x), gy = build_gadget(y);
    const Matrix s1 = repeat_diag(c, 3), s3 = repeat_diag(c, 2);
    const Matrix s2inv = repeat_diag(cinv, 3);
    const bool chains = s2inv * gx.m * s1 == gx.m && s2inv * gx.n * s3 == gy.n;
    if (similar != chains) throw VerificationError("similarity and chain transport disagree");
    return similar;
}

inline bool is_orthogonal(const Matrix& s) {
    return s.is_square() && s.transpose() * s == Matrix::identity(s.field(), s.rows());
}

/// Recovers C with C y = x C (and C orthogonal) from orthogonal S1, S2, S3
/// relating the gadgets of x and y. Reports the first failed check.
inline Matrix extract_similarity(const Matrix& s1, const Matrix& s2, const Matrix& s3, const Matrix& x, const Matrix& y) {
    using Check = GadgetCheckError::Check;
    if (!x.is_square() || !y.is_square() || x.rows() != y.rows())
        throw GadgetCheckError(Check::Shape, "x and y must be square of one size");
    const std::size_t m = x.rows();
    if (s1.rows() != 3 * m || !s1.is_square() || s2.rows() != 3 * m || !s2.is_square() || s3.rows() != 2 * m ||
        !s3.is_square())
        throw GadgetCheckError(Check::Shape, "S1, S2 must be 3m x 3m and S3 2m x 2m");
    for (const auto* s : {&s1, &s2, &s3})
        if (!is_orthogonal(*s))
            throw GadgetCheckError(Check::Orthogonality, "S" + std::to_string(s == &s1 ? 1 : s == &s2 ? 2 : 3) +
                                                             " is not orthogonal");

    const Gadget gx = build_gadget(x), gy = build_gadget(y);
    const Matrix s2inv = s2.transpose();
    if (s2inv * gx.m * s1 != gx.m) throw GadgetCheckError(Check::FirstEquation, "S2^-1 M S1 != M");
    if (s2inv * gx.n * s3 != gy.n) throw GadgetCheckError(Check::SecondEquation, "S2^-1 N_X S3 != N_Y");

    // M M^T = I + 4I + 9I commutes with S2, which forces S2 block diagonal
    const Matrix mmt = gx.m * gx.m.transpose();
    if (mmt * s2 != s2 * mmt) throw GadgetCheckError(Check::BlockStructure, "S2 does not commute with M M^T");
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = 0; b < 3; ++b)
            if (a != b && !s2.block(a * m, b * m, m, m).is_zero())
                throw GadgetCheckError(Check::BlockStructure, "S2 has a nonzero off-diagonal block (" +
                                                                  std::to_string(a + 1) + "," + std::to_string(b + 1) + ")");
    const Matrix c1 = s2.block(0, 0, m, m), c2 = s2.block(m, m, m, m), c3 = s2.block(2 * m, 2 * m, m, m);

    // horizontal strips of S2 N_Y = N_X S3
    const Matrix zero(x.field(), m, m), id = Matrix::identity(x.field(), m);
    if (hstack(c1, zero) != hstack(id, zero) * s3)
        throw GadgetCheckError(Check::Strip1, "[C1 0] != [I 0] S3");
    if (hstack(c2, c2) != hstack(id, id) * s3) throw GadgetCheckError(Check::Strip2, "[C2 C2] != [I I] S3");
    if (hstack(c3, c3 * y) != hstack(id, x) * s3) throw GadgetCheckError(Check::Strip3, "[C3 C3Y] != [I X] S3");

    if (c3 * y != x * c3 || !is_orthogonal(c3)) throw GadgetCheckError(Check::Similarity, "C3 Y != X C3");
    return c3;
}

}  // namespace chaindecomp
