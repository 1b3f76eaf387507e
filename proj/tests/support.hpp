#pragma once

// Shared fixtures and independent oracles for the test suites.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <random>
#include <vector>

#include "chaindecomp/chaindecomp.hpp"

namespace chaindecomp::testing {

/// The t=3 chain U1 -> U2 <- U3 whose block matrix [M1 | M2] is already in
/// canonical form, dims (5, 6, 5).
inline Chain example_t3(const Field& f = Field::rationals()) {
    Matrix m1 = Matrix::from_ints(f, {{0, 0, 1, 0, 0},
                                      {0, 0, 0, 1, 0},
                                      {0, 0, 0, 0, 1},
                                      {0, 0, 0, 0, 0},
                                      {0, 0, 0, 0, 0},
                                      {0, 0, 0, 0, 0}});
    Matrix m2 = Matrix::from_ints(f, {{0, 1, 0, 0, 0},
                                      {0, 0, 1, 0, 0},
                                      {0, 0, 0, 0, 0},
                                      {0, 0, 0, 1, 0},
                                      {0, 0, 0, 0, 1},
                                      {0, 0, 0, 0, 0}});
    return Chain{{{Direction::Forward, Direction::Backward}, {5, 6, 5}}, {m1, m2}, f};
}

inline IntervalMultiset example_t3_multiset() {
    return IntervalMultiset(3, {{{1, 1}, 2}, {{1, 2}, 1}, {{1, 3}, 2}, {{2, 2}, 1}, {{2, 3}, 2}, {{3, 3}, 1}});
}

inline IntervalMultiset random_multiset(std::size_t t, std::mt19937_64& rng, std::size_t max_mult = 2,
                                        double density = 0.5) {
    IntervalMultiset m(t);
    std::bernoulli_distribution present(density);
    std::uniform_int_distribution<std::size_t> mult(1, max_mult);
    for (std::size_t p = 1; p <= t; ++p)
        for (std::size_t q = p; q <= t; ++q)
            if (present(rng)) m.add(p, q, mult(rng));
    return m;
}

inline std::vector<Direction> random_dirs(std::size_t t, std::mt19937_64& rng) {
    std::vector<Direction> d(t - 1);
    std::bernoulli_distribution coin(0.5);
    for (auto& x : d) x = coin(rng) ? Direction::Forward : Direction::Backward;
    return d;
}

/// Random chain with interesting (non-generic) ranks: a random direct sum of
/// intervals moved by a random base change, or a sparse random chain.
inline Chain random_structured_chain(std::size_t t, std::size_t max_dim, const Field& f, std::mt19937_64& rng) {
    const auto dirs = random_dirs(t, rng);
    if (std::bernoulli_distribution(0.5)(rng)) {
        std::uniform_int_distribution<std::size_t> dim(0, max_dim);
        ChainShape shape{dirs, {}};
        for (std::size_t i = 0; i < t; ++i) shape.dims.push_back(dim(rng));
        EntryPool pool = f.is_rational() ? EntryPool{0, 0, 0, 1, -1, 2} : EntryPool{0, 0, 1, 2};
        return random_chain(shape, f, rng, pool);
    }
    for (;;) {
        auto m = random_multiset(t, rng, 2, 0.35);
        auto dims = m.vertex_dims();
        if (*std::max_element(dims.begin(), dims.end()) > max_dim) continue;
        const Chain sum = canonical_sum(dirs, m, f);
        return transport(sum, random_iso(sum.shape, f, rng));
    }
}

// ---- oracles independent of the elimination code --------------------------

/// Leibniz expansion over all permutations.
inline Scalar leibniz_det(const Matrix& a) {
    const std::size_t n = a.rows();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Scalar det = Scalar::zero(a.field());
    do {
        Scalar term = Scalar::one(a.field());
        for (std::size_t i = 0; i < n; ++i) term *= a(i, perm[i]);
        std::size_t inversions = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
        det += inversions % 2 ? -term : term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

/// Laplace expansion along the first row.
inline Scalar laplace_det(const Matrix& a) {
    const std::size_t n = a.rows();
    if (n == 0) return Scalar::one(a.field());
    if (n == 1) return a(0, 0);
    Scalar det = Scalar::zero(a.field());
    for (std::size_t c = 0; c < n; ++c) {
        if (a(0, c).is_zero()) continue;
        Matrix minor(a.field(), n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = 0, k = 0; j < n; ++j)
                if (j != c) minor(i - 1, k++) = a(i, j);
        const Scalar term = a(0, c) * laplace_det(minor);
        det += c % 2 ? -term : term;
    }
    return det;
}

/// Largest k such that some k x k minor is nonzero.
inline std::size_t minor_rank(const Matrix& a) {
    const std::size_t n = std::min(a.rows(), a.cols());
    for (std::size_t k = n; k > 0; --k) {
        std::vector<bool> rsel(a.rows(), false), csel(a.cols(), false);
        std::fill(rsel.begin(), rsel.begin() + k, true);
        do {
            std::fill(csel.begin(), csel.end(), false);
            std::fill(csel.begin(), csel.begin() + k, true);
            do {
                Matrix sub(a.field(), k, k);
                for (std::size_t i = 0, si = 0; i < a.rows(); ++i) {
                    if (!rsel[i]) continue;
                    for (std::size_t j = 0, sj = 0; j < a.cols(); ++j)
                        if (csel[j]) sub(si, sj++) = a(i, j);
                    ++si;
                }
                if (!laplace_det(sub).is_zero()) return k;
            } while (std::prev_permutation(csel.begin(), csel.end()));
        } while (std::prev_permutation(rsel.begin(), rsel.end()));
    }
    return 0;
}

/// Exactly orthogonal rational matrix: a signed permutation, optionally with
/// the rotation [[3/5, 4/5], [-4/5, 3/5]] on a leading 2x2 block.
inline Matrix random_orthogonal(std::size_t m, std::mt19937_64& rng, bool allow_rotation = true) {
    const Field q = Field::rationals();
    Matrix rot = Matrix::identity(q, m);
    if (allow_rotation && m >= 2 && std::bernoulli_distribution(0.5)(rng)) {
        rot(0, 0) = Scalar::from_ratio(q, 3, 5);
        rot(0, 1) = Scalar::from_ratio(q, 4, 5);
        rot(1, 0) = Scalar::from_ratio(q, -4, 5);
        rot(1, 1) = Scalar::from_ratio(q, 3, 5);
    }
    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Matrix sp(q, m, m);
    std::bernoulli_distribution sign(0.5);
    for (std::size_t i = 0; i < m; ++i) sp(i, perm[i]) = Scalar::from_int(q, sign(rng) ? 1 : -1);
    return sp * rot;
}

}  // namespace chaindecomp::testing
