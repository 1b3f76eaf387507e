#pragma once

// Chains of linear mappings U_1 -- U_2 -- ... -- U_t, each link pointing
// left or right, and the operations that build and transform them.
//
// Storage convention: maps[i] is the matrix of the i-th link (0-based).
//   Forward  (U_i -> U_{i+1}): dims[i+1] x dims[i]
//   Backward (U_i <- U_{i+1}): dims[i]   x dims[i+1]

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "chaindecomp/matrix.hpp"

namespace chaindecomp {

enum class Direction : std::uint8_t { Forward, Backward };

inline char to_char(Direction d) { return d == Direction::Forward ? '>' : '<'; }

inline std::string to_string(const std::vector<Direction>& dirs) {
    std::string s;
    for (auto d : dirs) s += to_char(d);
    return s;
}

/// Parses a string of '>' and '<'.
inline std::vector<Direction> parse_directions(std::string_view s) {
    std::vector<Direction> dirs;
    for (char ch : s) {
        if (ch == '>')
            dirs.push_back(Direction::Forward);
        else if (ch == '<')
            dirs.push_back(Direction::Backward);
        else
            throw std::invalid_argument(std::string("direction must be '>' or '<', got '") + ch + "'");
    }
    return dirs;
}

/// All 2^(t-1) orientation patterns of a chain with t vertices.
inline std::vector<std::vector<Direction>> all_orientations(std::size_t t) {
    std::vector<std::vector<Direction>> out;
    const std::size_t links = t ? t - 1 : 0;
    for (std::size_t bits = 0; bits < (std::size_t{1} << links); ++bits) {
        std::vector<Direction> d(links);
        for (std::size_t k = 0; k < links; ++k) d[k] = (bits >> k) & 1 ? Direction::Backward : Direction::Forward;
        out.push_back(std::move(d));
    }
    return out;
}

struct ChainShape {
    std::vector<Direction> directions;  // t-1 links
    std::vector<std::size_t> dims;      // t vertices

    std::size_t t() const noexcept { return dims.size(); }

    /// Expected (rows, cols) of the i-th map.
    std::pair<std::size_t, std::size_t> map_shape(std::size_t i) const {
        return directions[i] == Direction::Forward ? std::pair{dims[i + 1], dims[i]} : std::pair{dims[i], dims[i + 1]};
    }

    friend bool operator==(const ChainShape&, const ChainShape&) = default;
};

struct Chain {
    ChainShape shape;
    std::vector<Matrix> maps;
    Field field = Field::rationals();

    std::size_t t() const noexcept { return shape.t(); }
    const std::vector<Direction>& directions() const noexcept { return shape.directions; }
    const std::vector<std::size_t>& dims() const noexcept { return shape.dims; }

    friend bool operator==(const Chain&, const Chain&) = default;
};

/// A family of invertible phi_i : U_i -> V_i.
struct LinearIso {
    std::vector<Matrix> mats;

    friend bool operator==(const LinearIso&, const LinearIso&) = default;
};

/// Every violated chain invariant, empty when the chain is well formed.
inline std::vector<std::string> validate(const Chain& c) {
    std::vector<std::string> issues;
    const std::size_t t = c.t();
    if (t == 0) issues.push_back("chain has no vertices");
    if (c.shape.directions.size() + 1 != t && t != 0)
        issues.push_back("expected " + std::to_string(t - 1) + " directions, got " +
                         std::to_string(c.shape.directions.size()));
    if (c.maps.size() + 1 != t && t != 0)
        issues.push_back("expected " + std::to_string(t - 1) + " maps, got " + std::to_string(c.maps.size()));
    if (!issues.empty()) return issues;
    for (std::size_t i = 0; i + 1 < t; ++i) {
        const auto [r, k] = c.shape.map_shape(i);
        const Matrix& m = c.maps[i];
        if (m.rows() != r || m.cols() != k)
            issues.push_back("map " + std::to_string(i + 1) + " (" + to_char(c.shape.directions[i]) + ") is " +
                             m.shape_string() + ", expected " + std::to_string(r) + "x" + std::to_string(k));
        if (m.field() != c.field)
            issues.push_back("map " + std::to_string(i + 1) + " is over " + m.field().name() + ", chain is over " +
                             c.field.name());
    }
    return issues;
}

inline void require_valid(const Chain& c) {
    const auto issues = validate(c);
    if (issues.empty()) return;
    std::string msg = "invalid chain:";
    for (const auto& s : issues) msg += " " + s + ";";
    throw InvalidChain(msg);
}

/// The chain with every space zero.
inline Chain zero_chain(const std::vector<Direction>& dirs, const Field& field) {
    Chain c{{dirs, std::vector<std::size_t>(dirs.size() + 1, 0)}, {}, field};
    for (std::size_t i = 0; i < dirs.size(); ++i) c.maps.emplace_back(field, 0, 0);
    return c;
}

inline Chain direct_sum(const Chain& a, const Chain& b) {
    require_valid(a);
    require_valid(b);
    if (a.shape.directions != b.shape.directions)
        throw ShapeError("direct sum of chains with orientations " + to_string(a.shape.directions) + " and " +
                         to_string(b.shape.directions));
    if (a.field != b.field) throw ContextMismatch("direct sum over " + a.field.name() + " and " + b.field.name());
    Chain c{a.shape, {}, a.field};
    for (std::size_t k = 0; k < a.t(); ++k) c.shape.dims[k] += b.shape.dims[k];
    for (std::size_t i = 0; i < a.maps.size(); ++i) c.maps.push_back(block_diag(a.maps[i], b.maps[i]));
    return c;
}

/// L_ij: F at vertices i..j (1-based, inclusive) joined by identities.
inline Chain interval_chain(const std::vector<Direction>& dirs, std::size_t i, std::size_t j, const Field& field) {
    const std::size_t t = dirs.size() + 1;
    if (i < 1 || i > j || j > t)
        throw std::out_of_range("interval [" + std::to_string(i) + "," + std::to_string(j) + "] outside 1.." +
                                std::to_string(t));
    Chain c{{dirs, std::vector<std::size_t>(t, 0)}, {}, field};
    for (std::size_t k = i; k <= j; ++k) c.shape.dims[k - 1] = 1;
    for (std::size_t k = 0; k + 1 < t; ++k) {
        const auto [r, cols] = c.shape.map_shape(k);
        Matrix m(field, r, cols);
        if (r == 1 && cols == 1) m(0, 0) = Scalar::one(field);
        c.maps.push_back(std::move(m));
    }
    return c;
}

/// B_i = phi_{i+1} A_i phi_i^{-1} (forward) or phi_i A_i phi_{i+1}^{-1} (backward).
inline Chain transport(const Chain& c, const LinearIso& phi) {
    require_valid(c);
    if (phi.mats.size() != c.t())
        throw ShapeError("transport: " + std::to_string(phi.mats.size()) + " matrices for " + std::to_string(c.t()) +
                         " vertices");
    std::vector<Matrix> inv;
    inv.reserve(phi.mats.size());
    for (std::size_t k = 0; k < c.t(); ++k) {
        const Matrix& m = phi.mats[k];
        if (m.rows() != c.dims()[k] || m.cols() != c.dims()[k])
            throw ShapeError("transport: phi_" + std::to_string(k + 1) + " is " + m.shape_string() + ", vertex has dim " +
                             std::to_string(c.dims()[k]));
        try {
            inv.push_back(inverse(m));
        } catch (const SingularError&) {
            throw SingularError("transport: phi_" + std::to_string(k + 1) + " is singular");
        }
    }
    Chain out{c.shape, {}, c.field};
    for (std::size_t i = 0; i < c.maps.size(); ++i) {
        if (c.directions()[i] == Direction::Forward)
            out.maps.push_back(phi.mats[i + 1] * c.maps[i] * inv[i]);
        else
            out.maps.push_back(phi.mats[i] * c.maps[i] * inv[i + 1]);
    }
    return out;
}

/// (psi o phi)_i = psi_i phi_i
inline LinearIso compose(const LinearIso& psi, const LinearIso& phi) {
    if (psi.mats.size() != phi.mats.size()) throw ShapeError("compose: vertex counts differ");
    LinearIso out;
    for (std::size_t k = 0; k < phi.mats.size(); ++k) out.mats.push_back(psi.mats[k] * phi.mats[k]);
    return out;
}

inline LinearIso inverse(const LinearIso& phi) {
    LinearIso out;
    for (const auto& m : phi.mats) out.mats.push_back(inverse(m));
    return out;
}

inline LinearIso identity_iso(const ChainShape& shape, const Field& field) {
    LinearIso out;
    for (auto d : shape.dims) out.mats.push_back(Matrix::identity(field, d));
    return out;
}

/// Integer values that random entries are drawn from (mapped into the field).
using EntryPool = std::vector<long>;

/// Default pool: every residue for small GF(p), a zero-heavy small range otherwise.
inline EntryPool default_pool(const Field& field) {
    if (!field.is_rational() && field.modulus() <= 11) {
        EntryPool pool;
        for (long v = 0; v < static_cast<long>(field.modulus()); ++v) pool.push_back(v);
        return pool;
    }
    return {-2, -1, 0, 0, 0, 1, 1, 2};
}

inline Matrix random_matrix(std::size_t rows, std::size_t cols, const Field& field, std::mt19937_64& rng,
                            const EntryPool& pool) {
    if (pool.empty()) throw std::invalid_argument("empty entry pool");
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    Matrix m(field, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = Scalar::from_int(field, pool[pick(rng)]);
    return m;
}

/// Rejection sampling over the pool; the result always has full rank.
inline Matrix random_invertible(std::size_t n, const Field& field, std::mt19937_64& rng) {
    EntryPool pool = default_pool(field);
    for (;;) {
        Matrix m = random_matrix(n, n, field, rng, pool);
        if (is_invertible(m)) return m;
    }
}

inline Matrix random_invertible(std::size_t n, const Field& field, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return random_invertible(n, field, rng);
}

inline LinearIso random_iso(const ChainShape& shape, const Field& field, std::mt19937_64& rng) {
    LinearIso out;
    for (auto d : shape.dims) out.mats.push_back(random_invertible(d, field, rng));
    return out;
}

inline Chain random_chain(const ChainShape& shape, const Field& field, std::mt19937_64& rng, const EntryPool& pool) {
    if (shape.directions.size() + 1 != shape.t()) throw ShapeError("random_chain: inconsistent shape");
    Chain c{shape, {}, field};
    for (std::size_t i = 0; i + 1 < shape.t(); ++i) {
        const auto [r, k] = shape.map_shape(i);
        c.maps.push_back(random_matrix(r, k, field, rng, pool));
    }
    return c;
}

inline Chain random_chain(const ChainShape& shape, const Field& field, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return random_chain(shape, field, rng, default_pool(field));
}

inline Chain random_chain(const ChainShape& shape, const Field& field, std::uint64_t seed, const EntryPool& pool) {
    std::mt19937_64 rng(seed);
    return random_chain(shape, field, rng, pool);
}

/// The same chain read from U_t back to U_1: vertex k becomes t+1-k and every
/// arrow flips. Matrices are unchanged.
inline Chain reversed(const Chain& c) {
    require_valid(c);
    Chain r{{{}, {c.dims().rbegin(), c.dims().rend()}}, {}, c.field};
    for (std::size_t i = c.maps.size(); i-- > 0;) {
        r.shape.directions.push_back(c.directions()[i] == Direction::Forward ? Direction::Backward : Direction::Forward);
        r.maps.push_back(c.maps[i]);
    }
    return r;
}

}  // namespace chaindecomp
