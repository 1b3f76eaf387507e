#pragma once

// Complete invariants of a chain up to linear isomorphism.
//
// At every vertex i the chain defines a flag
//     0 = U_i0 <= U_i1 <= ... <= U_ii = U_i
// by pushing the previous flag forward through a forward arrow, or by taking
// the kernel followed by preimages of the previous flag through a backward
// arrow. The dimensions n_ij = dim U_ij determine the chain, and the interval
// multiplicities m_pq can be read off them either by a left-to-right sweep or
// by solving a square linear system against the tables of the intervals L_pq.

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "chaindecomp/chain.hpp"
#include "chaindecomp/subspace.hpp"

namespace chaindecomp {

struct Flag {
    std::size_t vertex = 1;          // 1-based
    std::vector<Subspace> members;   // members[j-1] = U_ij, j = 1..vertex

    /// U_ij with U_i0 the zero subspace.
    Subspace at(std::size_t j) const {
        if (j == 0) return Subspace::zero(members.front().field(), members.front().ambient_dim());
        return members.at(j - 1);
    }
};

inline std::vector<Flag> flags(const Chain& c) {
    require_valid(c);
    const auto& dims = c.dims();
    std::vector<Flag> out;
    out.push_back(Flag{1, {Subspace::full(c.field, dims[0])}});
    for (std::size_t i = 0; i + 1 < c.t(); ++i) {
        const Flag& prev = out.back();
        const Matrix& a = c.maps[i];
        Flag next{i + 2, {}};
        if (c.directions()[i] == Direction::Forward) {
            for (const auto& u : prev.members) next.members.push_back(map_subspace(a, u));
        } else {
            next.members.push_back(kernel_basis(a));
            for (std::size_t j = 0; j + 1 < prev.members.size(); ++j)
                next.members.push_back(preimage_subspace(a, prev.members[j]));
        }
        next.members.push_back(Subspace::full(c.field, dims[i + 1]));
        out.push_back(std::move(next));
    }
    return out;
}

/// Lower-triangular n_ij, 1 <= j <= i <= t. Entries are not constrained here:
/// a table read from elsewhere may fail to be realizable.
struct InvariantTable {
    std::vector<std::vector<long>> rows;  // rows[i-1] has i entries

    std::size_t t() const noexcept { return rows.size(); }

    /// n_ij with n_i0 = 0 (1-based).
    long n(std::size_t i, std::size_t j) const { return j == 0 ? 0 : rows.at(i - 1).at(j - 1); }

    static InvariantTable zeros(std::size_t t) {
        InvariantTable tab;
        for (std::size_t i = 1; i <= t; ++i) tab.rows.emplace_back(i, 0);
        return tab;
    }

    bool well_shaped() const {
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (rows[i].size() != i + 1) return false;
        return true;
    }

    friend InvariantTable operator+(const InvariantTable& a, const InvariantTable& b) {
        if (a.t() != b.t()) throw ShapeError("adding invariant tables of different sizes");
        InvariantTable c = a;
        for (std::size_t i = 0; i < c.rows.size(); ++i)
            for (std::size_t j = 0; j < c.rows[i].size(); ++j) c.rows[i][j] += b.rows[i][j];
        return c;
    }

    friend bool operator==(const InvariantTable&, const InvariantTable&) = default;
};

inline InvariantTable invariant_table(const std::vector<Flag>& fl) {
    InvariantTable tab;
    for (const auto& f : fl) {
        std::vector<long> row;
        for (const auto& u : f.members) row.push_back(static_cast<long>(u.dim()));
        tab.rows.push_back(std::move(row));
    }
    return tab;
}

inline InvariantTable invariant_table(const Chain& c) { return invariant_table(flags(c)); }

/// Multiplicity m_pq of every interval L_pq (1 <= p <= q <= t); zeros are not stored.
class IntervalMultiset {
  public:
    using Key = std::pair<std::size_t, std::size_t>;

    IntervalMultiset() = default;
    explicit IntervalMultiset(std::size_t t) : t_(t) {}
    IntervalMultiset(std::size_t t, std::initializer_list<std::pair<const Key, std::size_t>> init) : t_(t) {
        for (const auto& [k, m] : init) add(k.first, k.second, m);
    }

    std::size_t t() const noexcept { return t_; }

    void add(std::size_t p, std::size_t q, std::size_t m = 1) {
        if (p < 1 || p > q || q > t_)
            throw std::out_of_range("interval [" + std::to_string(p) + "," + std::to_string(q) + "] outside 1.." +
                                    std::to_string(t_));
        if (m) counts_[{p, q}] += m;
    }

    std::size_t count(std::size_t p, std::size_t q) const {
        auto it = counts_.find({p, q});
        return it == counts_.end() ? 0 : it->second;
    }

    /// Sorted by (p, q).
    const std::map<Key, std::size_t>& counts() const noexcept { return counts_; }

    std::size_t summands() const {
        std::size_t s = 0;
        for (const auto& [k, m] : counts_) s += m;
        return s;
    }

    /// dims of the direct sum: vertex i gets the number of summands covering i.
    std::vector<std::size_t> vertex_dims() const {
        std::vector<std::size_t> d(t_, 0);
        for (const auto& [k, m] : counts_)
            for (std::size_t i = k.first; i <= k.second; ++i) d[i - 1] += m;
        return d;
    }

    friend bool operator==(const IntervalMultiset&, const IntervalMultiset&) = default;

  private:
    std::size_t t_ = 0;
    std::map<Key, std::size_t> counts_;
};

/// Invariant table of the single interval L_pq.
inline InvariantTable interval_table(const std::vector<Direction>& dirs, std::size_t p, std::size_t q) {
    return invariant_table(interval_chain(dirs, p, q, Field::rationals()));
}

/// Order in which interval start points occupy the flag slots at each vertex.
/// order[i-1][s-1] is the start p of the intervals counted by slot s at vertex
/// i: a forward arrow keeps the slots and appends the newcomer, a backward
/// arrow puts the newcomer (the kernel) first and shifts the rest.
inline std::vector<std::vector<std::size_t>> slot_starts(const std::vector<Direction>& dirs) {
    std::vector<std::vector<std::size_t>> order{{1}};
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        auto next = order.back();
        if (dirs[i] == Direction::Forward)
            next.push_back(i + 2);
        else
            next.insert(next.begin(), i + 2);
        order.push_back(std::move(next));
    }
    return order;
}

struct SweepLayer {
    std::size_t start;  // first vertex of the intervals in this layer
    long count;
};

/// Sweep state after processing vertex `vertex`: one layer per flag slot.
struct SweepState {
    std::size_t vertex = 1;
    std::vector<SweepLayer> layers;
    IntervalMultiset finished;
};

namespace detail {

inline void check_table_shape(const InvariantTable& table, const std::vector<Direction>& dirs) {
    if (!table.well_shaped() || table.t() != dirs.size() + 1)
        throw ShapeError("invariant table of size " + std::to_string(table.t()) + " does not fit " +
                         std::to_string(dirs.size() + 1) + " vertices");
}

inline void close_layer(SweepState& s, const SweepLayer& layer, long remaining, std::size_t end) {
    const long dead = layer.count - remaining;
    if (dead < 0)
        throw NotRealizable("intervals starting at " + std::to_string(layer.start) + " grow from " +
                            std::to_string(layer.count) + " to " + std::to_string(remaining) + " at vertex " +
                            std::to_string(end + 1));
    s.finished.add(layer.start, end, static_cast<std::size_t>(dead));
}

inline SweepLayer new_layer(std::size_t start, long count, std::size_t vertex) {
    if (count < 0)
        throw NotRealizable("negative layer count " + std::to_string(count) + " at vertex " + std::to_string(vertex) +
                            " (flag dimensions decrease)");
    return {start, count};
}

}  // namespace detail

/// Interval multiplicities from the invariant table, following the induction
/// over vertices. Throws NotRealizable on any negative count.
inline IntervalMultiset multiplicities_sweep(const InvariantTable& table, const std::vector<Direction>& dirs) {
    detail::check_table_shape(table, dirs);
    const std::size_t t = table.t();
    SweepState s{1, {}, IntervalMultiset(t)};
    s.layers.push_back(detail::new_layer(1, table.n(1, 1), 1));
    for (std::size_t i = 1; i < t; ++i) {
        const std::size_t v = i + 1;  // vertex being entered
        const auto slot_count = [&](std::size_t j) { return table.n(v, j) - table.n(v, j - 1); };
        std::vector<SweepLayer> next;
        if (dirs[i - 1] == Direction::Forward) {
            for (std::size_t j = 1; j <= i; ++j) {
                const auto& layer = s.layers[j - 1];
                const long kept = slot_count(j);
                if (kept < 0) detail::new_layer(layer.start, kept, v);
                detail::close_layer(s, layer, kept, i);
                next.push_back({layer.start, kept});
            }
            next.push_back(detail::new_layer(v, slot_count(v), v));
        } else {
            next.push_back(detail::new_layer(v, slot_count(1), v));
            for (std::size_t j = 1; j <= i; ++j) {
                const auto& layer = s.layers[j - 1];
                const long kept = slot_count(j + 1);
                if (kept < 0) detail::new_layer(layer.start, kept, v);
                detail::close_layer(s, layer, kept, i);
                next.push_back({layer.start, kept});
            }
        }
        s.layers = std::move(next);
        s.vertex = v;
    }
    for (const auto& layer : s.layers) detail::close_layer(s, layer, 0, t);
    return s.finished;
}

/// Interval multiplicities by exact Gaussian elimination on
///     sum_{p<=q} m_pq * table(L_pq) = table,
/// demanding a nonnegative integral solution.
inline IntervalMultiset multiplicities_solve(const InvariantTable& table, const std::vector<Direction>& dirs) {
    detail::check_table_shape(table, dirs);
    const std::size_t t = table.t();
    const Field q = Field::rationals();
    const std::size_t entries = t * (t + 1) / 2;

    std::vector<IntervalMultiset::Key> unknowns;
    for (std::size_t p = 1; p <= t; ++p)
        for (std::size_t e = p; e <= t; ++e) unknowns.push_back({p, e});

    Matrix system(q, entries, unknowns.size() + 1);
    for (std::size_t u = 0; u < unknowns.size(); ++u) {
        const auto col = interval_table(dirs, unknowns[u].first, unknowns[u].second);
        std::size_t r = 0;
        for (const auto& row : col.rows)
            for (long v : row) system(r++, u) = Scalar::from_int(q, v);
    }
    std::size_t r = 0;
    for (const auto& row : table.rows)
        for (long v : row) system(r++, unknowns.size()) = Scalar::from_int(q, v);

    const auto red = rref(system);
    if (red.rank > 0 && red.pivot_cols.back() == unknowns.size())
        throw NotRealizable("table is not a combination of interval tables");
    if (red.rank != unknowns.size()) throw VerificationError("interval tables are linearly dependent");

    IntervalMultiset out(t);
    for (std::size_t u = 0; u < unknowns.size(); ++u) {
        const mpq_class& m = red.reduced(u, unknowns.size()).rational();
        if (m.get_den() != 1)
            throw NotRealizable("non-integral multiplicity " + m.get_str() + " for L" +
                                std::to_string(unknowns[u].first) + std::to_string(unknowns[u].second));
        if (sgn(m) < 0)
            throw NotRealizable("negative multiplicity " + m.get_str() + " for L" + std::to_string(unknowns[u].first) +
                                std::to_string(unknowns[u].second));
        out.add(unknowns[u].first, unknowns[u].second, m.get_num().get_ui());
    }
    return out;
}

inline bool linearly_isomorphic(const Chain& a, const Chain& b) {
    if (a.shape != b.shape || a.field != b.field) return false;
    return invariant_table(a) == invariant_table(b);
}

/// The direct sum of the intervals in `m`, summands in ascending (p, q) order.
inline Chain canonical_sum(const std::vector<Direction>& dirs, const IntervalMultiset& m, const Field& field) {
    if (m.t() != dirs.size() + 1) throw ShapeError("multiset and orientation disagree on t");
    Chain c = zero_chain(dirs, field);
    for (const auto& [key, count] : m.counts()) {
        const Chain piece = interval_chain(dirs, key.first, key.second, field);
        for (std::size_t k = 0; k < count; ++k) c = direct_sum(c, piece);
    }
    return c;
}

struct Decomposition {
    IntervalMultiset multiplicities;
    LinearIso phi;  // transport(c, phi) == canonical_sum(...)
};

/// Explicit decomposition of c into intervals.
///
/// Besides the left flags, the same recursion run from U_t backwards gives a
/// right flag at every vertex. A summand L_pq sits, at vertex i, in the cell
/// (left slot of p, right slot of q) of the two flags. One vector is chosen
/// per summand and vertex inside its cell: new ones where the interval starts,
/// images through forward arrows, preimages (within the cell) through backward
/// arrows. The result is checked by transporting c and comparing with the
/// canonical direct sum.
inline Decomposition canonical_decomposition(const Chain& c) {
    require_valid(c);
    const std::size_t t = c.t();
    const auto& dirs = c.directions();
    const Field& field = c.field;

    const auto left = flags(c);
    const auto right_rev = flags(reversed(c));
    const auto left_order = slot_starts(dirs);
    const auto right_order_rev = slot_starts(reversed(c).directions());

    Decomposition out{multiplicities_sweep(invariant_table(left), dirs), {}};
    const IntervalMultiset& mult = out.multiplicities;

    const auto slot_of = [](const std::vector<std::size_t>& order, std::size_t value) {
        return static_cast<std::size_t>(std::find(order.begin(), order.end(), value) - order.begin()) + 1;
    };
    // C = L_a & R_b and D = L_{a-1} & R_b + L_a & R_{b-1} for the cell of (p, q) at vertex i.
    struct Cell {
        Subspace top, below;
    };
    const auto cell = [&](std::size_t i, std::size_t p, std::size_t q) {
        const Flag& lf = left[i - 1];
        const Flag& rf = right_rev[t - i];
        const std::size_t a = slot_of(left_order[i - 1], p);
        const std::size_t b = slot_of(right_order_rev[t - i], t + 1 - q);
        Subspace top = intersection(lf.at(a), rf.at(b));
        Subspace below = subspace_sum(intersection(lf.at(a - 1), rf.at(b)), intersection(lf.at(a), rf.at(b - 1)));
        return Cell{std::move(top), std::move(below)};
    };
    const auto fail = [](std::size_t p, std::size_t q, std::size_t i, const std::string& what) {
        throw VerificationError("decomposition of L" + std::to_string(p) + std::to_string(q) + " at vertex " +
                                std::to_string(i) + ": " + what);
    };

    // vecs[(p,q)][k] = current column vector of the k-th copy of L_pq
    std::map<IntervalMultiset::Key, std::vector<Matrix>> vecs;
    std::vector<std::map<IntervalMultiset::Key, std::vector<Matrix>>> at_vertex(t);

    for (std::size_t i = 1; i <= t; ++i) {
        // carry live intervals across the arrow between i-1 and i
        if (i > 1) {
            const Matrix& a = c.maps[i - 2];
            std::map<IntervalMultiset::Key, std::vector<Matrix>> carried;
            for (auto& [key, vs] : vecs) {
                if (key.second < i) continue;
                if (dirs[i - 2] == Direction::Forward) {
                    for (const auto& v : vs) carried[key].push_back(a * v);
                } else {
                    const Subspace top = cell(i, key.first, key.second).top;
                    const Matrix gens = top.basis().transpose();
                    for (const auto& v : vs) {
                        auto y = solve(a * gens, v);
                        if (!y) fail(key.first, key.second, i, "no preimage inside its cell");
                        carried[key].push_back(gens * *y);
                    }
                }
            }
            vecs = std::move(carried);
        }
        // open intervals starting at i
        for (const auto& [key, m] : mult.counts()) {
            if (key.first != i) continue;
            const Cell cl = cell(i, key.first, key.second);
            Matrix taken = cl.below.basis();
            std::size_t base = rank(taken);
            auto& vs = vecs[key];
            for (std::size_t r = 0; r < cl.top.dim() && vs.size() < m; ++r) {
                Matrix trial = vstack(taken, cl.top.basis().row(r));
                const std::size_t rk = rank(trial);
                if (rk > base) {
                    taken = std::move(trial);
                    base = rk;
                    vs.push_back(cl.top.vector(r));
                }
            }
            if (vs.size() != m) fail(key.first, key.second, i, "cell is too small");
        }
        at_vertex[i - 1] = vecs;
    }

    for (std::size_t i = 1; i <= t; ++i) {
        const std::size_t d = c.dims()[i - 1];
        Matrix basis(field, d, 0);
        for (const auto& [key, vs] : at_vertex[i - 1])
            for (const auto& v : vs) basis = hstack(basis, v);
        if (basis.cols() != d) throw VerificationError("vertex " + std::to_string(i) + ": wrong number of vectors");
        try {
            out.phi.mats.push_back(inverse(basis));
        } catch (const SingularError&) {
            throw VerificationError("vertex " + std::to_string(i) + ": chosen vectors are dependent");
        }
    }

    if (transport(c, out.phi) != canonical_sum(dirs, mult, field))
        throw VerificationError("transported chain differs from the canonical direct sum");
    return out;
}

}  // namespace chaindecomp
