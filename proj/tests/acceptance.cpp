// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Sample sizes and time limits are fixed below.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <tuple>

#include "chaindecomp/chaindecomp.hpp"
#include "support.hpp"

using namespace chaindecomp;
namespace t = chaindecomp::testing;

namespace {

constexpr double kExampleSeconds = 1.0;
constexpr double kRoundTripSeconds = 60.0;
constexpr int kRoundTrips = 500;
constexpr int kTransportChains = 500;
constexpr int kRealizable = 500;
constexpr int kCorrupted = 50;
constexpr int kCanonT3 = 300;
constexpr int kWitness = 200;
constexpr int kGadgetTransports = 100;
constexpr int kGadgetPerturbed = 20;

const Field Q = Field::rationals();

struct Failure {
    std::string what;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw Failure{what};
}

InvariantTable table_of_multiset(const std::vector<Direction>& dirs, const IntervalMultiset& m) {
    InvariantTable tab = InvariantTable::zeros(dirs.size() + 1);
    for (const auto& [key, count] : m.counts())
        for (std::size_t k = 0; k < count; ++k) tab = tab + interval_table(dirs, key.first, key.second);
    return tab;
}

std::string criterion1() {
    const auto start = std::chrono::steady_clock::now();
    const Chain c = t::example_t3();
    const InvariantTable table = invariant_table(c);
    require(table == InvariantTable{{{5}, {3, 6}, {1, 3, 5}}}, "table is\n" + format_table(table));
    const auto sweep = multiplicities_sweep(table, c.directions());
    const auto solve = multiplicities_solve(table, c.directions());
    require(sweep == t::example_t3_multiset(), "sweep gave\n" + format_multiset(sweep));
    require(solve == t::example_t3_multiset(), "solve gave\n" + format_multiset(solve));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    require(secs < kExampleSeconds, "took " + std::to_string(secs) + " s");
    return "example table and multiset match in " + std::to_string(secs) + " s";
}

std::string criterion2() {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(2002);
    int done = 0;
    while (done < kRoundTrips) {
        for (std::size_t tv = 2; tv <= 5 && done < kRoundTrips; ++tv)
            for (const auto& dirs : all_orientations(tv)) {
                if (done >= kRoundTrips) break;
                const Field f = done % 2 ? Field::prime(2) : Q;
                const IntervalMultiset m = t::random_multiset(tv, rng);
                const Chain sum = canonical_sum(dirs, m, f);
                const Chain moved = transport(sum, random_iso(sum.shape, f, rng));
                const auto table = invariant_table(moved);
                require(multiplicities_sweep(table, dirs) == m, "sweep failed on dirs " + to_string(dirs));
                require(multiplicities_solve(table, dirs) == m, "solve failed on dirs " + to_string(dirs));
                ++done;
            }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    require(secs < kRoundTripSeconds, "took " + std::to_string(secs) + " s");
    return std::to_string(done) + " multisets recovered by sweep and solve in " + std::to_string(secs) + " s";
}

std::string criterion3() {
    std::mt19937_64 rng(3003);
    for (int trial = 0; trial < kTransportChains; ++trial) {
        const Field f = trial % 2 ? Field::prime(3) : Q;
        const Chain c = t::random_structured_chain(1 + trial % 5, 4, f, rng);
        const LinearIso phi = random_iso(c.shape, f, rng);
        const Chain moved = transport(c, phi);
        require(invariant_table(moved) == invariant_table(c), "table changed under transport");
        const auto before = flags(c), after = flags(moved);
        for (std::size_t i = 0; i < before.size(); ++i)
            for (std::size_t j = 0; j < before[i].members.size(); ++j)
                require(after[i].members[j] == map_subspace(phi.mats[i], before[i].members[j]),
                        "flag member U_" + std::to_string(i + 1) + std::to_string(j + 1) + " not equivariant");
        const Chain other = random_chain({c.directions(), c.dims()}, f, rng, default_pool(f));
        require(invariant_table(direct_sum(c, other)) == invariant_table(c) + invariant_table(other),
                "table not additive");
    }
    return std::to_string(kTransportChains) + " chains: invariance, equivariance, additivity";
}

bool rejects(const InvariantTable& tab, const std::vector<Direction>& dirs) {
    int rejected = 0;
    try {
        multiplicities_sweep(tab, dirs);
    } catch (const NotRealizable&) {
        ++rejected;
    }
    try {
        multiplicities_solve(tab, dirs);
    } catch (const NotRealizable&) {
        ++rejected;
    }
    return rejected == 2;
}

std::string criterion4() {
    std::mt19937_64 rng(4004);
    for (int trial = 0; trial < kRealizable; ++trial) {
        const Field f = trial % 2 ? Field::prime(2) : Q;
        const Chain c = t::random_structured_chain(1 + trial % 5, 5, f, rng);
        const auto table = invariant_table(c);
        require(multiplicities_sweep(table, c.directions()) == multiplicities_solve(table, c.directions()),
                "sweep and solve disagree");
    }

    int monotone = 0, deficit = 0;
    while (monotone + deficit < kCorrupted) {
        const std::size_t tv = 2 + (monotone + deficit) % 4;
        const auto dirs = t::random_dirs(tv, rng);
        const IntervalMultiset m = t::random_multiset(tv, rng);
        InvariantTable tab = table_of_multiset(dirs, m);
        if ((monotone + deficit) % 2 == 0) {
            // n_ij > n_i,j+1
            const std::size_t i = std::uniform_int_distribution<std::size_t>(2, tv)(rng);
            const std::size_t j = std::uniform_int_distribution<std::size_t>(1, i - 1)(rng);
            tab.rows[i - 1][j - 1] = tab.rows[i - 1][j] + 1;
            require(rejects(tab, dirs), "monotonicity violation accepted:\n" + format_table(tab));
            ++monotone;
        } else {
            // remove an interval that is not there: one count becomes -1
            std::vector<std::pair<std::size_t, std::size_t>> absent;
            for (std::size_t p = 1; p <= tv; ++p)
                for (std::size_t q = p; q <= tv; ++q)
                    if (m.count(p, q) == 0) absent.emplace_back(p, q);
            if (absent.empty()) continue;
            const auto [p, q] = absent[std::uniform_int_distribution<std::size_t>(0, absent.size() - 1)(rng)];
            const InvariantTable l = interval_table(dirs, p, q);
            for (std::size_t i = 0; i < tv; ++i)
                for (std::size_t j = 0; j <= i; ++j) tab.rows[i][j] -= l.rows[i][j];
            require(rejects(tab, dirs), "deficit violation accepted:\n" + format_table(tab));
            ++deficit;
        }
    }
    return std::to_string(kRealizable) + " realizable tables agree; " + std::to_string(monotone) + " monotonicity and " +
           std::to_string(deficit) + " deficit corruptions rejected by both";
}

std::string criterion5() {
    std::mt19937_64 rng(5005);
    const auto fb = parse_directions("><");
    std::uniform_int_distribution<std::size_t> dim(0, 5);
    for (int trial = 0; trial < kCanonT3; ++trial) {
        const Field f = trial % 2 ? Field::prime(5) : Q;
        Chain c;
        if (trial % 3 == 0) {
            c = random_chain({fb, {dim(rng), dim(rng), dim(rng)}}, f, rng, default_pool(f));
        } else {
            const Chain sum = canonical_sum(fb, t::random_multiset(3, rng), f);
            c = transport(sum, random_iso(sum.shape, f, rng));
        }
        const auto canon = reduce_t3(c);
        require(inverse(canon.s2) * c.maps[0] * canon.s1 == canon.n1, "S2^-1 M1 S1 != N1");
        require(inverse(canon.s2) * c.maps[1] * canon.s3 == canon.n2, "S2^-1 M2 S3 != N2");
        const auto m = read_intervals_t3(canon, c.dims()[0], c.dims()[1], c.dims()[2]);
        require(m == multiplicities_sweep(invariant_table(c), fb), "read_intervals_t3 differs from the sweep");
        const auto moved = reduce_t3(transport(c, random_iso(c.shape, f, rng)));
        require(std::tie(moved.p, moved.q, moved.r) == std::tie(canon.p, canon.q, canon.r), "(p,q,r) moved");
    }
    return std::to_string(kCanonT3) + " chains over GF(5) and Q reduced exactly";
}

std::string criterion6() {
    std::mt19937_64 rng(6006);
    for (int trial = 0; trial < kWitness; ++trial) {
        const Field f = trial % 3 == 0 ? Q : Field::prime(trial % 3 == 1 ? 2 : 3);
        const Chain c = t::random_structured_chain(1 + trial % 4, 5, f, rng);
        try {
            const auto dec = canonical_decomposition(c);
            require(transport(c, dec.phi) == canonical_sum(c.directions(), dec.multiplicities, f), "witness wrong");
        } catch (const VerificationError& e) {
            throw Failure{e.what()};
        }
    }
    return std::to_string(kWitness) + " witnesses self-verified";
}

std::string criterion7() {
    std::mt19937_64 rng(7007);
    for (int trial = 0; trial < kGadgetTransports; ++trial) {
        const std::size_t m = 1 + trial % 4;
        const Matrix x = random_matrix(m, m, Q, rng, default_pool(Q));
        const Matrix c = t::random_orthogonal(m, rng);
        require(is_orthogonal(c), "generator produced a non-orthogonal matrix");
        const Matrix y = inverse(c) * x * c;
        require(verify_transport(x, y, c), "verify_transport rejected a constructed pair");

        const Matrix c3 = extract_similarity(repeat_diag(c, 3), repeat_diag(c, 3), repeat_diag(c, 2), x, y);
        require(c3 == c && c3 * y == x * c3, "extract_similarity returned the wrong C3");

        Matrix z = random_matrix(m, m, Q, rng, default_pool(Q));
        if (z == x) z(0, 0) += Scalar::one(Q);
        const Chain gx = gadget_chain(x), gz = gadget_chain(z);
        require(invariant_table(gx) == invariant_table(gz) && linearly_isomorphic(gx, gz),
                "gadget chains of distinct matrices are not linearly isomorphic");
    }

    int rejected = 0;
    for (int trial = 0; trial < kGadgetPerturbed; ++trial) {
        const std::size_t m = 1 + trial % 4;
        const Matrix x = random_matrix(m, m, Q, rng, default_pool(Q));
        const Matrix c = t::random_orthogonal(m, rng);
        Matrix y = inverse(c) * x * c;
        Matrix s1 = repeat_diag(c, 3), s2 = s1, s3 = repeat_diag(c, 2);
        const std::size_t i = std::uniform_int_distribution<std::size_t>(0, m - 1)(rng);
        switch (trial % 3) {
            case 0: y(i, i) += Scalar::one(Q); break;
            case 1: s3(i, i) += Scalar::one(Q); break;
            default: s2(3 * m - 1 - i, i) += Scalar::one(Q); break;
        }
        try {
            extract_similarity(s1, s2, s3, x, y);
        } catch (const GadgetCheckError&) {
            ++rejected;
        }
    }
    require(rejected == kGadgetPerturbed,
            std::to_string(kGadgetPerturbed - rejected) + " perturbed inputs were accepted");
    return std::to_string(kGadgetTransports) + " transports verified, " + std::to_string(rejected) +
           " perturbations rejected";
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<std::string()>>> criteria = {
        {"1 worked t=3 example", criterion1},
        {"2 random multiset round trips", criterion2},
        {"3 transport invariance, equivariance, additivity", criterion3},
        {"4 sweep vs solve, realizability", criterion4},
        {"5 t=3 canonical form", criterion5},
        {"6 decomposition witness", criterion6},
        {"7 unitary similarity gadget", criterion7},
    };
    int failures = 0;
    for (const auto& [name, run] : criteria) {
        try {
            const std::string detail = run();
            std::printf("[PASS] %s: %s\n", name, detail.c_str());
        } catch (const Failure& f) {
            ++failures;
            std::printf("[FAIL] %s: %s\n", name, f.what.c_str());
        } catch (const std::exception& e) {
            ++failures;
            std::printf("[FAIL] %s: unexpected %s\n", name, e.what());
        }
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
