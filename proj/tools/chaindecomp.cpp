// chaindecomp: invariants, interval decompositions and canonical forms of
// chains of linear mappings stored in chain files.
//
// Exit codes: 0 success (or isomorphic), 1 not isomorphic, 2 usage error,
// 3 malformed input, 4 internal verification failure.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chaindecomp/chaindecomp.hpp"

namespace cd = chaindecomp;

namespace {

enum Exit { kOk = 0, kNotIso = 1, kUsage = 2, kBadInput = 3, kInternal = 4 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(path + ": cannot open");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

cd::Chain load_chain(const std::string& path) {
    try {
        return cd::parse_chain(read_file(path));
    } catch (const cd::ParseError& e) {
        throw InputError(path + ":" + e.what());
    }
}

bool color() {
    const char* v = std::getenv("CHAINDECOMP_COLOR");
    return v && std::string(v) == "1";
}

std::string paint(const std::string& s, const char* code) { return color() ? std::string("\033[") + code + "m" + s + "\033[0m" : s; }

cd::Field parse_field_option(const std::string& s) {
    if (s == "Q") return cd::Field::rationals();
    std::string digits;
    if (s.rfind("GF", 0) == 0) {
        for (char ch : s.substr(2))
            if (ch != '(' && ch != ')' && ch != ' ') digits += ch;
    }
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 10)
        throw UsageError("unknown field '" + s + "' (use Q or GF<p>)");
    try {
        return cd::Field::prime(std::stoull(digits));
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

int run_invariants(const std::string& file) {
    std::cout << cd::format_table(cd::invariant_table(load_chain(file)));
    return kOk;
}

int run_decompose(const std::string& file, const std::string& method, bool witness) {
    const cd::Chain c = load_chain(file);
    const auto table = cd::invariant_table(c);
    cd::IntervalMultiset m;
    if (method == "sweep") {
        m = cd::multiplicities_sweep(table, c.directions());
    } else if (method == "solve") {
        m = cd::multiplicities_solve(table, c.directions());
    } else {
        m = cd::multiplicities_sweep(table, c.directions());
        if (cd::multiplicities_solve(table, c.directions()) != m)
            throw cd::VerificationError("sweep and solve disagree");
    }
    std::cout << cd::format_multiset(m);
    if (witness) {
        const auto dec = cd::canonical_decomposition(c);
        if (dec.multiplicities != m) throw cd::VerificationError("witness multiplicities differ");
        for (std::size_t i = 0; i < dec.phi.mats.size(); ++i)
            std::cout << cd::format_matrix_block("phi " + std::to_string(i + 1), dec.phi.mats[i]);
        if (cd::transport(c, dec.phi) != cd::canonical_sum(c.directions(), m, c.field))
            throw cd::VerificationError("witness does not transport to the canonical sum");
        std::cout << "witness verified\n";
    }
    return kOk;
}

int run_isocheck(const std::string& fa, const std::string& fb) {
    const cd::Chain a = load_chain(fa), b = load_chain(fb);
    if (cd::linearly_isomorphic(a, b)) {
        std::cout << paint("isomorphic", "32") << '\n';
        return kOk;
    }
    std::cout << paint("not isomorphic", "31") << '\n';
    if (a.field != b.field) std::cout << "field: " << a.field << " vs " << b.field << '\n';
    if (a.directions() != b.directions())
        std::cout << "dirs: " << cd::to_string(a.directions()) << " vs " << cd::to_string(b.directions()) << '\n';
    if (a.dims() != b.dims()) {
        std::cout << "dims:";
        for (auto d : a.dims()) std::cout << ' ' << d;
        std::cout << " vs";
        for (auto d : b.dims()) std::cout << ' ' << d;
        std::cout << '\n';
    }
    if (a.t() == b.t()) {
        const auto ta = cd::invariant_table(a), tb = cd::invariant_table(b);
        for (std::size_t i = 1; i <= ta.t(); ++i)
            for (std::size_t j = 1; j <= i; ++j)
                if (ta.n(i, j) != tb.n(i, j))
                    std::cout << "n[" << i << "][" << j << "]: " << ta.n(i, j) << " vs " << tb.n(i, j) << '\n';
    }
    return kNotIso;
}

int run_canon3(const std::string& file) {
    const cd::Chain c = load_chain(file);
    if (c.t() != 3 || cd::to_string(c.directions()) != "><")
        throw UsageError("canon3 needs t=3 with dirs \"><\", got t=" + std::to_string(c.t()) + " dirs \"" +
                         cd::to_string(c.directions()) + "\"");
    const auto canon = cd::reduce_t3(c);
    std::cout << "p " << canon.p << "\nq " << canon.q << "\nr " << canon.r << '\n';
    std::cout << cd::format_matrix_block("N1", canon.n1) << cd::format_matrix_block("N2", canon.n2);
    std::cout << cd::format_matrix_block("S1", canon.s1) << cd::format_matrix_block("S2", canon.s2)
              << cd::format_matrix_block("S3", canon.s3);
    const auto m = cd::read_intervals_t3(canon, c.dims()[0], c.dims()[1], c.dims()[2]);
    if (m != cd::multiplicities_sweep(cd::invariant_table(c), c.directions()))
        throw cd::VerificationError("canonical form and invariant table disagree");
    std::cout << cd::format_multiset(m);
    return kOk;
}

int run_gadget(const std::string& matrix_file) {
    cd::Matrix x;
    try {
        x = cd::parse_matrix(read_file(matrix_file));
    } catch (const cd::ParseError& e) {
        throw InputError(matrix_file + ":" + e.what());
    }
    try {
        std::cout << cd::serialize_chain(cd::gadget_chain(x));
    } catch (const std::invalid_argument& e) {
        throw InputError(matrix_file + ": " + e.what());
    }
    return kOk;
}

int run_gen(std::size_t t, const std::string& dirs_text, const std::vector<std::size_t>& dims,
            const std::string& field_text, std::uint64_t seed) {
    std::vector<cd::Direction> dirs;
    try {
        dirs = cd::parse_directions(dirs_text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (t == 0 || dirs.size() + 1 != t) throw UsageError("--dirs must have t-1 = " + std::to_string(t ? t - 1 : 0) + " arrows");
    if (dims.size() != t) throw UsageError("--dims must list t = " + std::to_string(t) + " dimensions");
    const cd::Field field = parse_field_option(field_text);
    std::cout << cd::serialize_chain(cd::random_chain({dirs, dims}, field, seed));
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Invariants and interval decompositions of chains of linear mappings"};
    app.require_subcommand(1);

    std::string file, file_b, method = "sweep", matrix_file, dirs_text, field_text = "Q";
    bool witness = false;
    std::size_t t = 0;
    std::vector<std::size_t> dims;
    std::uint64_t seed = 0;

    auto* inv = app.add_subcommand("invariants", "print the invariant table n_ij");
    inv->add_option("file", file, "chain file")->required();

    auto* dec = app.add_subcommand("decompose", "print interval multiplicities as 'L p q x m'");
    dec->add_option("file", file, "chain file")->required();
    dec->add_option("--method", method, "sweep, solve or both")->check(CLI::IsMember({"sweep", "solve", "both"}));
    dec->add_flag("--witness", witness, "also print the isomorphism phi onto the direct sum and re-verify it");

    auto* iso = app.add_subcommand("isocheck", "exit 0 if the chains are linearly isomorphic, 1 otherwise");
    iso->add_option("a", file, "first chain file")->required();
    iso->add_option("b", file_b, "second chain file")->required();

    auto* c3 = app.add_subcommand("canon3", "canonical form of a chain U1 -> U2 <- U3");
    c3->add_option("file", file, "chain file")->required();

    auto* gad = app.add_subcommand("gadget", "emit the chain (M, N_X) for the matrix X");
    gad->add_option("--matrix", matrix_file, "matrix file holding X")->required();

    auto* gen = app.add_subcommand("gen", "emit a random chain");
    gen->add_option("--t", t, "number of vertices")->required();
    gen->add_option("--dirs", dirs_text, "arrow pattern such as '><'")->required();
    gen->add_option("--dims", dims, "vertex dimensions")->required()->delimiter(',');
    gen->add_option("--field", field_text, "Q or GF<p>");
    gen->add_option("--seed", seed, "random seed")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*inv) return run_invariants(file);
        if (*dec) return run_decompose(file, method, witness);
        if (*iso) return run_isocheck(file, file_b);
        if (*c3) return run_canon3(file);
        if (*gad) return run_gadget(matrix_file);
        if (*gen) return run_gen(t, dirs_text, dims, field_text, seed);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kBadInput;
    } catch (const cd::VerificationError& e) {
        std::cerr << "internal verification failure: " << e.what() << '\n';
        return kInternal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInternal;
    }
    return kUsage;
}
