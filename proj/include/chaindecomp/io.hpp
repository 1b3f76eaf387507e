#pragma once

// Text formats.
//
// Chain file (UTF-8, LF):
//   CHAIN v1
//   field Q                | field GF <p>
//   t <t>
//   dirs <'>'/'<' x (t-1)>
//   dims <d_1> ... <d_t>
//   map <i> <rows> <cols>  (for i = 1..t-1, followed by `rows` lines of
//   ...                     `cols` space-separated entries a, -a or a/b)
//   END
//
// Matrix file: `MATRIX v1`, a field line, `shape <rows> <cols>`, the rows, `END`.

#include <cctype>
#include <cstddef>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "chaindecomp/chain.hpp"
#include "chaindecomp/invariants.hpp"

namespace chaindecomp {

namespace detail {

struct Token {
    std::string text;
    std::size_t column;  // 1-based
};

class LineReader {
  public:
    explicit LineReader(std::string_view text) {
        std::size_t start = 0;
        while (start < text.size()) {
            std::size_t end = text.find('\n', start);
            if (end == std::string_view::npos) end = text.size();
            std::string line(text.substr(start, end - start));
            if (!line.empty() && line.back() == '\r') line.pop_back();
            lines_.push_back(std::move(line));
            start = end + 1;
        }
    }

    std::size_t line_no() const noexcept { return next_; }

    /// Tokens of the next line; throws at end of input.
    std::vector<Token> next(const char* expecting) {
        if (next_ >= lines_.size()) throw ParseError(next_ + 1, 1, std::string("unexpected end of input, expected ") + expecting);
        const std::string& line = lines_[next_++];
        std::vector<Token> toks;
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
            if (i >= line.size()) break;
            std::size_t j = i;
            while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
            toks.push_back({line.substr(i, j - i), i + 1});
            i = j;
        }
        return toks;
    }

    bool only_blank_left() const {
        for (std::size_t k = next_; k < lines_.size(); ++k)
            if (lines_[k].find_first_not_of(" \t") != std::string::npos) return false;
        return true;
    }

  private:
    std::vector<std::string> lines_;
    std::size_t next_ = 0;
};

inline ParseError error_at(const LineReader& in, std::size_t column, const std::string& what) {
    return ParseError(in.line_no(), column, what);
}

inline std::size_t parse_count(const LineReader& in, const Token& tok) {
    if (tok.text.empty() || tok.text.size() > 9)
        throw error_at(in, tok.column, "expected a nonnegative integer, got '" + tok.text + "'");
    for (char ch : tok.text)
        if (!std::isdigit(static_cast<unsigned char>(ch)))
            throw error_at(in, tok.column, "expected a nonnegative integer, got '" + tok.text + "'");
    return std::stoul(tok.text);
}

inline void expect_keyword(const LineReader& in, const std::vector<Token>& toks, std::string_view kw, std::size_t args) {
    if (toks.empty() || toks[0].text != kw)
        throw error_at(in, toks.empty() ? 1 : toks[0].column, "expected '" + std::string(kw) + "'");
    if (toks.size() != args + 1)
        throw error_at(in, toks.back().column,
                       "'" + std::string(kw) + "' takes " + std::to_string(args) + " argument(s), got " +
                           std::to_string(toks.size() - 1));
}

inline bool is_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char ch : s)
        if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
    return true;
}

inline Scalar parse_scalar(const LineReader& in, const Token& tok, const Field& field) {
    std::string_view s = tok.text;
    const bool neg = !s.empty() && s.front() == '-';
    if (neg) s.remove_prefix(1);
    const auto slash = s.find('/');
    const std::string_view num = s.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
    if (!is_digits(num) || !is_digits(den)) throw error_at(in, tok.column, "malformed entry '" + tok.text + "'");
    mpz_class n{std::string(num)}, d{std::string(den)};
    if (d == 0) throw error_at(in, tok.column, "zero denominator in '" + tok.text + "'");
    if (neg) n = -n;
    try {
        return Scalar::from_ratio(field, n, d);
    } catch (const std::domain_error& e) {
        throw error_at(in, tok.column, e.what());
    }
}

inline Field parse_field_line(LineReader& in) {
    const auto toks = in.next("field line");
    if (toks.empty() || toks[0].text != "field") throw error_at(in, 1, "expected 'field'");
    if (toks.size() == 2 && toks[1].text == "Q") return Field::rationals();
    if (toks.size() == 3 && toks[1].text == "GF") {
        const std::size_t p = parse_count(in, toks[2]);
        if (!Field::is_prime(p)) throw error_at(in, toks[2].column, "GF modulus " + toks[2].text + " is not prime");
        return Field::prime(p);
    }
    throw error_at(in, toks.size() > 1 ? toks[1].column : 1, "field must be 'Q' or 'GF <p>'");
}

inline Matrix parse_rows(LineReader& in, std::size_t rows, std::size_t cols, const Field& field) {
    Matrix m(field, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const auto toks = in.next("matrix row");
        if (toks.size() != cols)
            throw error_at(in, toks.empty() ? 1 : toks.back().column,
                           "row has " + std::to_string(toks.size()) + " entries, expected " + std::to_string(cols));
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = parse_scalar(in, toks[j], field);
    }
    return m;
}

inline void expect_end(LineReader& in) {
    const auto toks = in.next("'END'");
    if (toks.size() != 1 || toks[0].text != "END") throw error_at(in, toks.empty() ? 1 : toks[0].column, "expected 'END'");
    if (!in.only_blank_left()) throw ParseError(in.line_no() + 1, 1, "content after 'END'");
}

}  // namespace detail

inline Chain parse_chain(std::string_view text) {
    using namespace detail;
    LineReader in(text);

    auto toks = in.next("'CHAIN v1'");
    if (toks.size() != 2 || toks[0].text != "CHAIN" || toks[1].text != "v1")
        throw error_at(in, 1, "expected header 'CHAIN v1'");
    const Field field = parse_field_line(in);

    toks = in.next("'t'");
    expect_keyword(in, toks, "t", 1);
    const std::size_t t = parse_count(in, toks[1]);
    if (t == 0) throw error_at(in, toks[1].column, "t must be at least 1");

    toks = in.next("'dirs'");
    if (toks.empty() || toks[0].text != "dirs") throw error_at(in, 1, "expected 'dirs'");
    if (toks.size() > 2) throw error_at(in, toks[2].column, "'dirs' takes one string");
    const std::string dir_text = toks.size() == 2 ? toks[1].text : "";
    std::vector<Direction> dirs;
    try {
        dirs = parse_directions(dir_text);
    } catch (const std::invalid_argument& e) {
        throw error_at(in, toks[1].column, e.what());
    }
    if (dirs.size() + 1 != t)
        throw error_at(in, toks.size() == 2 ? toks[1].column : 1,
                       "expected " + std::to_string(t - 1) + " directions, got " + std::to_string(dirs.size()));

    toks = in.next("'dims'");
    expect_keyword(in, toks, "dims", t);
    std::vector<std::size_t> dims;
    for (std::size_t k = 1; k <= t; ++k) dims.push_back(parse_count(in, toks[k]));

    Chain c{{dirs, dims}, {}, field};
    for (std::size_t i = 1; i < t; ++i) {
        toks = in.next("'map'");
        expect_keyword(in, toks, "map", 3);
        if (parse_count(in, toks[1]) != i) throw error_at(in, toks[1].column, "expected map " + std::to_string(i));
        const std::size_t rows = parse_count(in, toks[2]), cols = parse_count(in, toks[3]);
        const auto [er, ec] = c.shape.map_shape(i - 1);
        if (rows != er || cols != ec)
            throw error_at(in, toks[2].column,
                           "map " + std::to_string(i) + " is " + std::to_string(rows) + "x" + std::to_string(cols) +
                               ", dims and direction '" + to_char(dirs[i - 1]) + "' require " + std::to_string(er) +
                               "x" + std::to_string(ec));
        c.maps.push_back(parse_rows(in, rows, cols, field));
    }
    expect_end(in);
    return c;
}

namespace detail {
inline void write_rows(std::ostringstream& os, const Matrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
        os << '\n';
    }
}
}  // namespace detail

inline std::string serialize_chain(const Chain& c) {
    require_valid(c);
    std::ostringstream os;
    os << "CHAIN v1\nfield " << c.field.name() << "\nt " << c.t() << "\ndirs";
    if (!c.directions().empty()) os << ' ' << to_string(c.directions());
    os << "\ndims";
    for (auto d : c.dims()) os << ' ' << d;
    os << '\n';
    for (std::size_t i = 0; i < c.maps.size(); ++i) {
        os << "map " << i + 1 << ' ' << c.maps[i].rows() << ' ' << c.maps[i].cols() << '\n';
        detail::write_rows(os, c.maps[i]);
    }
    os << "END\n";
    return os.str();
}

inline Matrix parse_matrix(std::string_view text) {
    using namespace detail;
    LineReader in(text);
    auto toks = in.next("'MATRIX v1'");
    if (toks.size() != 2 || toks[0].text != "MATRIX" || toks[1].text != "v1")
        throw error_at(in, 1, "expected header 'MATRIX v1'");
    const Field field = parse_field_line(in);
    toks = in.next("'shape'");
    expect_keyword(in, toks, "shape", 2);
    const std::size_t rows = parse_count(in, toks[1]), cols = parse_count(in, toks[2]);
    Matrix m = parse_rows(in, rows, cols, field);
    expect_end(in);
    return m;
}

inline std::string serialize_matrix(const Matrix& m) {
    std::ostringstream os;
    os << "MATRIX v1\nfield " << m.field().name() << "\nshape " << m.rows() << ' ' << m.cols() << '\n';
    detail::write_rows(os, m);
    os << "END\n";
    return os.str();
}

/// One line per vertex: "i: n_i1 ... n_ii".
inline std::string format_table(const InvariantTable& table) {
    std::ostringstream os;
    for (std::size_t i = 1; i <= table.t(); ++i) {
        os << i << ':';
        for (std::size_t j = 1; j <= i; ++j) os << ' ' << table.n(i, j);
        os << '\n';
    }
    return os.str();
}

/// One line per interval: "L p q x m", sorted by (p, q).
inline std::string format_multiset(const IntervalMultiset& m) {
    std::ostringstream os;
    for (const auto& [key, count] : m.counts()) os << "L " << key.first << ' ' << key.second << " x " << count << '\n';
    return os.str();
}

/// Labelled matrix block: "<label> <rows> <cols>" followed by the rows.
inline std::string format_matrix_block(const std::string& label, const Matrix& m) {
    std::ostringstream os;
    os << label << ' ' << m.rows() << ' ' << m.cols() << '\n';
    detail::write_rows(os, m);
    return os.str();
}

}  // namespace chaindecomp
