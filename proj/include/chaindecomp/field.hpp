#pragma once

// Exact scalars: arbitrary-precision rationals and prime-field residues.
//
// A Field is a small value describing the context (Q or GF(p)). A Scalar
// carries enough of its context to check that both operands of a binary
// operation agree; mixing contexts throws ContextMismatch.

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>

#include <gmpxx.h>

#include "chaindecomp/errors.hpp"

namespace chaindecomp {

class Scalar;

class Field {
  public:
    static Field rationals() { return Field{0}; }

    /// GF(p). p must be a prime below 2^31 (checked by trial division).
    static Field prime(std::uint64_t p) {
        if (p >= (std::uint64_t{1} << 31) || !is_prime(p))
            throw std::invalid_argument("GF(" + std::to_string(p) + "): modulus must be a prime below 2^31");
        return Field{static_cast<std::uint32_t>(p)};
    }

    bool is_rational() const noexcept { return modulus_ == 0; }
    std::uint32_t modulus() const noexcept { return modulus_; }
    std::uint32_t characteristic() const noexcept { return modulus_; }

    /// "Q" or "GF <p>", as used in chain file headers.
    std::string name() const { return is_rational() ? "Q" : "GF " + std::to_string(modulus_); }

    friend bool operator==(const Field&, const Field&) = default;

    static bool is_prime(std::uint64_t p) noexcept {
        if (p < 2) return false;
        for (std::uint64_t d = 2; d * d <= p; ++d)
            if (p % d == 0) return false;
        return true;
    }

  private:
    friend class Scalar;
    explicit Field(std::uint32_t modulus) : modulus_(modulus) {}
    std::uint32_t modulus_;
};

inline std::ostream& operator<<(std::ostream& os, const Field& f) { return os << f.name(); }

class Scalar {
  public:
    struct Residue {
        std::uint32_t value;
        std::uint32_t modulus;
        friend bool operator==(const Residue&, const Residue&) = default;
    };

    /// Zero of Q. Prefer the field-aware factories below.
    Scalar() : rep_(mpq_class(0)) {}

    static Scalar zero(const Field& f) { return from_int(f, 0); }
    static Scalar one(const Field& f) { return from_int(f, 1); }

    static Scalar from_int(const Field& f, long v) {
        if (f.is_rational()) return Scalar(mpq_class(v));
        const long p = f.modulus();
        long r = v % p;
        if (r < 0) r += p;
        return Scalar(Residue{static_cast<std::uint32_t>(r), f.modulus()});
    }

    /// num/den mapped into f. Over GF(p) the denominator must be a unit.
    static Scalar from_ratio(const Field& f, const mpz_class& num, const mpz_class& den) {
        if (den == 0) throw std::domain_error("zero denominator");
        if (f.is_rational()) {
            mpq_class q(num, den);
            q.canonicalize();
            return Scalar(q);
        }
        const mpz_class p(f.modulus());
        mpz_class n = num % p;
        if (n < 0) n += p;
        mpz_class d = den % p;
        if (d < 0) d += p;
        if (d == 0) throw std::domain_error("denominator vanishes modulo " + std::to_string(f.modulus()));
        mpz_class dinv;
        mpz_invert(dinv.get_mpz_t(), d.get_mpz_t(), p.get_mpz_t());
        mpz_class r = (n * dinv) % p;
        return Scalar(Residue{static_cast<std::uint32_t>(r.get_ui()), f.modulus()});
    }

    Field field() const {
        if (const auto* r = std::get_if<Residue>(&rep_)) return Field(r->modulus);
        return Field::rationals();
    }

    bool is_zero() const {
        if (const auto* r = std::get_if<Residue>(&rep_)) return r->value == 0;
        return sgn(std::get<mpq_class>(rep_)) == 0;
    }
    bool is_one() const {
        if (const auto* r = std::get_if<Residue>(&rep_)) return r->value == 1;
        return std::get<mpq_class>(rep_) == 1;
    }

    bool is_rational() const noexcept { return std::holds_alternative<mpq_class>(rep_); }
    const mpq_class& rational() const { return std::get<mpq_class>(rep_); }
    std::uint32_t residue() const { return std::get<Residue>(rep_).value; }

    Scalar operator-() const {
        if (const auto* r = std::get_if<Residue>(&rep_))
            return Scalar(Residue{r->value == 0 ? 0 : r->modulus - r->value, r->modulus});
        return Scalar(mpq_class(-std::get<mpq_class>(rep_)));
    }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        if (a.is_rational() && b.is_rational()) return Scalar(mpq_class(a.rational() + b.rational()));
        const auto [x, y, p] = residues(a, b);
        return Scalar(Residue{static_cast<std::uint32_t>((std::uint64_t{x} + y) % p), p});
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) {
        if (a.is_rational() && b.is_rational()) return Scalar(mpq_class(a.rational() - b.rational()));
        const auto [x, y, p] = residues(a, b);
        return Scalar(Residue{static_cast<std::uint32_t>((std::uint64_t{x} + p - y) % p), p});
    }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        if (a.is_rational() && b.is_rational()) return Scalar(mpq_class(a.rational() * b.rational()));
        const auto [x, y, p] = residues(a, b);
        return Scalar(Residue{static_cast<std::uint32_t>((std::uint64_t{x} * y) % p), p});
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    Scalar inverse() const {
        if (is_zero()) throw SingularError("division by zero");
        if (const auto* r = std::get_if<Residue>(&rep_)) {
            // Fermat: x^(p-2)
            std::uint64_t base = r->value, acc = 1, e = r->modulus - 2;
            while (e) {
                if (e & 1) acc = acc * base % r->modulus;
                base = base * base % r->modulus;
                e >>= 1;
            }
            return Scalar(Residue{static_cast<std::uint32_t>(acc), r->modulus});
        }
        return Scalar(mpq_class(1 / std::get<mpq_class>(rep_)));
    }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        if (a.rep_.index() != b.rep_.index()) return false;
        if (a.is_rational()) return a.rational() == b.rational();
        return std::get<Residue>(a.rep_) == std::get<Residue>(b.rep_);
    }

    /// `a`, `-a` or `a/b` for rationals; the residue in [0,p) otherwise.
    std::string to_string() const {
        if (const auto* r = std::get_if<Residue>(&rep_)) return std::to_string(r->value);
        return std::get<mpq_class>(rep_).get_str();
    }

  private:
    explicit Scalar(mpq_class q) : rep_(std::move(q)) {}
    explicit Scalar(Residue r) : rep_(r) {}

    struct ResiduePair {
        std::uint32_t x, y, p;
    };
    static ResiduePair residues(const Scalar& a, const Scalar& b) {
        const auto* ra = std::get_if<Residue>(&a.rep_);
        const auto* rb = std::get_if<Residue>(&b.rep_);
        if (!ra || !rb || ra->modulus != rb->modulus)
            throw ContextMismatch("scalar operands over different fields: " + a.field().name() + " vs " +
                                  b.field().name());
        return {ra->value, rb->value, ra->modulus};
    }

    std::variant<mpq_class, Residue> rep_;
};

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

}  // namespace chaindecomp
