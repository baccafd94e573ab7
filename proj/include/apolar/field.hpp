#ifndef APOLAR_FIELD_HPP
#define APOLAR_FIELD_HPP

#include <cstdint>
#include <iosfwd>
#include <string>

#include <gmpxx.h>

#include "apolar/common.hpp"

namespace apolar {

// Base field descriptor: the rationals or a prime field F_p with p of
// machine-word size.
class Field {
public:
    static Field rationals() { return Field(0); }
    static Field prime(std::uint64_t p);

    bool is_rationals() const { return p_ == 0; }
    bool is_prime_field() const { return p_ != 0; }
    std::uint64_t characteristic() const { return p_; }

    bool operator==(const Field& o) const { return p_ == o.p_; }
    bool operator!=(const Field& o) const { return p_ != o.p_; }

    std::string str() const;

private:
    explicit Field(std::uint64_t p) : p_(p) {}
    std::uint64_t p_; // 0 encodes the rationals
};

// An exact field element.  Rationals are kept in lowest terms with positive
// denominator (mpq canonical form); prime-field values as representatives in
// [0, p).  Arithmetic between elements of different fields is a DomainError.
class Fq {
public:
    Fq() : field_(Field::rationals()) {}

    static Fq zero(const Field& f) { return Fq(f); }
    static Fq one(const Field& f) { return of_int(f, 1); }
    static Fq of_int(const Field& f, long n);
    static Fq of_mpz(const Field& f, const mpz_class& n);
    static Fq of_mpq(const Field& f, const mpq_class& q);
    // Parses "n", "-n" or "a/b" (rationals), an integer residue mod p otherwise.
    static Fq parse(const Field& f, const std::string& text);

    const Field& field() const { return field_; }

    // Same-field constructors, used by generic code that only holds elements.
    Fq zero() const { return Fq(field_); }
    Fq one() const { return of_int(field_, 1); }
    Fq from_int(const mpz_class& n) const { return of_mpz(field_, n); }

    bool is_zero() const;
    bool is_one() const { return *this == one(); }

    Fq operator-() const;
    Fq operator+(const Fq& o) const;
    Fq operator-(const Fq& o) const;
    Fq operator*(const Fq& o) const;
    Fq operator/(const Fq& o) const;
    Fq& operator+=(const Fq& o) { return *this = *this + o; }
    Fq& operator-=(const Fq& o) { return *this = *this - o; }
    Fq& operator*=(const Fq& o) { return *this = *this * o; }
    Fq& operator/=(const Fq& o) { return *this = *this / o; }

    Fq inverse() const;
    Fq pow(std::uint64_t k) const;

    bool operator==(const Fq& o) const;
    bool operator!=(const Fq& o) const { return !(*this == o); }

    // Rational value (rationals only).
    const mpq_class& rat() const;
    // Canonical residue (prime fields only).
    std::uint64_t residue() const;

    std::string str() const;

private:
    explicit Fq(const Field& f) : field_(f) {}

    Field field_;
    mpq_class rat_;          // used when field_ is the rationals
    std::uint64_t res_ = 0;  // used when field_ is a prime field
};

std::ostream& operator<<(std::ostream& os, const Fq& x);

// Residue helpers shared with the factorization code.
std::uint64_t mod_add(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t mod_sub(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t mod_pow(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t mod_inv(std::uint64_t a, std::uint64_t p);

} // namespace apolar

#endif
