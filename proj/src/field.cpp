#include "apolar/field.hpp"

#include <ostream>

namespace apolar {

namespace {

bool is_probable_prime(std::uint64_t p) {
    mpz_class z(static_cast<unsigned long>(p));
    return mpz_probab_prime_p(z.get_mpz_t(), 32) != 0;
}

} // namespace

Field Field::prime(std::uint64_t p) {
    if (p < 2 || p >= (std::uint64_t(1) << 62) || !is_probable_prime(p))
        throw DomainError("field modulus must be a machine-word prime: " + std::to_string(p));
    return Field(p);
}

std::string Field::str() const {
    return is_rationals() ? "Q" : "F" + std::to_string(p_);
}

std::uint64_t mod_add(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    std::uint64_t s = a + b;
    return s >= p ? s - p : s;
}

std::uint64_t mod_sub(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return a >= b ? a - b : a + p - b;
}

std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t mod_pow(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mod_mul(r, a, p);
        a = mod_mul(a, a, p);
        e >>= 1;
    }
    return r;
}

std::uint64_t mod_inv(std::uint64_t a, std::uint64_t p) {
    if (a % p == 0) throw DomainError("division by zero in F" + std::to_string(p));
    std::int64_t t = 0, newt = 1;
    std::int64_t r = static_cast<std::int64_t>(p), newr = static_cast<std::int64_t>(a % p);
    while (newr != 0) {
        std::int64_t q = r / newr;
        t -= q * newt; std::swap(t, newt);
        r -= q * newr; std::swap(r, newr);
    }
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(t);
}

Fq Fq::of_int(const Field& f, long n) {
    Fq x(f);
    if (f.is_rationals()) {
        x.rat_ = n;
    } else {
        std::uint64_t p = f.characteristic();
        long m = n % static_cast<long>(p);
        if (m < 0) m += static_cast<long>(p);
        x.res_ = static_cast<std::uint64_t>(m);
    }
    return x;
}

Fq Fq::of_mpz(const Field& f, const mpz_class& n) {
    Fq x(f);
    if (f.is_rationals()) {
        x.rat_ = n;
    } else {
        mpz_class p(static_cast<unsigned long>(f.characteristic()));
        mpz_class m = n % p;
        if (m < 0) m += p;
        x.res_ = m.get_ui();
    }
    return x;
}

Fq Fq::of_mpq(const Field& f, const mpq_class& q) {
    if (f.is_rationals()) {
        Fq x(f);
        x.rat_ = q;
        x.rat_.canonicalize();
        return x;
    }
    Fq num = of_mpz(f, q.get_num());
    Fq den = of_mpz(f, q.get_den());
    return num / den;
}

Fq Fq::parse(const Field& f, const std::string& text) {
    try {
        mpq_class q(text);
        q.canonicalize();
        return of_mpq(f, q);
    } catch (const std::invalid_argument&) {
        throw ParseError("bad scalar literal: '" + text + "'");
    }
}

bool Fq::is_zero() const {
    return field_.is_rationals() ? rat_ == 0 : res_ == 0;
}

Fq Fq::operator-() const {
    Fq x(field_);
    if (field_.is_rationals())
        x.rat_ = -rat_;
    else
        x.res_ = res_ == 0 ? 0 : field_.characteristic() - res_;
    return x;
}

namespace {
void check_same(const Field& a, const Field& b) {
    if (a != b) throw DomainError("mixed-field arithmetic: " + a.str() + " vs " + b.str());
}
} // namespace

Fq Fq::operator+(const Fq& o) const {
    check_same(field_, o.field_);
    Fq x(field_);
    if (field_.is_rationals())
        x.rat_ = rat_ + o.rat_;
    else
        x.res_ = mod_add(res_, o.res_, field_.characteristic());
    return x;
}

Fq Fq::operator-(const Fq& o) const {
    check_same(field_, o.field_);
    Fq x(field_);
    if (field_.is_rationals())
        x.rat_ = rat_ - o.rat_;
    else
        x.res_ = mod_sub(res_, o.res_, field_.characteristic());
    return x;
}

Fq Fq::operator*(const Fq& o) const {
    check_same(field_, o.field_);
    Fq x(field_);
    if (field_.is_rationals())
        x.rat_ = rat_ * o.rat_;
    else
        x.res_ = mod_mul(res_, o.res_, field_.characteristic());
    return x;
}

Fq Fq::inverse() const {
    Fq x(field_);
    if (field_.is_rationals()) {
        if (rat_ == 0) throw DomainError("division by zero in Q");
        x.rat_ = 1 / rat_;
    } else {
        x.res_ = mod_inv(res_, field_.characteristic());
    }
    return x;
}

Fq Fq::operator/(const Fq& o) const { return *this * o.inverse(); }

Fq Fq::pow(std::uint64_t k) const {
    Fq r = one();
    Fq b = *this;
    while (k) {
        if (k & 1) r *= b;
        b *= b;
        k >>= 1;
    }
    return r;
}

bool Fq::operator==(const Fq& o) const {
    if (field_ != o.field_) return false;
    return field_.is_rationals() ? rat_ == o.rat_ : res_ == o.res_;
}

const mpq_class& Fq::rat() const {
    if (!field_.is_rationals()) throw DomainError("rat() on a prime-field element");
    return rat_;
}

std::uint64_t Fq::residue() const {
    if (!field_.is_prime_field()) throw DomainError("residue() on a rational");
    return res_;
}

std::string Fq::str() const {
    return field_.is_rationals() ? rat_.get_str() : std::to_string(res_);
}

std::ostream& operator<<(std::ostream& os, const Fq& x) { return os << x.str(); }

} // namespace apolar
