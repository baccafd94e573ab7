#include "apolar/upoly.hpp"

#include <sstream>

namespace apolar {

UPoly UPoly::operator+(const UPoly& o) const {
    std::vector<Fq> v(std::max(c_.size(), o.c_.size()), Fq::zero(field_));
    for (std::size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
    return UPoly(field_, std::move(v));
}

UPoly UPoly::operator-(const UPoly& o) const {
    std::vector<Fq> v(std::max(c_.size(), o.c_.size()), Fq::zero(field_));
    for (std::size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) v[i] -= o.c_[i];
    return UPoly(field_, std::move(v));
}

UPoly UPoly::operator*(const UPoly& o) const {
    if (is_zero() || o.is_zero()) return UPoly(field_);
    std::vector<Fq> v(c_.size() + o.c_.size() - 1, Fq::zero(field_));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
    }
    return UPoly(field_, std::move(v));
}

UPoly UPoly::scaled(const Fq& c) const {
    std::vector<Fq> v = c_;
    for (Fq& x : v) x *= c;
    return UPoly(field_, std::move(v));
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& d) const {
    if (d.is_zero()) throw DomainError("polynomial division by zero");
    std::vector<Fq> rem = c_;
    int dd = d.degree();
    if (degree() < dd) return {UPoly(field_), *this};
    std::vector<Fq> q(static_cast<std::size_t>(degree() - dd) + 1, Fq::zero(field_));
    Fq lcinv = d.lc().inverse();
    for (int i = degree(); i >= dd; --i) {
        Fq c = rem[static_cast<std::size_t>(i)] * lcinv;
        if (c.is_zero()) continue;
        q[static_cast<std::size_t>(i - dd)] = c;
        for (int j = 0; j <= dd; ++j)
            rem[static_cast<std::size_t>(i - dd + j)] -= c * d[j];
    }
    return {UPoly(field_, std::move(q)), UPoly(field_, std::move(rem))};
}

UPoly UPoly::derivative() const {
    if (c_.size() <= 1) return UPoly(field_);
    std::vector<Fq> v(c_.size() - 1, Fq::zero(field_));
    for (std::size_t i = 1; i < c_.size(); ++i)
        v[i - 1] = c_[i] * Fq::of_int(field_, static_cast<long>(i));
    return UPoly(field_, std::move(v));
}

Fq UPoly::eval(const Fq& x) const {
    Fq acc = Fq::zero(field_);
    for (int i = degree(); i >= 0; --i) acc = acc * x + c_[static_cast<std::size_t>(i)];
    return acc;
}

std::string UPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Fq& c = c_[static_cast<std::size_t>(i)];
        if (c.is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0 || !c.is_one()) os << c.str();
        if (i > 0) {
            if (!c.is_one()) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

UPoly gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
        UPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

// Returns (s, t) with s*a + t*b = g, g the monic gcd (stored through *g).
std::pair<UPoly, UPoly> half_xgcd(const UPoly& a, const UPoly& b, UPoly* g) {
    const Field& f = a.field();
    UPoly r0 = a, r1 = b;
    UPoly s0 = UPoly::constant(Fq::one(f)), s1 = UPoly::zero(f);
    UPoly t0 = UPoly::zero(f), t1 = UPoly::constant(Fq::one(f));
    while (!r1.is_zero()) {
        auto [q, r] = r0.divmod(r1);
        r0 = std::move(r1); r1 = std::move(r);
        UPoly s2 = s0 - q * s1; s0 = std::move(s1); s1 = std::move(s2);
        UPoly t2 = t0 - q * t1; t0 = std::move(t1); t1 = std::move(t2);
    }
    Fq c = r0.is_zero() ? Fq::one(f) : r0.lc().inverse();
    if (g) *g = r0.scaled(c);
    return {s0.scaled(c), t0.scaled(c)};
}

UPoly pow_mod(const UPoly& base, const mpz_class& e, const UPoly& mod) {
    UPoly r = UPoly::constant(Fq::one(base.field()));
    UPoly b = base % mod;
    mpz_class k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) r = (r * b) % mod;
        b = (b * b) % mod;
        k >>= 1;
    }
    return r;
}

} // namespace apolar
