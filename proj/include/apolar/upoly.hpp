#ifndef APOLAR_UPOLY_HPP
#define APOLAR_UPOLY_HPP

#include <string>
#include <utility>
#include <vector>

#include "apolar/field.hpp"

namespace apolar {

// Dense univariate polynomial over Fq, coefficients stored low to high with
// no trailing zeros.  The zero polynomial has an empty coefficient list and
// degree -1.
class UPoly {
public:
    explicit UPoly(const Field& f) : field_(f) {}
    UPoly(const Field& f, std::vector<Fq> coeffs) : field_(f), c_(std::move(coeffs)) { trim(); }

    static UPoly zero(const Field& f) { return UPoly(f); }
    static UPoly constant(const Fq& c) { return UPoly(c.field(), {c}); }
    static UPoly x(const Field& f) { return UPoly(f, {Fq::zero(f), Fq::one(f)}); }
    static UPoly monomial(const Field& f, int deg, const Fq& c) {
        std::vector<Fq> v(static_cast<std::size_t>(deg) + 1, Fq::zero(f));
        v.back() = c;
        return UPoly(f, std::move(v));
    }

    const Field& field() const { return field_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }

    const Fq& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
    Fq coeff(int i) const { return i >= 0 && i <= degree() ? c_[static_cast<std::size_t>(i)] : Fq::zero(field_); }
    const Fq& lc() const { return c_.back(); }
    const std::vector<Fq>& coeffs() const { return c_; }

    UPoly operator+(const UPoly& o) const;
    UPoly operator-(const UPoly& o) const;
    UPoly operator*(const UPoly& o) const;
    UPoly scaled(const Fq& c) const;
    UPoly monic() const { return is_zero() ? *this : scaled(lc().inverse()); }

    // Quotient and remainder; divisor must be nonzero.
    std::pair<UPoly, UPoly> divmod(const UPoly& d) const;
    UPoly operator%(const UPoly& d) const { return divmod(d).second; }
    UPoly operator/(const UPoly& d) const { return divmod(d).first; }

    UPoly derivative() const;
    Fq eval(const Fq& x) const;

    bool operator==(const UPoly& o) const { return c_ == o.c_ && field_ == o.field_; }
    bool operator!=(const UPoly& o) const { return !(*this == o); }

    std::string str(const std::string& var = "t") const;

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    Field field_;
    std::vector<Fq> c_;
};

UPoly gcd(UPoly a, UPoly b);                       // monic gcd
std::pair<UPoly, UPoly> half_xgcd(const UPoly& a, const UPoly& b, UPoly* g);
UPoly pow_mod(const UPoly& base, const mpz_class& e, const UPoly& mod);

// p(a) evaluated by Horner with a user-supplied multiply-and-add in any
// K-algebra: elements are coordinate vectors, mul(x,y) multiplies, and the
// identity coordinates give constants.
template <class MulFn>
std::vector<Fq> eval_in_algebra(const UPoly& p, const std::vector<Fq>& a,
                                const std::vector<Fq>& unit, MulFn mul) {
    std::vector<Fq> acc(a.size(), Fq::zero(p.field()));
    for (int i = p.degree(); i >= 0; --i) {
        acc = mul(acc, a);
        const Fq& c = p[i];
        for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += c * unit[j];
    }
    return acc;
}

} // namespace apolar

#endif
