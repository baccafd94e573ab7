#ifndef APOLAR_MPOLY_HPP
#define APOLAR_MPOLY_HPP

#include <map>
#include <string>
#include <vector>

#include "apolar/forms.hpp"

namespace apolar {

// Multivariate polynomial in parameters t1..tm over Fq.  Satisfies the same
// scalar interface as Fq (zero/one/from_int/is_zero and ring arithmetic), so
// forms and matrices instantiate over it.
class MPoly {
public:
    MPoly() : field_(Field::rationals()), nparams_(0) {}
    MPoly(const Field& K, int nparams) : field_(K), nparams_(nparams) {}

    static MPoly constant(const Field& K, int nparams, const Fq& c) {
        MPoly p(K, nparams);
        p.add_term(Expo(static_cast<std::size_t>(nparams), 0), c);
        return p;
    }
    static MPoly var(const Field& K, int nparams, int i) {
        MPoly p(K, nparams);
        Expo e(static_cast<std::size_t>(nparams), 0);
        e[static_cast<std::size_t>(i)] = 1;
        p.add_term(e, Fq::one(K));
        return p;
    }

    const Field& field() const { return field_; }
    int nparams() const { return nparams_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && expo_degree(terms_.begin()->first) == 0);
    }
    Fq constant_value() const {
        if (is_zero()) return Fq::zero(field_);
        if (!is_constant()) throw DomainError("MPoly: not a constant");
        return terms_.begin()->second;
    }
    const std::map<Expo, Fq, ExpoLexDesc>& terms() const { return terms_; }

    // scalar-concept methods
    MPoly zero() const { return MPoly(field_, nparams_); }
    MPoly one() const { return constant(field_, nparams_, Fq::one(field_)); }
    MPoly from_int(const mpz_class& n) const { return constant(field_, nparams_, Fq::of_mpz(field_, n)); }
    bool is_one() const {
        return terms_.size() == 1 && expo_degree(terms_.begin()->first) == 0 && terms_.begin()->second.is_one();
    }

    void add_term(const Expo& e, const Fq& c);
    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator*(const MPoly& o) const;
    MPoly operator-() const;
    bool operator==(const MPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const MPoly& o) const { return !(*this == o); }
    MPoly scaled(const Fq& c) const;

    int degree_in(int var) const;
    int total_degree() const;
    // coefficient of t_var^k, a polynomial not involving t_var
    MPoly coeff_of_power(int var, int k) const;
    MPoly substitute(int var, const MPoly& value) const;
    Fq eval(const std::vector<Fq>& point) const;
    // leading coefficient in the lex-descending term order
    Fq lex_leading_coeff() const;

    std::string str() const;

private:
    Field field_;
    int nparams_;
    std::map<Expo, Fq, ExpoLexDesc> terms_;
};

// gcd via primitive pseudo-remainder sequences, recursing on the last active
// variable.  Result is normalized with lex-leading coefficient 1.
MPoly mpoly_gcd(const MPoly& a, const MPoly& b);

// Exact division; throws if not divisible.
MPoly mpoly_divexact(const MPoly& a, const MPoly& b);

// Fraction of MPolys, reduced and with monic (lex-leading) denominator.
class RatFunc {
public:
    RatFunc() = default;
    RatFunc(MPoly num, MPoly den);
    static RatFunc of(const MPoly& p) { return RatFunc(p, p.one()); }

    const MPoly& num() const { return num_; }
    const MPoly& den() const { return den_; }
    bool is_polynomial() const { return den_.is_one(); }

    // scalar-concept methods
    RatFunc zero() const { return RatFunc(num_.zero(), num_.one()); }
    RatFunc one() const { return RatFunc(num_.one(), num_.one()); }
    RatFunc from_int(const mpz_class& n) const { return RatFunc(num_.from_int(n), num_.one()); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_ == den_; }

    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const;
    RatFunc operator*(const RatFunc& o) const;
    RatFunc operator/(const RatFunc& o) const;
    RatFunc operator-() const;
    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    std::string str() const;

private:
    MPoly num_, den_;
};

} // namespace apolar

#endif
