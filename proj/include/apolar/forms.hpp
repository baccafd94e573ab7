#ifndef APOLAR_FORMS_HPP
#define APOLAR_FORMS_HPP

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "apolar/matrix.hpp"

namespace apolar {

// Exponent vector of a monomial in r variables.
using Expo = std::vector<int>;

inline int expo_degree(const Expo& a) {
    int d = 0;
    for (int x : a) d += x;
    return d;
}

// Lexicographically descending term order (used for display, catalecticant
// row/column bases and all canonical spans).
struct ExpoLexDesc {
    bool operator()(const Expo& a, const Expo& b) const {
        return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
    }
};

// All exponent vectors in r variables of total degree d, lex descending.
std::vector<Expo> monomials(int r, int d);

inline mpz_class binomial_z(long n, long k) {
    if (k < 0 || k > n || n < 0) return 0;
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return b;
}

// A homogeneous sparse polynomial; Side distinguishes the divided power ring
// (forms f) from its dual polynomial ring of contraction operators.  C is the
// coefficient ring: Fq in the core library, parameter polynomials and
// rational functions in the splitting machinery.
template <class C, class Side>
class HForm {
public:
    using TermMap = std::map<Expo, C, ExpoLexDesc>;

    HForm() = default;
    HForm(int nvars, int degree) : nvars_(nvars), degree_(degree) {}

    int nvars() const { return nvars_; }
    int degree() const { return degree_; }
    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }

    void add_term(const Expo& e, const C& c) {
        if (c.is_zero()) return;
        if (static_cast<int>(e.size()) != nvars_ || expo_degree(e) != degree_)
            throw DomainError("term does not match the declared variables/degree");
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    C coeff(const Expo& e) const {
        auto it = terms_.find(e);
        if (it == terms_.end()) return zero_coeff();
        return it->second;
    }

    // Like coeff, but with a caller-supplied zero; needed because a form with
    // no terms cannot produce a zero in the right coefficient ring.
    C coeff_or(const Expo& e, const C& zero) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? zero : it->second;
    }

    HForm operator+(const HForm& o) const {
        check_compatible(o);
        HForm r = *this;
        for (const auto& [e, c] : o.terms_) r.add_term(e, c);
        return r;
    }
    HForm operator-(const HForm& o) const {
        check_compatible(o);
        HForm r = *this;
        const C z = o.is_zero() ? zero_coeff() : o.zero_coeff();
        for (const auto& [e, c] : o.terms_) r.add_term(e, z - c);
        return r;
    }
    HForm scaled(const C& c) const {
        HForm r(nvars_, degree_);
        if (c.is_zero()) return r;
        for (const auto& [e, x] : terms_) r.add_term(e, x * c);
        return r;
    }
    HForm operator-() const {
        HForm r(nvars_, degree_);
        for (const auto& [e, x] : terms_) r.add_term(e, zero_coeff() - x);
        return r;
    }

    bool operator==(const HForm& o) const {
        return nvars_ == o.nvars_ && degree_ == o.degree_ && terms_ == o.terms_;
    }
    bool operator!=(const HForm& o) const { return !(*this == o); }

    // Any coefficient exemplar, for same-context construction of constants.
    C zero_coeff() const {
        if (!terms_.empty()) return terms_.begin()->second.zero();
        return C();
    }

    std::string str(const std::string& varname) const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            std::string cs = c.str();
            bool composite = cs.find(" + ") != std::string::npos || cs.find(" - ") != std::string::npos;
            if (composite) cs = "(" + cs + ")";
            bool neg = !composite && cs.size() > 1 && cs[0] == '-';
            if (first) {
                if (neg) os << "-";
                first = false;
            } else {
                os << (neg ? " - " : " + ");
            }
            if (neg) cs = cs.substr(1);
            bool unit = (cs == "1");
            bool any_var = expo_degree(e) > 0;
            if (!unit || !any_var) os << cs;
            if (!unit && any_var) os << "*";
            bool first_var = true;
            for (int i = 0; i < nvars_; ++i) {
                if (e[static_cast<std::size_t>(i)] == 0) continue;
                if (!first_var) os << " ";
                first_var = false;
                os << varname << (i + 1);
                if (e[static_cast<std::size_t>(i)] > 1) os << "^(" << e[static_cast<std::size_t>(i)] << ")";
            }
        }
        return os.str();
    }

private:
    void check_compatible(const HForm& o) const {
        if (nvars_ != o.nvars_ || degree_ != o.degree_)
            throw DomainError("incompatible forms");
    }

    int nvars_ = 0;
    int degree_ = 0;
    TermMap terms_;
};

struct DPSide {};
struct OpSide {};

// f in the divided power ring; x^[a] x^[b] = C(a+b,a) x^[a+b].
template <class C>
using DPFormT = HForm<C, DPSide>;
// D in the dual polynomial ring acting by contraction.
template <class C>
using DiffOpT = HForm<C, OpSide>;

using DPForm = DPFormT<Fq>;
using DiffOp = DiffOpT<Fq>;

// Contraction D(f): each monomial pair contributes x^[a-b] with coefficient 1.
// Over-differentiation gives the zero form.
template <class C>
DPFormT<C> contract(const DiffOpT<C>& op, const DPFormT<C>& f) {
    if (op.nvars() != f.nvars()) throw DomainError("contract: variable count mismatch");
    int dd = f.degree() - op.degree();
    if (dd < 0) return DPFormT<C>(f.nvars(), 0);
    DPFormT<C> r(f.nvars(), dd);
    Expo e(static_cast<std::size_t>(f.nvars()), 0);
    for (const auto& [b, cb] : op.terms()) {
        for (const auto& [a, ca] : f.terms()) {
            bool ok = true;
            for (int i = 0; i < f.nvars(); ++i) {
                e[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i)] - b[static_cast<std::size_t>(i)];
                if (e[static_cast<std::size_t>(i)] < 0) { ok = false; break; }
            }
            if (ok) r.add_term(e, cb * ca);
        }
    }
    return r;
}

template <class C>
DPFormT<C> diff_var(int i, const DPFormT<C>& f) {
    DiffOpT<C> d(f.nvars(), 1);
    Expo e(static_cast<std::size_t>(f.nvars()), 0);
    e[static_cast<std::size_t>(i)] = 1;
    C one = f.is_zero() ? C() : f.terms().begin()->second.one();
    d.add_term(e, one);
    return contract(d, f);
}

// Divided power product.
template <class C>
DPFormT<C> dp_mul(const DPFormT<C>& f, const DPFormT<C>& g) {
    if (f.nvars() != g.nvars()) throw DomainError("dp_mul: variable count mismatch");
    DPFormT<C> r(f.nvars(), f.degree() + g.degree());
    if (f.is_zero() || g.is_zero()) return r;
    const C ex = f.zero_coeff();
    Expo e(static_cast<std::size_t>(f.nvars()), 0);
    for (const auto& [a, ca] : f.terms()) {
        for (const auto& [b, cb] : g.terms()) {
            mpz_class bin = 1;
            for (int i = 0; i < f.nvars(); ++i) {
                int ai = a[static_cast<std::size_t>(i)], bi = b[static_cast<std::size_t>(i)];
                e[static_cast<std::size_t>(i)] = ai + bi;
                bin *= binomial_z(ai + bi, ai);
            }
            r.add_term(e, ca * cb * ex.from_int(bin));
        }
    }
    return r;
}

// Ordinary polynomial product on the operator side.
template <class C>
DiffOpT<C> op_mul(const DiffOpT<C>& f, const DiffOpT<C>& g) {
    if (f.nvars() != g.nvars()) throw DomainError("op_mul: variable count mismatch");
    DiffOpT<C> r(f.nvars(), f.degree() + g.degree());
    Expo e(static_cast<std::size_t>(f.nvars()), 0);
    for (const auto& [a, ca] : f.terms())
        for (const auto& [b, cb] : g.terms()) {
            for (int i = 0; i < f.nvars(); ++i)
                e[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i)] + b[static_cast<std::size_t>(i)];
            r.add_term(e, ca * cb);
        }
    return r;
}

// l^[d] for l = sum c_i x_i: coefficients prod c_i^{a_i}, no multinomials.
template <class C>
DPFormT<C> dp_power_of_linear(const std::vector<C>& coeffs, int d) {
    int r = static_cast<int>(coeffs.size());
    if (d < 0) throw DomainError("negative degree");
    DPFormT<C> out(r, d);
    for (const Expo& a : monomials(r, d)) {
        C c = coeffs.empty() ? C() : coeffs[0].one();
        bool zero = false;
        for (int i = 0; i < r && !zero; ++i) {
            for (int k = 0; k < a[static_cast<std::size_t>(i)]; ++k) {
                c = c * coeffs[static_cast<std::size_t>(i)];
                if (c.is_zero()) { zero = true; break; }
            }
        }
        if (!zero) out.add_term(a, c);
    }
    return out;
}

// (sum c_i d_i)^e in the ordinary polynomial ring: multinomial coefficients.
template <class C>
DiffOpT<C> op_power_of_linear(const std::vector<C>& coeffs, int d) {
    int r = static_cast<int>(coeffs.size());
    if (d < 0) throw DomainError("negative degree");
    DiffOpT<C> out(r, d);
    const C ex = coeffs.empty() ? C() : coeffs[0].zero();
    for (const Expo& a : monomials(r, d)) {
        mpz_class multi = 1;
        int rest = d;
        for (int i = 0; i < r; ++i) {
            multi *= binomial_z(rest, a[static_cast<std::size_t>(i)]);
            rest -= a[static_cast<std::size_t>(i)];
        }
        C c = ex.from_int(multi);
        for (int i = 0; i < r && !c.is_zero(); ++i)
            for (int k = 0; k < a[static_cast<std::size_t>(i)]; ++k) c = c * coeffs[static_cast<std::size_t>(i)];
        out.add_term(a, c);
    }
    return out;
}

// Base change x -> P^T x on the divided power ring and d -> P^{-1} d on its
// dual; P must be invertible.
template <class C>
class BaseChangeT {
public:
    explicit BaseChangeT(const Mat<C>& p) : p_(p) {
        auto inv = inverse(p);
        if (!inv) throw DomainError("base change matrix is singular");
        pinv_ = *inv;
    }
    const Mat<C>& matrix() const { return p_; }
    const Mat<C>& inverse_matrix() const { return pinv_; }

    DPFormT<C> apply(const DPFormT<C>& f) const {
        const int r = p_.rows();
        if (f.nvars() != r) throw DomainError("base change: dimension mismatch");
        DPFormT<C> out(r, f.degree());
        for (const auto& [a, c] : f.terms()) {
            DPFormT<C> term(r, 0);
            Expo zero_e(static_cast<std::size_t>(r), 0);
            term.add_term(zero_e, c);
            for (int i = 0; i < r; ++i) {
                int ai = a[static_cast<std::size_t>(i)];
                if (ai == 0) continue;
                std::vector<C> col;
                for (int j = 0; j < r; ++j) col.push_back(p_.at(j, i));
                term = dp_mul(term, dp_power_of_linear(col, ai));
            }
            out = out + term;
        }
        return out;
    }

    DiffOpT<C> apply(const DiffOpT<C>& op) const {
        const int r = p_.rows();
        if (op.nvars() != r) throw DomainError("base change: dimension mismatch");
        DiffOpT<C> out(r, op.degree());
        for (const auto& [b, c] : op.terms()) {
            DiffOpT<C> term(r, 0);
            Expo zero_e(static_cast<std::size_t>(r), 0);
            term.add_term(zero_e, c);
            for (int i = 0; i < r; ++i) {
                int bi = b[static_cast<std::size_t>(i)];
                if (bi == 0) continue;
                term = op_mul(term, op_power_of_linear(pinv_.row(i), bi));
            }
            out = out + term;
        }
        return out;
    }

private:
    Mat<C> p_, pinv_;
};

using BaseChange = BaseChangeT<Fq>;

// Full contraction of equal degrees: the duality pairing, a scalar.
template <class C>
C pairing(const DiffOpT<C>& op, const DPFormT<C>& f) {
    if (op.degree() != f.degree()) throw DomainError("pairing needs equal degrees");
    C acc = op.is_zero() ? f.zero_coeff() : op.zero_coeff();
    for (const auto& [e, c] : op.terms()) acc = acc + c * f.coeff_or(e, acc.zero());
    return acc;
}

// Coefficient vector with respect to a monomial list.
template <class C, class Side>
std::vector<C> to_coords(const HForm<C, Side>& f, const std::vector<Expo>& monos, const C& zero) {
    std::vector<C> v(monos.size(), zero);
    for (std::size_t i = 0; i < monos.size(); ++i) v[i] = f.is_zero() ? zero : f.coeff(monos[i]);
    return v;
}

template <class C, class Side>
HForm<C, Side> from_coords(int nvars, int degree, const std::vector<Expo>& monos, const std::vector<C>& v) {
    HForm<C, Side> f(nvars, degree);
    for (std::size_t i = 0; i < monos.size(); ++i) f.add_term(monos[i], v[i]);
    return f;
}

template <class C>
DPFormT<C> dp_from_coords(int nvars, int degree, const std::vector<Expo>& monos, const std::vector<C>& v) {
    return from_coords<C, DPSide>(nvars, degree, monos, v);
}
template <class C>
DiffOpT<C> op_from_coords(int nvars, int degree, const std::vector<Expo>& monos, const std::vector<C>& v) {
    return from_coords<C, OpSide>(nvars, degree, monos, v);
}

// Single-variable monomial helpers.
DPForm dp_monomial(const Field& K, int nvars, const Expo& e, const Fq& c);
DiffOp op_monomial(const Field& K, int nvars, const Expo& e, const Fq& c);

} // namespace apolar

#endif
