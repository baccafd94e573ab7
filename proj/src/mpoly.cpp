#include "apolar/mpoly.hpp"

#include <sstream>

namespace apolar {

void MPoly::add_term(const Expo& e, const Fq& c) {
    if (c.is_zero()) return;
    if (static_cast<int>(e.size()) != nparams_) throw DomainError("MPoly: wrong exponent length");
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

MPoly MPoly::operator+(const MPoly& o) const {
    MPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

MPoly MPoly::operator-(const MPoly& o) const {
    MPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
}

MPoly MPoly::operator-() const {
    MPoly r(field_, nparams_);
    for (const auto& [e, c] : terms_) r.add_term(e, -c);
    return r;
}

MPoly MPoly::operator*(const MPoly& o) const {
    MPoly r(field_, nparams_);
    Expo e(static_cast<std::size_t>(nparams_), 0);
    for (const auto& [a, ca] : terms_)
        for (const auto& [b, cb] : o.terms_) {
            for (int i = 0; i < nparams_; ++i)
                e[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i)] + b[static_cast<std::size_t>(i)];
            r.add_term(e, ca * cb);
        }
    return r;
}

MPoly MPoly::scaled(const Fq& c) const {
    MPoly r(field_, nparams_);
    for (const auto& [e, x] : terms_) r.add_term(e, x * c);
    return r;
}

int MPoly::degree_in(int var) const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
        (void)c;
        d = std::max(d, e[static_cast<std::size_t>(var)]);
    }
    return d;
}

int MPoly::total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
        (void)c;
        d = std::max(d, expo_degree(e));
    }
    return d;
}

MPoly MPoly::coeff_of_power(int var, int k) const {
    MPoly r(field_, nparams_);
    for (const auto& [e, c] : terms_) {
        if (e[static_cast<std::size_t>(var)] != k) continue;
        Expo e2 = e;
        e2[static_cast<std::size_t>(var)] = 0;
        r.add_term(e2, c);
    }
    return r;
}

MPoly MPoly::substitute(int var, const MPoly& value) const {
    MPoly r(field_, nparams_);
    for (const auto& [e, c] : terms_) {
        Expo e2 = e;
        int k = e2[static_cast<std::size_t>(var)];
        e2[static_cast<std::size_t>(var)] = 0;
        MPoly term(field_, nparams_);
        term.add_term(e2, c);
        for (int i = 0; i < k; ++i) term = term * value;
        r = r + term;
    }
    return r;
}

Fq MPoly::eval(const std::vector<Fq>& point) const {
    Fq acc = Fq::zero(field_);
    for (const auto& [e, c] : terms_) {
        Fq v = c;
        for (int i = 0; i < nparams_; ++i)
            for (int k = 0; k < e[static_cast<std::size_t>(i)]; ++k) v *= point[static_cast<std::size_t>(i)];
        acc += v;
    }
    return acc;
}

Fq MPoly::lex_leading_coeff() const {
    if (terms_.empty()) return Fq::zero(field_);
    return terms_.begin()->second;
}

std::string MPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        std::string cs = c.str();
        bool neg = cs.size() > 1 && cs[0] == '-';
        if (first) {
            if (neg) os << "-";
            first = false;
        } else {
            os << (neg ? " - " : " + ");
        }
        if (neg) cs = cs.substr(1);
        bool unit = cs == "1";
        bool any = expo_degree(e) > 0;
        if (!unit || !any) os << cs;
        if (!unit && any) os << "*";
        bool fv = true;
        for (int i = 0; i < nparams_; ++i) {
            int k = e[static_cast<std::size_t>(i)];
            if (k == 0) continue;
            if (!fv) os << "*";
            fv = false;
            os << "t" << (i + 1);
            if (k > 1) os << "^" << k;
        }
    }
    return os.str();
}

namespace {

// view as univariate in var: coefficient list low to high
std::vector<MPoly> as_univariate(const MPoly& a, int var) {
    int d = a.degree_in(var);
    std::vector<MPoly> c;
    for (int k = 0; k <= d; ++k) c.push_back(a.coeff_of_power(var, k));
    return c;
}

MPoly from_univariate(const std::vector<MPoly>& c, int var, const MPoly& exemplar) {
    MPoly r = exemplar.zero();
    MPoly t = MPoly::var(exemplar.field(), exemplar.nparams(), var);
    MPoly tp = exemplar.one();
    for (const MPoly& ck : c) {
        r = r + ck * tp;
        tp = tp * t;
    }
    return r;
}

int top_active_var(const MPoly& a, const MPoly& b) {
    for (int v = a.nparams() - 1; v >= 0; --v)
        if (a.degree_in(v) > 0 || b.degree_in(v) > 0) return v;
    return -1;
}

// content = gcd of the univariate coefficients (recursively)
MPoly content_in(const MPoly& a, int var) {
    MPoly g = a.zero();
    for (const MPoly& c : as_univariate(a, var)) g = mpoly_gcd(g, c);
    return g;
}

// pseudo-remainder of a by b in var (deg_a >= deg_b >= 0)
MPoly prem(const MPoly& a, const MPoly& b, int var) {
    std::vector<MPoly> ra = as_univariate(a, var);
    std::vector<MPoly> rb = as_univariate(b, var);
    int db = static_cast<int>(rb.size()) - 1;
    MPoly lb = rb.back();
    std::vector<MPoly> r = ra;
    while (static_cast<int>(r.size()) - 1 >= db && !(r.size() == 1 && r[0].is_zero())) {
        int dr = static_cast<int>(r.size()) - 1;
        MPoly lr = r.back();
        // r <- lb*r - lr*x^{dr-db}*b
        for (MPoly& c : r) c = c * lb;
        for (int k = 0; k <= db; ++k)
            r[static_cast<std::size_t>(dr - db + k)] = r[static_cast<std::size_t>(dr - db + k)] - lr * rb[static_cast<std::size_t>(k)];
        while (r.size() > 1 && r.back().is_zero()) r.pop_back();
        if (static_cast<int>(r.size()) - 1 == dr) break; // safety; should not happen
    }
    return from_univariate(r, var, a);
}

} // namespace

MPoly mpoly_divexact(const MPoly& a, const MPoly& b) {
    if (b.is_zero()) throw DomainError("mpoly_divexact: division by zero");
    MPoly r = a;
    MPoly q = a.zero();
    const auto& blead = *b.terms().begin();
    while (!r.is_zero()) {
        const auto& rlead = *r.terms().begin();
        Expo e(static_cast<std::size_t>(a.nparams()), 0);
        for (int i = 0; i < a.nparams(); ++i) {
            e[static_cast<std::size_t>(i)] = rlead.first[static_cast<std::size_t>(i)] - blead.first[static_cast<std::size_t>(i)];
            if (e[static_cast<std::size_t>(i)] < 0) throw DomainError("mpoly_divexact: not divisible");
        }
        MPoly m(a.field(), a.nparams());
        m.add_term(e, rlead.second / blead.second);
        q = q + m;
        r = r - m * b;
    }
    return q;
}

MPoly mpoly_gcd(const MPoly& a, const MPoly& b) {
    if (a.is_zero() && b.is_zero()) return a;
    auto normalize = [](const MPoly& p) {
        if (p.is_zero()) return p;
        return p.scaled(p.lex_leading_coeff().inverse());
    };
    if (a.is_zero()) return normalize(b);
    if (b.is_zero()) return normalize(a);
    int v = top_active_var(a, b);
    if (v < 0) return a.one(); // both nonzero constants
    if (a.degree_in(v) == 0 || b.degree_in(v) == 0) {
        // one side free of v: gcd with the content of the other
        const MPoly& freep = a.degree_in(v) == 0 ? a : b;
        const MPoly& other = a.degree_in(v) == 0 ? b : a;
        return mpoly_gcd(freep, content_in(other, v));
    }
    MPoly ca = content_in(a, v), cb = content_in(b, v);
    MPoly gc = mpoly_gcd(ca, cb);
    MPoly pa = mpoly_divexact(a, ca);
    MPoly pb = mpoly_divexact(b, cb);
    if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
    while (!pb.is_zero()) {
        MPoly r = prem(pa, pb, v);
        pa = pb;
        if (r.is_zero()) {
            pb = r;
        } else {
            pb = mpoly_divexact(r, content_in(r, v));
        }
        if (!pb.is_zero() && pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
    }
    return normalize(gc * pa);
}

RatFunc::RatFunc(MPoly num, MPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DomainError("RatFunc: zero denominator");
    if (num_.is_zero()) {
        den_ = den_.one();
        return;
    }
    MPoly g = mpoly_gcd(num_, den_);
    if (!g.is_one()) {
        num_ = mpoly_divexact(num_, g);
        den_ = mpoly_divexact(den_, g);
    }
    Fq lc = den_.lex_leading_coeff();
    if (!lc.is_one()) {
        num_ = num_.scaled(lc.inverse());
        den_ = den_.scaled(lc.inverse());
    }
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
    return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}
RatFunc RatFunc::operator-(const RatFunc& o) const {
    return RatFunc(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}
RatFunc RatFunc::operator*(const RatFunc& o) const { return RatFunc(num_ * o.num_, den_ * o.den_); }
RatFunc RatFunc::operator/(const RatFunc& o) const {
    if (o.is_zero()) throw DomainError("RatFunc: division by zero");
    return RatFunc(num_ * o.den_, den_ * o.num_);
}
RatFunc RatFunc::operator-() const { return RatFunc(-num_, den_); }

std::string RatFunc::str() const {
    if (is_polynomial()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

} // namespace apolar
