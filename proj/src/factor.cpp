#include "apolar/factor.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace apolar {

namespace {

// ---------------------------------------------------------------- F_p case

UPoly random_poly(const Field& f, int deg_below, std::mt19937_64& rng) {
    std::uint64_t p = f.characteristic();
    std::vector<Fq> c(static_cast<std::size_t>(deg_below), Fq::zero(f));
    for (Fq& x : c) x = Fq::of_int(f, static_cast<long>(rng() % p));
    return UPoly(f, std::move(c));
}

// p-th root of g(x) = h(x^p); over the prime field the coefficients are
// their own p-th roots.
UPoly pth_root(const UPoly& g) {
    const Field& f = g.field();
    std::uint64_t p = f.characteristic();
    std::vector<Fq> c;
    for (int i = 0; i <= g.degree(); i += static_cast<int>(p)) c.push_back(g.coeff(i));
    return UPoly(f, std::move(c));
}

void squarefree_fp(const UPoly& f, int mult, std::vector<std::pair<UPoly, int>>& out) {
    const Field& K = f.field();
    std::uint64_t p = K.characteristic();
    UPoly fp = f.derivative();
    if (fp.is_zero()) {
        squarefree_fp(pth_root(f), mult * static_cast<int>(p), out);
        return;
    }
    UPoly c = gcd(f, fp);
    UPoly w = (f / c).monic();
    int i = 1;
    while (!(w.degree() == 0)) {
        UPoly y = gcd(w, c);
        UPoly z = (w / y).monic();
        if (z.degree() > 0) out.emplace_back(z, mult * i);
        w = std::move(y);
        c = (c / w).monic();
        ++i;
    }
    if (c.degree() > 0) squarefree_fp(pth_root(c), mult * static_cast<int>(p), out);
}

// Equal-degree splitting of a monic squarefree product of irreducibles of
// degree d (Cantor-Zassenhaus; trace map in characteristic two).
void edf(const UPoly& g, int d, std::mt19937_64& rng, std::vector<UPoly>& out) {
    const Field& K = g.field();
    if (g.degree() == d) {
        out.push_back(g);
        return;
    }
    std::uint64_t p = K.characteristic();
    while (true) {
        UPoly a = random_poly(K, g.degree(), rng);
        if (a.degree() < 1) continue;
        UPoly b(K);
        if (p == 2) {
            b = a % g;
            UPoly acc = b;
            for (int i = 1; i < d; ++i) {
                acc = (acc * acc) % g;
                b = b + acc;
            }
        } else {
            mpz_class e = mpz_class(static_cast<unsigned long>(p));
            mpz_pow_ui(e.get_mpz_t(), e.get_mpz_t(), static_cast<unsigned long>(d));
            e = (e - 1) / 2;
            b = pow_mod(a, e, g) - UPoly::constant(Fq::one(K));
        }
        UPoly h = gcd(b, g);
        if (h.degree() > 0 && h.degree() < g.degree()) {
            edf(h, d, rng, out);
            edf((g / h).monic(), d, rng, out);
            return;
        }
    }
}

std::vector<UPoly> factor_squarefree_fp(const UPoly& f, std::mt19937_64& rng) {
    const Field& K = f.field();
    std::uint64_t p = K.characteristic();
    std::vector<UPoly> out;
    UPoly rem = f.monic();
    UPoly h = UPoly::x(K);
    const UPoly x = UPoly::x(K);
    int d = 0;
    while (rem.degree() > 2 * (d + 1) - 1) {
        ++d;
        h = pow_mod(h, mpz_class(static_cast<unsigned long>(p)), rem);
        UPoly g = gcd(h - x, rem);
        if (g.degree() > 0) {
            edf(g, d, rng, out);
            rem = (rem / g).monic();
            h = h % rem;
        }
    }
    if (rem.degree() > 0) out.push_back(rem);
    return out;
}

// ------------------------------------------------------------ rational case

using ZPoly = std::vector<mpz_class>; // low to high, no trailing zeros

void ztrim(ZPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int zdeg(const ZPoly& a) { return static_cast<int>(a.size()) - 1; }

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly c(a.size() + b.size() - 1, mpz_class(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

ZPoly zsub(const ZPoly& a, const ZPoly& b) {
    ZPoly c(std::max(a.size(), b.size()), mpz_class(0));
    for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
    ztrim(c);
    return c;
}

void zmod_reduce(ZPoly& a, const mpz_class& m) {
    for (mpz_class& c : a) {
        c %= m;
        if (c < 0) c += m;
    }
    ztrim(a);
}

// Division by a monic polynomial with coefficients mod m.
std::pair<ZPoly, ZPoly> zdivmod_monic(ZPoly a, const ZPoly& d, const mpz_class& m) {
    zmod_reduce(a, m);
    int dd = zdeg(d);
    if (zdeg(a) < dd) return {{}, a};
    ZPoly q(a.size() - d.size() + 1, mpz_class(0));
    for (int i = zdeg(a); i >= dd; --i) {
        mpz_class c = a[static_cast<std::size_t>(i)] % m;
        if (c < 0) c += m;
        if (c == 0) continue;
        q[static_cast<std::size_t>(i - dd)] = c;
        for (int j = 0; j <= dd; ++j) {
            mpz_class& t = a[static_cast<std::size_t>(i - dd + j)];
            t = (t - c * d[static_cast<std::size_t>(j)]) % m;
            if (t < 0) t += m;
        }
    }
    ztrim(a);
    zmod_reduce(q, m);
    return {q, a};
}

ZPoly to_zpoly_mod(const UPoly& f) {
    ZPoly a;
    for (int i = 0; i <= f.degree(); ++i)
        a.push_back(mpz_class(static_cast<unsigned long>(f[i].residue())));
    ztrim(a);
    return a;
}

UPoly to_fp_poly(const ZPoly& a, const Field& K) {
    std::vector<Fq> c;
    for (const mpz_class& x : a) c.push_back(Fq::of_mpz(K, x));
    return UPoly(K, std::move(c));
}

// One linear Hensel step: F = g*h mod p^i lifts to mod p^{i+1}.  s, t are
// Bezout cofactors of (g, h) mod p; g, h monic.
void hensel_step(const ZPoly& F, ZPoly& g, ZPoly& h, const ZPoly& t,
                 const mpz_class& p, const mpz_class& pi) {
    mpz_class pi1 = pi * p;
    ZPoly e = zsub(F, zmul(g, h));
    zmod_reduce(e, pi1);
    // e is divisible by pi
    ZPoly E;
    for (const mpz_class& c : e) E.push_back(c / pi);
    zmod_reduce(E, p);
    auto [q, dg] = zdivmod_monic(zmul(t, E), g, p);
    ZPoly num = zsub(E, zmul(dg, h));
    zmod_reduce(num, p);
    auto [dh, rem] = zdivmod_monic(num, g, p);
    (void)rem; // exact by construction
    for (std::size_t i = 0; i < dg.size(); ++i) {
        if (g.size() <= i) g.push_back(0);
        g[i] = (g[i] + pi * dg[i]) % pi1;
    }
    for (std::size_t i = 0; i < dh.size(); ++i) {
        if (h.size() <= i) h.push_back(0);
        h[i] = (h[i] + pi * dh[i]) % pi1;
    }
    zmod_reduce(g, pi1);
    zmod_reduce(h, pi1);
}

// Lift the factorization F = prod(gs) mod p to mod target (a power of p).
// F monic over Z reduced mod target; gs monic irreducible mod p.
std::vector<ZPoly> hensel_tree(const ZPoly& F, std::vector<ZPoly> gs,
                               const mpz_class& p, const mpz_class& target, const Field& Kp) {
    if (gs.size() == 1) {
        ZPoly r = F;
        zmod_reduce(r, target);
        return {r};
    }
    std::size_t half = gs.size() / 2;
    ZPoly g = {mpz_class(1)}, h = {mpz_class(1)};
    for (std::size_t i = 0; i < half; ++i) g = zmul(g, gs[i]);
    for (std::size_t i = half; i < gs.size(); ++i) h = zmul(h, gs[i]);
    zmod_reduce(g, p);
    zmod_reduce(h, p);
    UPoly gp = to_fp_poly(g, Kp), hp = to_fp_poly(h, Kp);
    UPoly bg(Kp);
    auto [su, tu] = half_xgcd(gp, hp, &bg);
    if (!bg.is_one()) throw DomainError("hensel_tree: factors not coprime mod p");
    (void)su;
    ZPoly t = to_zpoly_mod(tu);
    mpz_class pi = p;
    while (pi < target) {
        hensel_step(F, g, h, t, p, pi);
        pi *= p;
    }
    std::vector<ZPoly> out = hensel_tree(g, std::vector<ZPoly>(gs.begin(), gs.begin() + static_cast<long>(half)), p, target, Kp);
    std::vector<ZPoly> out2 = hensel_tree(h, std::vector<ZPoly>(gs.begin() + static_cast<long>(half), gs.end()), p, target, Kp);
    out.insert(out.end(), out2.begin(), out2.end());
    return out;
}

mpz_class zcontent(const ZPoly& a) {
    mpz_class g = 0;
    for (const mpz_class& c : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g == 0 ? mpz_class(1) : g;
}

ZPoly zprimitive(ZPoly a) {
    mpz_class c = zcontent(a);
    if (a.empty()) return a;
    if (a.back() < 0) c = -c;
    for (mpz_class& x : a) x /= c;
    return a;
}

// Exact division test over Z (monic divisor not assumed); returns quotient if
// it divides.
bool zdivides(const ZPoly& f, const ZPoly& d, ZPoly* quot) {
    if (d.empty()) return false;
    ZPoly r = f;
    ZPoly q(f.size(), mpz_class(0));
    while (zdeg(r) >= zdeg(d)) {
        mpz_class c = r.back() / d.back();
        if (c * d.back() != r.back()) return false;
        int shift = zdeg(r) - zdeg(d);
        q[static_cast<std::size_t>(shift)] = c;
        for (std::size_t j = 0; j < d.size(); ++j)
            r[static_cast<std::size_t>(shift) + j] -= c * d[j];
        ztrim(r);
        if (r.empty()) break;
    }
    if (!r.empty()) return false;
    ztrim(q);
    if (quot) *quot = q;
    return true;
}

// Factor a squarefree monic integer polynomial (Zassenhaus).
std::vector<ZPoly> factor_z_monic_squarefree(const ZPoly& F, std::uint64_t seed) {
    int n = zdeg(F);
    if (n <= 1) return {F};

    // choose a prime keeping F squarefree
    std::uint64_t p = 2;
    UPoly fp(Field::rationals());
    for (;;) {
        mpz_class pz(static_cast<unsigned long>(p));
        mpz_nextprime(pz.get_mpz_t(), pz.get_mpz_t());
        p = pz.get_ui();
        Field Kp = Field::prime(p);
        std::vector<Fq> c;
        for (const mpz_class& x : F) c.push_back(Fq::of_mpz(Kp, x));
        UPoly cand(Kp, std::move(c));
        if (cand.degree() != n) continue;
        if (gcd(cand, cand.derivative()).degree() == 0) {
            fp = cand;
            break;
        }
    }
    Field Kp = fp.field();
    std::mt19937_64 rng(seed ^ 0x5eedf00dULL);
    std::vector<UPoly> modular = factor_squarefree_fp(fp, rng);
    if (modular.size() == 1) return {F};

    // coefficient bound (Mignotte-style) and lifting target
    mpz_class norm2 = 0;
    for (const mpz_class& c : F) norm2 += c * c;
    mpz_class bound = sqrt(norm2) + 1;
    bound <<= static_cast<unsigned>(n + 1);
    mpz_class pz(static_cast<unsigned long>(p));
    mpz_class target = pz;
    while (target <= 2 * bound) target *= pz;

    std::vector<ZPoly> zfs;
    for (const UPoly& g : modular) zfs.push_back(to_zpoly_mod(g));
    ZPoly Fm = F;
    zmod_reduce(Fm, target);
    std::vector<ZPoly> lifted = hensel_tree(Fm, zfs, pz, target, Kp);

    // recombination over subsets with symmetric representatives
    std::vector<ZPoly> result;
    ZPoly rem = F;
    std::vector<ZPoly> pool = lifted;
    std::size_t take = 1;
    while (2 * take <= pool.size()) {
        bool found = false;
        std::vector<std::size_t> idx(take);
        for (std::size_t i = 0; i < take; ++i) idx[i] = i;
        for (;;) {
            ZPoly cand = {mpz_class(1)};
            for (std::size_t i : idx) cand = zmul(cand, pool[i]);
            zmod_reduce(cand, target);
            for (mpz_class& c : cand)
                if (2 * c > target) c -= target;
            ZPoly quot;
            if (zdivides(rem, cand, &quot)) {
                result.push_back(zprimitive(cand));
                rem = quot;
                std::vector<ZPoly> next;
                for (std::size_t i = 0; i < pool.size(); ++i)
                    if (std::find(idx.begin(), idx.end(), i) == idx.end()) next.push_back(pool[i]);
                pool = std::move(next);
                found = true;
                break;
            }
            // next subset
            std::size_t k = take;
            while (k > 0 && idx[k - 1] == pool.size() - take + (k - 1)) --k;
            if (k == 0) break;
            ++idx[k - 1];
            for (std::size_t j = k; j < take; ++j) idx[j] = idx[j - 1] + 1;
        }
        if (!found) ++take;
    }
    if (zdeg(rem) > 0) result.push_back(zprimitive(rem));
    return result;
}

// Substitute x -> lc*x and scale monic; used to reduce the general integer
// case to the monic one.
ZPoly make_monic_transform(const ZPoly& G, const mpz_class& lc) {
    int n = zdeg(G);
    ZPoly H(G.size());
    H[static_cast<std::size_t>(n)] = 1;
    mpz_class pw = 1;
    for (int i = n - 1; i >= 0; --i) {
        H[static_cast<std::size_t>(i)] = G[static_cast<std::size_t>(i)] * pw;
        pw *= lc;
    }
    return H;
}

std::vector<ZPoly> factor_z_squarefree(const ZPoly& G, std::uint64_t seed) {
    mpz_class lc = G.back();
    if (lc == 1) return factor_z_monic_squarefree(G, seed);
    ZPoly H = make_monic_transform(G, lc);
    std::vector<ZPoly> hf = factor_z_monic_squarefree(H, seed);
    std::vector<ZPoly> out;
    for (const ZPoly& h : hf) {
        ZPoly g = h;
        mpz_class pw = 1;
        for (std::size_t i = 0; i < g.size(); ++i) {
            g[i] *= pw;
            pw *= lc;
        }
        out.push_back(zprimitive(g));
    }
    return out;
}

UPoly zpoly_to_q(const ZPoly& a) {
    Field Q = Field::rationals();
    std::vector<Fq> c;
    for (const mpz_class& x : a) c.push_back(Fq::of_mpz(Q, x));
    return UPoly(Q, std::move(c));
}

// Squarefree decomposition in characteristic zero (Yun).
std::vector<std::pair<UPoly, int>> squarefree_q(const UPoly& f) {
    std::vector<std::pair<UPoly, int>> out;
    UPoly c = gcd(f, f.derivative());
    UPoly w = (f / c).monic();
    int i = 1;
    while (w.degree() > 0) {
        UPoly y = gcd(w, c);
        UPoly z = (w / y).monic();
        if (z.degree() > 0) out.emplace_back(z, i);
        w = std::move(y);
        c = (c / w).monic();
        ++i;
    }
    return out;
}

} // namespace

std::vector<std::pair<UPoly, int>> factor(const UPoly& f, std::uint64_t seed) {
    if (f.is_zero()) throw DomainError("factor: zero polynomial");
    std::vector<std::pair<UPoly, int>> out;
    if (f.degree() == 0) return out;

    if (f.field().is_prime_field()) {
        std::vector<std::pair<UPoly, int>> sqf;
        squarefree_fp(f.monic(), 1, sqf);
        std::mt19937_64 rng(seed);
        for (auto& [part, mult] : sqf)
            for (const UPoly& irr : factor_squarefree_fp(part, rng)) out.emplace_back(irr, mult);
    } else {
        for (auto& [part, mult] : squarefree_q(f.monic())) {
            // clear denominators to a primitive integer polynomial
            mpz_class den = 1;
            for (int i = 0; i <= part.degree(); ++i)
                mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), part[i].rat().get_den().get_mpz_t());
            ZPoly zp;
            for (int i = 0; i <= part.degree(); ++i) {
                mpq_class q = part[i].rat() * den;
                zp.push_back(q.get_num());
            }
            zp = zprimitive(zp);
            for (const ZPoly& g : factor_z_squarefree(zp, seed))
                out.emplace_back(zpoly_to_q(g).monic(), mult);
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.first.degree() < b.first.degree();
    });
    return out;
}

std::vector<UPoly> coprime_power_parts(const UPoly& f, std::uint64_t seed) {
    std::vector<UPoly> parts;
    for (const auto& [irr, mult] : factor(f, seed)) {
        UPoly q = UPoly::constant(Fq::one(f.field()));
        for (int i = 0; i < mult; ++i) q = q * irr;
        parts.push_back(q);
    }
    return parts;
}

std::vector<Fq> roots_in_field(const UPoly& f, std::uint64_t seed) {
    std::vector<Fq> roots;
    for (const auto& [irr, mult] : factor(f, seed)) {
        (void)mult;
        if (irr.degree() == 1) roots.push_back(-irr[0]);
    }
    return roots;
}

} // namespace apolar
