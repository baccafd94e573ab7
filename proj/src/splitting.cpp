#include "apolar/splitting.hpp"

#include <algorithm>
#include <random>

#include "apolar/factor.hpp"

namespace apolar {

namespace {

Field field_of(const DPForm& f) {
    if (f.is_zero()) throw DomainError("zero form");
    return f.terms().begin()->second.field();
}

// ---- generic helpers shared by the exact and parameterized paths ----------

template <class S>
std::vector<DPFormT<S>> gradient_g(const DPFormT<S>& f) {
    std::vector<DPFormT<S>> g;
    for (int i = 0; i < f.nvars(); ++i) g.push_back(diff_var(i, f));
    return g;
}

template <class S>
std::vector<DPFormT<S>> apply_matrix(const Mat<S>& a, const std::vector<DPFormT<S>>& grad, int deg) {
    const int r = a.rows();
    std::vector<DPFormT<S>> out;
    for (int i = 0; i < r; ++i) {
        DPFormT<S> acc(r, deg);
        for (int k = 0; k < r; ++k) acc = acc + grad[static_cast<std::size_t>(k)].scaled(a.at(i, k));
        out.push_back(acc);
    }
    return out;
}

template <class S>
bool symmetric_product_g(const DPFormT<S>& f, const Mat<S>& a) {
    const int r = f.nvars();
    std::vector<DPFormT<S>> grad = gradient_g(f);
    std::vector<DPFormT<S>> hess;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) hess.push_back(diff_var(j, grad[static_cast<std::size_t>(i)]));
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) {
            DPFormT<S> acc(r, std::max(f.degree() - 2, 0));
            for (int k = 0; k < r; ++k) {
                acc = acc + hess[static_cast<std::size_t>(k * r + j)].scaled(a.at(i, k));
                acc = acc - hess[static_cast<std::size_t>(k * r + i)].scaled(a.at(j, k));
            }
            if (!acc.is_zero()) return false;
        }
    return true;
}

template <class S>
DPFormT<S> gradient_lift_g(const DPFormT<S>& f, const Mat<S>& a) {
    const int r = f.nvars();
    const int d = f.degree();
    std::vector<DPFormT<S>> ag = apply_matrix(a, gradient_g(f), d - 1);
    DPFormT<S> g(r, d);
    for (const Expo& alpha : monomials(r, d)) {
        int i0 = -1, i1 = -1;
        for (int i = 0; i < r; ++i)
            if (alpha[static_cast<std::size_t>(i)] > 0) {
                if (i0 < 0) i0 = i;
                else if (i1 < 0) i1 = i;
            }
        Expo down = alpha;
        --down[static_cast<std::size_t>(i0)];
        const S szero = f.zero_coeff();
        S c = ag[static_cast<std::size_t>(i0)].coeff_or(down, szero);
        if (i1 >= 0) {
            Expo down2 = alpha;
            --down2[static_cast<std::size_t>(i1)];
            if (!(ag[static_cast<std::size_t>(i1)].coeff_or(down2, szero) == c))
                throw DomainError("gradient lift: inconsistent integration");
        }
        g.add_term(alpha, c);
    }
    return g;
}

// ---------------------------------------------------------- regular splits

SplittingReport split_quadric(const DPForm& f, std::uint64_t seed) {
    const Field K = field_of(f);
    if (K.characteristic() == 2)
        throw DomainError("regular_split: quadrics in characteristic 2 are not supported");
    const int r = f.nvars();
    const Fq zero = Fq::zero(K);
    std::vector<DPForm> hess = contraction_hessian(f);
    Expo zexp(static_cast<std::size_t>(r), 0);
    FqMat h(r, r, zero);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) h.at(i, j) = hess[static_cast<std::size_t>(i * r + j)].coeff_or(zexp, zero);

    SplittingReport rep;
    rep.f = f;
    rep.seed = seed;
    rep.support_idem = support_idempotent(f);
    rep.restricted_dim = -1; // the matrix space is not multiplicatively closed here

    FqMat cur = h;
    while (!cur.is_zero()) {
        // a vector with nonzero quadric value: a basis vector or e_i + e_j
        std::vector<Fq> w(static_cast<std::size_t>(r), zero);
        int wi = -1;
        for (int i = 0; i < r && wi < 0; ++i)
            if (!cur.at(i, i).is_zero()) wi = i;
        if (wi >= 0) {
            w[static_cast<std::size_t>(wi)] = Fq::one(K);
        } else {
            bool found = false;
            for (int i = 0; i < r && !found; ++i)
                for (int j = i + 1; j < r && !found; ++j)
                    if (!cur.at(i, j).is_zero()) {
                        w[static_cast<std::size_t>(i)] = Fq::one(K);
                        w[static_cast<std::size_t>(j)] = Fq::one(K);
                        found = true;
                    }
            if (!found) break;
        }
        std::vector<Fq> u(static_cast<std::size_t>(r), zero);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) u[static_cast<std::size_t>(i)] += cur.at(i, j) * w[static_cast<std::size_t>(j)];
        Fq c = zero;
        for (int i = 0; i < r; ++i) c += w[static_cast<std::size_t>(i)] * u[static_cast<std::size_t>(i)];
        Fq cinv = c.inverse();
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                cur.at(i, j) -= cinv * u[static_cast<std::size_t>(i)] * u[static_cast<std::size_t>(j)];

        SplittingComponent comp;
        comp.component = dp_power_of_linear(u, 2).scaled(cinv);
        FqMat e(r, r, zero);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) e.at(i, j) = cinv * u[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(j)];
        comp.idempotent = e;
        comp.hilbert = hilbert_function(comp.component);
        comp.support_dim = 1;
        rep.components.push_back(std::move(comp));
    }
    return rep;
}

std::vector<FqMat> corner_intersection(const MatrixAlgebraSpace& mf, const FqMat& e) {
    const Field K = mf.field;
    const int r = mf.r;
    FqMat cons(r * r, mf.dim(), Fq::zero(K));
    for (int b = 0; b < mf.dim(); ++b) {
        FqMat diff = mf.basis[static_cast<std::size_t>(b)] - e * mf.basis[static_cast<std::size_t>(b)] * e;
        auto flat = diff.flatten();
        for (int i = 0; i < r * r; ++i) cons.at(i, b) = flat[static_cast<std::size_t>(i)];
    }
    std::vector<FqMat> kept;
    for (const auto& coeff : kernel_basis(cons, Fq::zero(K))) {
        FqMat m(r, r, Fq::zero(K));
        for (int b = 0; b < mf.dim(); ++b)
            m = m + mf.basis[static_cast<std::size_t>(b)].scaled(coeff[static_cast<std::size_t>(b)]);
        kept.push_back(m);
    }
    return matrix_span_basis(kept, r, K);
}

} // namespace

SplittingReport regular_split(const DPForm& f, std::uint64_t seed) {
    if (f.is_zero()) throw DomainError("regular_split of the zero form");
    if (f.degree() <= 1) throw DomainError("regular_split needs degree >= 2");
    if (f.degree() == 2) return split_quadric(f, seed);

    const Field K = field_of(f);
    const int r = f.nvars();
    SplittingReport rep;
    rep.f = f;
    rep.seed = seed;
    rep.support_idem = support_idempotent(f);

    MatrixAlgebraSpace mf = matrix_algebra(f);
    std::vector<FqMat> mfE = corner_intersection(mf, rep.support_idem);
    rep.restricted_dim = static_cast<int>(mfE.size());
    StructAlgebra alg = algebra_from_matrices(mfE, K, rep.support_idem);
    Coid coid = maximal_coid(alg, seed);

    int block_dim_total = 0;
    for (std::size_t ci = 0; ci < coid.size(); ++ci) {
        FqMat e(r, r, Fq::zero(K));
        for (std::size_t b = 0; b < mfE.size(); ++b)
            e = e + mfE[b].scaled(coid.idempotents[ci][b]);
        SplittingComponent comp;
        comp.idempotent = e;
        comp.component = gradient_lift(f, e);
        if (comp.component.is_zero()) throw DomainError("regular_split: zero component (unreachable)");
        comp.hilbert = hilbert_function(comp.component);
        comp.support_dim = static_cast<int>(contraction_space(comp.component, f.degree() - 1).size());
        comp.block_algebra = span_times(mf.basis, e, K);
        comp.residue_degree = coid.residue_degrees[ci];
        block_dim_total += static_cast<int>(comp.block_algebra.size());
        rep.components.push_back(std::move(comp));
    }
    if (block_dim_total != rep.restricted_dim)
        throw DomainError("regular_split: block algebras do not decompose the restricted algebra");
    return rep;
}

SplittingReport group_components(const SplittingReport& report, const std::vector<std::vector<int>>& partition) {
    const DPForm& f = report.f;
    const Field K = field_of(f);
    const int r = f.nvars();
    std::vector<bool> used(report.components.size(), false);
    SplittingReport out;
    out.f = f;
    out.seed = report.seed;
    out.support_idem = report.support_idem;
    out.restricted_dim = report.restricted_dim;
    for (const auto& part : partition) {
        if (part.empty()) throw DomainError("group_components: empty part");
        FqMat e(r, r, Fq::zero(K));
        DPForm g(r, f.degree());
        std::vector<FqMat> blocks;
        for (int idx : part) {
            if (idx < 0 || idx >= static_cast<int>(report.components.size()) || used[static_cast<std::size_t>(idx)])
                throw DomainError("group_components: bad partition");
            used[static_cast<std::size_t>(idx)] = true;
            const auto& c = report.components[static_cast<std::size_t>(idx)];
            e = e + c.idempotent;
            g = g + c.component;
            for (const FqMat& b : c.block_algebra) blocks.push_back(b);
        }
        SplittingComponent comp;
        comp.idempotent = e;
        comp.component = g;
        comp.hilbert = hilbert_function(g);
        comp.support_dim = static_cast<int>(contraction_space(g, f.degree() - 1).size());
        comp.block_algebra = matrix_span_basis(blocks, r, K);
        out.components.push_back(std::move(comp));
    }
    for (bool u : used)
        if (!u) throw DomainError("group_components: partition does not cover all components");
    return out;
}

SplitCheck verify_regular_splitting(const DPForm& f, const std::vector<DPForm>& components) {
    SplitCheck chk;
    auto fail = [&](const std::string& msg) {
        chk.ok = false;
        chk.failures.push_back(msg);
    };
    if (f.is_zero() || components.empty()) {
        fail("empty input");
        return chk;
    }
    const Field K = field_of(f);
    const int r = f.nvars();
    const int d = f.degree();

    DPForm sum(r, d);
    for (const DPForm& g : components) {
        if (g.is_zero()) fail("zero component");
        if (g.degree() != d || g.nvars() != r) {
            fail("component shape mismatch");
            return chk;
        }
        sum = sum + g;
    }
    if (sum != f) fail("components do not sum to f");

    // support independence: dim sum R_{d-1}(g_i) = sum dims
    std::vector<Expo> lin = monomials(r, 1);
    std::vector<std::vector<Fq>> all;
    long dim_sum = 0;
    for (const DPForm& g : components) {
        auto sp = contraction_space(g, d - 1);
        dim_sum += static_cast<long>(sp.size());
        for (const DPForm& v : sp) all.push_back(to_coords(v, lin, Fq::zero(K)));
    }
    long joint = static_cast<long>(span_basis(all, r, Fq::zero(K)).size());
    if (joint != dim_sum) fail("supports are not independent");

    // ann(f)_e = intersection of ann(g_i)_e for e < d; equivalent to every
    // degree-e annihilator of f killing every component
    for (int e = 1; e < d && chk.ok; ++e) {
        for (const DiffOp& op : ann_graded(f, e).basis)
            for (const DPForm& g : components)
                if (!contract(op, g).is_zero()) {
                    fail("annihilator intersection fails in degree " + std::to_string(e));
                    break;
                }
    }
    // native-support count: dim R_{d-1}(f) = sum s_i
    if (static_cast<long>(contraction_space(f, d - 1).size()) != dim_sum)
        fail("support dimensions do not add up to dim R_{d-1}(f)");
    return chk;
}

SplitUpperBound splitting_upper_bound(const DPForm& f) {
    MatrixAlgebraSpace mf = matrix_algebra(f);
    SplitUpperBound ub;
    ub.bound = mf.dim() - 1;
    ub.dummy_variables_caveat = !ann_graded(f, 1).basis.empty();
    return ub;
}

// --------------------------------------------------- degenerate splittings

DPForm ParamForm::specialize(const std::vector<Fq>& tau) const {
    DPForm out(nvars, degree);
    for (const auto& [e, c] : form.terms()) out.add_term(e, c.eval(tau));
    return out;
}

namespace {

using RForm = DPFormT<RatFunc>;
using RMat = Mat<RatFunc>;

struct LevelOut {
    RForm remaining;
    RForm component;
    RForm correction; // f_next - f_prev, a polynomial in the fresh parameter
    RMat next_nilpotent;
};

int rindex(const RMat& a, int cap) {
    RMat p = a;
    for (int k = 1; k <= cap; ++k) {
        if (p.is_zero()) return k;
        p = p * a;
    }
    return -1;
}

// one deformation level: solves N Q N = N (optionally inside a corner
// E Mat E), forms A_t = A + tE and P, checks the defining identities, and
// splits off the finished component t^{-n} phi_P(lift(N)).
LevelOut level_step(const RForm& f, const RMat& a, int pj, const RatFunc& rzero,
                    const std::optional<RMat>& corner) {
    const int r = a.rows();
    const RatFunc rone = rzero.one();
    const MPoly tvar = MPoly::var(rzero.num().field(), rzero.num().nparams(), pj);
    const RatFunc t = RatFunc::of(tvar);

    int idx = rindex(a, r + 1);
    if (idx < 2) throw DomainError("level_step: matrix is zero or not nilpotent");
    const int n = idx - 1;
    RMat npow = a.pow(n);

    // solve N Q N = N, free entries zero; corner constraint Q = E Q E.
    int rows = r * r * (corner ? 2 : 1);
    RMat sys(rows, r * r, rzero);
    std::vector<RatFunc> rhs(static_cast<std::size_t>(rows), rzero);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            int row = i * r + j;
            for (int k = 0; k < r; ++k)
                for (int l = 0; l < r; ++l)
                    sys.at(row, k * r + l) = sys.at(row, k * r + l) + npow.at(i, k) * npow.at(l, j);
            rhs[static_cast<std::size_t>(row)] = npow.at(i, j);
        }
    if (corner) {
        const RMat& e = *corner;
        for (int k = 0; k < r; ++k)
            for (int l = 0; l < r; ++l) {
                int row = r * r + k * r + l;
                sys.at(row, k * r + l) = sys.at(row, k * r + l) + rone;
                for (int u = 0; u < r; ++u)
                    for (int v = 0; v < r; ++v)
                        sys.at(row, u * r + v) = sys.at(row, u * r + v) - e.at(k, u) * e.at(v, l);
            }
    }
    auto qsol = solve(sys, rhs, rzero);
    if (!qsol) throw DomainError("level_step: N Q N = N has no solution (unreachable)");
    RMat q(r, r, rzero);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) q.at(i, j) = (*qsol)[static_cast<std::size_t>(i * r + j)];

    RMat e = q * npow;
    if (e * e != e) throw DomainError("level_step: E = Q N is not idempotent");
    if (npow * e != npow) throw DomainError("level_step: N E != N");

    RMat at = a + e.scaled(t);
    RMat p = RMat::identity(r, rone);
    for (int k = 1; k <= n; ++k) {
        RatFunc tk = rone;
        for (int i = 0; i < k; ++i) tk = tk * t;
        p = p + (a.pow(n - k) * q).scaled(tk);
    }
    // the two identities driving the construction, checked exactly
    RMat atn = at.pow(n);
    if (at.pow(n + 1) != atn.scaled(t)) throw DomainError("level_step: A_t^{n+1} != t A_t^n");
    if (atn != p * npow) throw DomainError("level_step: A_t^n != P A^n");

    if (!symmetric_product_g(f, npow)) throw DomainError("level_step: A^n fails the symmetry check");
    RForm g = gradient_lift_g(f, npow);
    RForm gt = BaseChangeT<RatFunc>(p).apply(g);

    // split g_t by powers of the fresh parameter
    int maxk = 0;
    for (const auto& [ex, c] : gt.terms()) {
        (void)ex;
        if (c.den().degree_in(pj) > 0) throw DomainError("level_step: unexpected parameter in denominator");
        maxk = std::max(maxk, c.num().degree_in(pj));
    }
    std::vector<RForm> parts(static_cast<std::size_t>(maxk) + 1, RForm(r, f.degree()));
    for (const auto& [ex, c] : gt.terms())
        for (int k = 0; k <= maxk; ++k) {
            MPoly nk = c.num().coeff_of_power(pj, k);
            if (!nk.is_zero()) parts[static_cast<std::size_t>(k)].add_term(ex, RatFunc(nk, c.den()));
        }

    LevelOut out;
    out.correction = RForm(r, f.degree());
    RatFunc tk = rone;
    for (int k = 1; k <= maxk - n; ++k) {
        tk = tk * t;
        out.correction = out.correction + parts[static_cast<std::size_t>(n + k)].scaled(tk);
    }
    RForm fnext = f + out.correction;

    MPoly tn = tvar.one();
    for (int i = 0; i < n; ++i) tn = tn * tvar;
    out.component = gt.scaled(RatFunc(tvar.one(), tn));
    out.remaining = fnext - out.component;
    RMat eprime = RMat::identity(r, rone) - atn.scaled(RatFunc(tvar.one(), tn));
    out.next_nilpotent = at * eprime;
    return out;
}

RForm lift_form(const DPForm& f, const Field& K, int nparams) {
    RForm out(f.nvars(), f.degree());
    for (const auto& [e, c] : f.terms())
        out.add_term(e, RatFunc::of(MPoly::constant(K, nparams, c)));
    return out;
}

RMat lift_matrix(const FqMat& a, const Field& K, int nparams) {
    RatFunc z = RatFunc::of(MPoly(K, nparams));
    RMat m(a.rows(), a.cols(), z);
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            m.at(i, j) = RatFunc::of(MPoly::constant(K, nparams, a.at(i, j)));
    return m;
}

MPoly mpoly_lcm(const MPoly& a, const MPoly& b) {
    if (a.is_zero() || b.is_zero()) return a.zero();
    return mpoly_divexact(a * b, mpoly_gcd(a, b));
}

// Reparameterize t_j -> t_j * D_j (descending j) until every coefficient is a
// polynomial; preserves the fiber at t = 0 and the generic splitting.
DPFormT<MPoly> clear_denominators(RForm family, int nparams) {
    for (int j = nparams - 1; j >= 1; --j) {
        MPoly d = MPoly();
        bool have = false;
        for (const auto& [e, c] : family.terms()) {
            (void)e;
            if (c.den().degree_in(j) > 0)
                throw DomainError("clear_denominators: parameter order violated");
            int dk = c.num().degree_in(j);
            for (int k = 1; k <= dk; ++k) {
                MPoly nk = c.num().coeff_of_power(j, k);
                if (nk.is_zero()) continue;
                RatFunc red(nk, c.den());
                if (!have) {
                    d = red.den();
                    have = true;
                } else {
                    d = mpoly_lcm(d, red.den());
                }
            }
        }
        if (!have || d.is_one()) continue;
        MPoly tv = MPoly::var(d.field(), d.nparams(), j);
        MPoly sub = tv * d;
        RForm next(family.nvars(), family.degree());
        for (const auto& [e, c] : family.terms())
            next.add_term(e, RatFunc(c.num().substitute(j, sub), c.den()));
        family = std::move(next);
    }
    DPFormT<MPoly> out(family.nvars(), family.degree());
    for (const auto& [e, c] : family.terms()) {
        if (!c.is_polynomial()) throw DomainError("clear_denominators: residual denominator");
        out.add_term(e, c.num());
    }
    return out;
}

DegenerateSplit finish_degenerate(const DPForm& f0, const Field& K, int nparams, const RForm& total,
                                  std::uint64_t seed) {
    DegenerateSplit out;
    out.nparams = nparams;
    out.family.nvars = f0.nvars();
    out.family.degree = f0.degree();
    out.family.nparams = nparams;
    out.family.field = K;
    out.family.form = clear_denominators(total, nparams);
    if (out.family.at_zero() != f0) throw DomainError("degenerate split: f_0 != f");

    // specialization certificate; retry seeds avoiding degenerate fibers
    std::mt19937_64 rng(seed ^ 0xdec0de);
    for (int attempt = 0; attempt < 5; ++attempt) {
        std::vector<Fq> tau;
        for (int i = 0; i < nparams; ++i) {
            std::uint64_t range = K.is_prime_field() ? K.characteristic() - 1 : 19;
            tau.push_back(Fq::of_int(K, 1 + static_cast<long>(rng() % range)));
        }
        DPForm spec = out.family.specialize(tau);
        if (spec.is_zero()) continue;
        try {
            SplittingReport rep = regular_split(spec, seed + static_cast<std::uint64_t>(attempt));
            out.retries_used = attempt;
            // the family splits at least nparams times; the fiber's maximal
            // splitting may be strictly finer
            if (rep.length() >= static_cast<std::size_t>(nparams) + 1) {
                out.specialization = tau;
                out.split_length = rep.length();
                out.certified = true;
                out.hilbert_at_specialization = hilbert_function(spec);
                return out;
            }
        } catch (const DomainError&) {
            continue;
        }
    }
    out.certified = false;
    return out;
}

} // namespace

DegenerateSplit degenerate_split_onematrix(const DPForm& f, const FqMat& a, std::uint64_t seed) {
    if (f.is_zero()) throw DomainError("degenerate split of the zero form");
    if (f.degree() < 3) throw DomainError("degenerate splitting needs degree >= 3");
    const Field K = field_of(f);
    if (!in_matrix_algebra(f, a)) throw DomainError("matrix is not in the matrix algebra of f");
    int idx = nilpotency_index(a, f.nvars() + 1);
    if (idx < 0) throw DomainError("matrix is not nilpotent");
    if (idx < 2) throw DomainError("matrix is zero");
    const int nparams = idx - 1;

    RatFunc rzero = RatFunc::of(MPoly(K, nparams));
    RForm cur = lift_form(f, K, nparams);
    RMat an = lift_matrix(a, K, nparams);
    RForm total = cur;
    for (int level = 0; level < nparams; ++level) {
        LevelOut out = level_step(cur, an, level, rzero, std::nullopt);
        total = total + out.correction;
        cur = out.remaining;
        an = out.next_nilpotent;
    }
    if (!an.is_zero()) throw DomainError("degenerate split: nilpotent did not exhaust (unreachable)");
    return finish_degenerate(f, K, nparams, total, seed);
}

DegenerateSplit degenerate_split_multimatrix(const DPForm& f, const std::vector<MultiMatrixInput>& inputs,
                                             std::uint64_t seed) {
    if (f.is_zero()) throw DomainError("degenerate split of the zero form");
    if (f.degree() < 3) throw DomainError("degenerate splitting needs degree >= 3");
    if (inputs.empty()) throw DomainError("no matrices given");
    const Field K = field_of(f);
    const int r = f.nvars();

    std::vector<int> indices;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        const auto& in = inputs[i];
        if (in.e * in.e != in.e) throw DomainError("E_i is not idempotent");
        if (in.e * in.a != in.a || in.a * in.e != in.a)
            throw DomainError("E_i A_i = A_i E_i = A_i fails");
        for (std::size_t j = 0; j < inputs.size(); ++j)
            if (i != j && !(in.e * inputs[j].e).is_zero())
                throw DomainError("idempotents are not orthogonal");
        int idx = nilpotency_index(in.a, r + 1);
        if (idx < 2) throw DomainError("A_i is zero or not nilpotent");
        if (in.min_power < 1 || in.min_power >= idx) throw DomainError("need 1 <= a_i < index(A_i)");
        FqMat pw = in.a;
        for (int k = 1; k < idx; ++k) {
            if (k >= in.min_power && !in_matrix_algebra(f, pw))
                throw DomainError("A_i^k not in the matrix algebra for some k >= a_i");
            pw = pw * in.a;
        }
        indices.push_back(idx);
    }
    int nparams = 0;
    for (std::size_t i = 0; i < inputs.size(); ++i) nparams += indices[i] - inputs[i].min_power;
    if (nparams == 0) throw DomainError("nothing to deform: sum (index - a_i) = 0");

    RatFunc rzero = RatFunc::of(MPoly(K, nparams));
    RForm cur = lift_form(f, K, nparams);
    RForm total = cur;
    int pj = 0;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        RMat an = lift_matrix(inputs[i].a, K, nparams);
        RMat corner = lift_matrix(inputs[i].e, K, nparams);
        int levels = indices[i] - inputs[i].min_power;
        for (int level = 0; level < levels; ++level) {
            LevelOut out = level_step(cur, an, pj++, rzero, corner);
            total = total + out.correction;
            cur = out.remaining;
            an = out.next_nilpotent;
        }
    }
    return finish_degenerate(f, K, nparams, total, seed);
}

// --------------------------------------------------------- the obstruction

namespace {

// determinant of a small matrix of univariate polynomials
UPoly upoly_det(const std::vector<UPoly>& m, int n, const Field& K) {
    if (n == 1) return m[0];
    UPoly acc = UPoly::zero(K);
    for (int i = 0; i < n; ++i) {
        if (m[static_cast<std::size_t>(i * n)].is_zero()) continue;
        std::vector<UPoly> minor;
        for (int r = 0; r < n; ++r) {
            if (r == i) continue;
            for (int c = 1; c < n; ++c) minor.push_back(m[static_cast<std::size_t>(r * n + c)]);
        }
        UPoly term = m[static_cast<std::size_t>(i * n)] * upoly_det(minor, n - 1, K);
        acc = (i % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

// does some nonzero member of the pencil x A + y B have rank <= k?
bool pencil_rank_le(const FqMat& a, const FqMat& b, int k, const Field& K, std::uint64_t seed) {
    const int s = a.rows();
    if (k >= s) return true;
    if (rank(a) <= k) return true; // the member at (1 : 0)
    // members t A + B: common vanishing of all (k+1)-minors as polynomials in t
    std::vector<int> rows_sel, cols_sel;
    UPoly g = UPoly::zero(K);
    std::vector<int> ridx(static_cast<std::size_t>(k) + 1), cidx(static_cast<std::size_t>(k) + 1);
    std::vector<bool> done(1, false);
    // iterate over all (k+1)-subsets of rows and columns
    std::vector<int> rsel(static_cast<std::size_t>(k) + 1);
    for (int i = 0; i <= k; ++i) rsel[static_cast<std::size_t>(i)] = i;
    auto next_subset = [&](std::vector<int>& sel) {
        int kk = static_cast<int>(sel.size());
        int pos = kk - 1;
        while (pos >= 0 && sel[static_cast<std::size_t>(pos)] == s - kk + pos) --pos;
        if (pos < 0) return false;
        ++sel[static_cast<std::size_t>(pos)];
        for (int j = pos + 1; j < kk; ++j) sel[static_cast<std::size_t>(j)] = sel[static_cast<std::size_t>(j - 1)] + 1;
        return true;
    };
    bool first_minor = true;
    do {
        std::vector<int> csel(static_cast<std::size_t>(k) + 1);
        for (int i = 0; i <= k; ++i) csel[static_cast<std::size_t>(i)] = i;
        do {
            std::vector<UPoly> m;
            for (int i = 0; i <= k; ++i)
                for (int j = 0; j <= k; ++j) {
                    std::vector<Fq> cs = {b.at(rsel[static_cast<std::size_t>(i)], csel[static_cast<std::size_t>(j)]),
                                          a.at(rsel[static_cast<std::size_t>(i)], csel[static_cast<std::size_t>(j)])};
                    m.push_back(UPoly(K, cs));
                }
            UPoly det = upoly_det(m, k + 1, K);
            if (first_minor) {
                g = det;
                first_minor = false;
            } else {
                g = gcd(g, det);
            }
            if (!g.is_zero() && g.degree() == 0) return false; // minors have no common root
        } while (next_subset(csel));
    } while (next_subset(rsel));
    if (g.is_zero()) return true; // every member drops rank
    return !roots_in_field(g, seed).empty();
}

} // namespace

ObstructionReport nilpotent_rank_obstruction(const DPForm& h, int ambient_vars, int target_length,
                                             std::uint64_t seed) {
    if (h.is_zero()) throw DomainError("zero core form");
    const Field K = field_of(h);
    const int s = h.nvars();
    const int r = ambient_vars;
    const int m = target_length;
    if (r < s) throw DomainError("ambient variable count below the core");
    if (m <= r - s + 1) throw DomainError("target length must exceed r - s + 1");

    SplittingReport rep = regular_split(h, seed);
    if (rep.length() != 1) throw DomainError("core form splits regularly; obstruction test does not apply");
    if (rep.components.front().residue_degree != 1)
        throw DomainError("matrix algebra is local with a residue extension; test does not apply");

    MatrixAlgebraSpace mh = matrix_algebra(h);
    StructAlgebra alg = algebra_from_matrices(mh.basis, K);
    std::vector<std::vector<Fq>> nil = nilradical(alg);

    ObstructionReport out;
    out.rank_bound = s / (m - r + s);
    out.exact = true;
    if (nil.empty()) {
        out.min_nilpotent_rank = -1;
        out.obstructed = true;
        return out;
    }
    std::vector<FqMat> nilmats;
    for (const auto& coords : nil) {
        FqMat n(s, s, Fq::zero(K));
        for (std::size_t b = 0; b < coords.size(); ++b)
            n = n + mh.basis[b].scaled(coords[b]);
        nilmats.push_back(n);
    }
    if (nilmats.size() == 1) {
        out.min_nilpotent_rank = rank(nilmats[0]);
    } else if (nilmats.size() == 2) {
        for (int k = 1; k <= s; ++k) {
            if (pencil_rank_le(nilmats[0], nilmats[1], k, K, seed)) {
                out.min_nilpotent_rank = k;
                break;
            }
        }
    } else {
        // grid sample over small coefficients (lowest rank found)
        out.exact = false;
        int best = s + 1;
        std::vector<long> grid;
        if (K.is_prime_field()) {
            long top = static_cast<long>(std::min<std::uint64_t>(K.characteristic() - 1, 4));
            for (long v = 0; v <= top; ++v) grid.push_back(v);
        } else {
            grid = {-2, -1, 0, 1, 2};
        }
        std::vector<std::size_t> idx(nilmats.size(), 0);
        std::vector<long> coeff(nilmats.size(), 0);
        std::size_t total = 1;
        for (std::size_t i = 0; i < nilmats.size(); ++i) total *= grid.size();
        for (std::size_t it = 0; it < total; ++it) {
            std::size_t rem = it;
            FqMat n(s, s, Fq::zero(K));
            bool nonzero = false;
            for (std::size_t i = 0; i < nilmats.size(); ++i) {
                long c = grid[rem % grid.size()];
                rem /= grid.size();
                if (c != 0) nonzero = true;
                n = n + nilmats[i].scaled(Fq::of_int(K, c));
            }
            if (!nonzero || n.is_zero()) continue;
            best = std::min(best, rank(n));
        }
        out.min_nilpotent_rank = best <= s ? best : -1;
    }
    out.obstructed = out.min_nilpotent_rank < 0 || out.min_nilpotent_rank > out.rank_bound;
    return out;
}

} // namespace apolar
