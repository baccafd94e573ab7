#include "apolar/matrix_algebra.hpp"

namespace apolar {

namespace {

Field field_of(const DPForm& f) {
    if (f.is_zero()) throw DomainError("zero form");
    return f.terms().begin()->second.field();
}

FqMat mat_from_flat(int r, const std::vector<Fq>& v, const Fq& zero) {
    FqMat m(r, r, zero);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) m.at(i, j) = v[static_cast<std::size_t>(i * r + j)];
    return m;
}

} // namespace

std::optional<std::vector<Fq>> MatrixAlgebraSpace::coordinates(const FqMat& a) const {
    if (basis.empty()) return std::nullopt;
    const Fq zero = Fq::zero(field);
    FqMat m(r * r, static_cast<int>(basis.size()), zero);
    for (std::size_t b = 0; b < basis.size(); ++b) {
        auto flat = basis[b].flatten();
        for (int i = 0; i < r * r; ++i) m.at(i, static_cast<int>(b)) = flat[static_cast<std::size_t>(i)];
    }
    return solve(m, a.flatten(), zero);
}

std::vector<DPForm> gradient(const DPForm& f) {
    std::vector<DPForm> g;
    for (int i = 0; i < f.nvars(); ++i) g.push_back(diff_var(i, f));
    return g;
}

std::vector<DPForm> contraction_hessian(const DPForm& f) {
    std::vector<DPForm> h;
    for (int i = 0; i < f.nvars(); ++i) {
        DPForm fi = diff_var(i, f);
        for (int j = 0; j < f.nvars(); ++j) h.push_back(diff_var(j, fi));
    }
    return h;
}

bool in_matrix_algebra(const DPForm& f, const FqMat& a) {
    const int r = f.nvars();
    std::vector<DPForm> h = contraction_hessian(f);
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) {
            DPForm acc(r, f.degree() - 2 >= 0 ? f.degree() - 2 : 0);
            for (int k = 0; k < r; ++k) {
                acc = acc + h[static_cast<std::size_t>(k * r + j)].scaled(a.at(i, k));
                acc = acc - h[static_cast<std::size_t>(k * r + i)].scaled(a.at(j, k));
            }
            if (!acc.is_zero()) return false;
        }
    return true;
}

MatrixAlgebraSpace matrix_algebra(const DPForm& f) {
    if (f.is_zero()) throw DomainError("matrix_algebra of the zero form");
    if (f.degree() < 1) throw DomainError("matrix_algebra needs degree >= 1");
    const Field K = field_of(f);
    const int r = f.nvars();
    const int d = f.degree();
    MatrixAlgebraSpace out;
    out.r = r;
    out.field = K;

    std::vector<DPForm> h = contraction_hessian(f);
    std::vector<Expo> monos = d >= 2 ? monomials(r, d - 2) : std::vector<Expo>{};
    const Fq zero = Fq::zero(K);
    int nrows = static_cast<int>(monos.size()) * r * (r - 1) / 2;
    FqMat sys(std::max(nrows, 1), r * r, zero);
    int row = 0;
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) {
            for (std::size_t mi = 0; mi < monos.size(); ++mi) {
                for (int k = 0; k < r; ++k) {
                    // unknown A_ik multiplies H_kj, unknown A_jk multiplies -H_ki
                    sys.at(row, i * r + k) += h[static_cast<std::size_t>(k * r + j)].coeff_or(monos[mi], zero);
                    sys.at(row, j * r + k) -= h[static_cast<std::size_t>(k * r + i)].coeff_or(monos[mi], zero);
                }
                ++row;
            }
        }

    std::vector<std::vector<Fq>> ker = kernel_basis(sys, zero);
    std::vector<std::vector<Fq>> canon = span_basis(ker, r * r, zero);
    for (const auto& v : canon) out.basis.push_back(mat_from_flat(r, v, zero));

    out.contains_identity = out.contains(FqMat::identity(r, Fq::one(K)));

    // verify closure and commutativity rather than trusting the degree bound
    out.closed_under_mult = true;
    out.commutative = true;
    for (const FqMat& a : out.basis)
        for (const FqMat& b : out.basis) {
            FqMat p = a * b;
            if (!out.contains(p)) out.closed_under_mult = false;
            if (p != b * a) out.commutative = false;
            if (!out.closed_under_mult && !out.commutative) return out;
        }
    return out;
}

DPForm gradient_lift(const DPForm& f, const FqMat& a) {
    if (!in_matrix_algebra(f, a)) throw DomainError("gradient_lift: matrix fails the symmetry check");
    const int r = f.nvars();
    const int d = f.degree();
    if (d < 1) throw DomainError("gradient_lift needs degree >= 1");
    std::vector<DPForm> grad = gradient(f);
    std::vector<DPForm> ag;
    for (int i = 0; i < r; ++i) {
        DPForm acc(r, d - 1);
        for (int k = 0; k < r; ++k) acc = acc + grad[static_cast<std::size_t>(k)].scaled(a.at(i, k));
        ag.push_back(acc);
    }
    DPForm g(r, d);
    for (const Expo& alpha : monomials(r, d)) {
        int i0 = -1, i1 = -1;
        for (int i = 0; i < r; ++i)
            if (alpha[static_cast<std::size_t>(i)] > 0) {
                if (i0 < 0) i0 = i;
                else if (i1 < 0) i1 = i;
            }
        Expo down = alpha;
        --down[static_cast<std::size_t>(i0)];
        const Fq fzero = Fq::zero(f.terms().begin()->second.field());
        Fq c = ag[static_cast<std::size_t>(i0)].coeff_or(down, fzero);
        if (i1 >= 0) {
            Expo down2 = alpha;
            --down2[static_cast<std::size_t>(i1)];
            if (ag[static_cast<std::size_t>(i1)].coeff_or(down2, fzero) != c)
                throw DomainError("gradient_lift: inconsistent integration (not symmetric)");
        }
        g.add_term(alpha, c);
    }
    return g;
}

std::vector<FqMat> gradient_kill_space(const DPForm& f) {
    const Field K = field_of(f);
    const int r = f.nvars();
    std::vector<DiffOp> ann1 = ann_graded(f, 1).basis;
    std::vector<Expo> lin = monomials(r, 1);
    std::vector<FqMat> out;
    // rows of A range over ann(f)_1 independently
    for (int i = 0; i < r; ++i)
        for (const DiffOp& a1 : ann1) {
            FqMat m(r, r, Fq::zero(K));
            auto v = to_coords(a1, lin, Fq::zero(K));
            // lin[j] is the monomial d_{j}; lex descending on degree-1 monomials
            // lists d_1 first
            for (int j = 0; j < r; ++j) m.at(i, j) = v[static_cast<std::size_t>(j)];
            out.push_back(m);
        }
    return matrix_span_basis(out, r, K);
}

FqMat support_idempotent(const DPForm& f) {
    if (f.is_zero()) throw DomainError("support_idempotent of the zero form");
    const Field K = field_of(f);
    const int r = f.nvars();
    const int d = f.degree();
    // coordinate vectors of R_{d-1}(f) inside the span of x_1..x_r
    std::vector<Expo> lin = monomials(r, 1);
    std::vector<std::vector<Fq>> rows;
    for (const Expo& m : monomials(r, d - 1)) {
        DPForm g = contract(op_monomial(K, r, m, Fq::one(K)), f);
        rows.push_back(to_coords(g, lin, Fq::zero(K)));
    }
    FqMat mat = FqMat::from_rows(rows, r, Fq::zero(K));
    std::vector<int> pivots = rref_in_place(mat);
    int s = static_cast<int>(pivots.size());
    std::vector<bool> is_pivot(static_cast<std::size_t>(r), false);
    for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;

    // columns: basis of the support, then non-pivot coordinate directions
    FqMat p(r, r, Fq::zero(K));
    for (int b = 0; b < s; ++b)
        for (int i = 0; i < r; ++i) p.at(i, b) = mat.at(b, i);
    int c = s;
    for (int i = 0; i < r; ++i)
        if (!is_pivot[static_cast<std::size_t>(i)]) p.at(i, c++) = Fq::one(K);
    auto pinv = inverse(p);
    if (!pinv) throw DomainError("support_idempotent: degenerate basis (unreachable)");
    FqMat diag(r, r, Fq::zero(K));
    for (int i = 0; i < s; ++i) diag.at(i, i) = Fq::one(K);
    return p * diag * *pinv;
}

std::vector<FqMat> matrix_span_basis(const std::vector<FqMat>& gens, int r, const Field& K) {
    std::vector<std::vector<Fq>> rows;
    for (const FqMat& g : gens) rows.push_back(g.flatten());
    std::vector<FqMat> out;
    for (const auto& v : span_basis(rows, r * r, Fq::zero(K)))
        out.push_back(mat_from_flat(r, v, Fq::zero(K)));
    return out;
}

bool matrix_span_contains(const std::vector<FqMat>& basis, const FqMat& a, const Field& K) {
    std::vector<std::vector<Fq>> rows;
    for (const FqMat& g : basis) rows.push_back(g.flatten());
    auto b = span_basis(rows, a.rows() * a.cols(), Fq::zero(K));
    return span_contains(b, a.flatten(), a.rows() * a.cols(), Fq::zero(K));
}

std::vector<FqMat> span_times(const std::vector<FqMat>& basis, const FqMat& e, const Field& K) {
    std::vector<FqMat> prods;
    for (const FqMat& b : basis) prods.push_back(b * e);
    return matrix_span_basis(prods, e.rows(), K);
}

MatrixAlgebraSpace restricted_algebra(const DPForm& f, const FqMat& e) {
    const Field K = field_of(f);
    const int r = f.nvars();
    if (e * e != e) throw DomainError("restricted_algebra: E is not idempotent");
    if (!in_matrix_algebra(f, e)) throw DomainError("restricted_algebra: E not in the matrix algebra");
    std::vector<DPForm> grad = gradient(f);
    for (int i = 0; i < r; ++i) {
        DPForm acc(r, f.degree() - 1);
        for (int k = 0; k < r; ++k) acc = acc + grad[static_cast<std::size_t>(k)].scaled(e.at(i, k));
        if (acc != grad[static_cast<std::size_t>(i)])
            throw DomainError("restricted_algebra: E does not fix the gradient");
    }

    MatrixAlgebraSpace mf = matrix_algebra(f);
    // intersect with E Mat E: A = E A E as linear constraints on the span
    std::vector<FqMat> kept;
    std::vector<std::vector<Fq>> rows;
    for (const FqMat& b : mf.basis) rows.push_back(b.flatten());
    // solve for span elements fixed by A -> EAE; build constraint matrix on
    // coefficients c_b: sum c_b (B - E B E) = 0
    FqMat cons(r * r, mf.dim(), Fq::zero(K));
    for (int b = 0; b < mf.dim(); ++b) {
        FqMat diff = mf.basis[static_cast<std::size_t>(b)] - e * mf.basis[static_cast<std::size_t>(b)] * e;
        auto flat = diff.flatten();
        for (int i = 0; i < r * r; ++i) cons.at(i, b) = flat[static_cast<std::size_t>(i)];
    }
    for (const auto& coeff : kernel_basis(cons, Fq::zero(K))) {
        FqMat m(r, r, Fq::zero(K));
        for (int b = 0; b < mf.dim(); ++b)
            m = m + mf.basis[static_cast<std::size_t>(b)].scaled(coeff[static_cast<std::size_t>(b)]);
        kept.push_back(m);
    }
    MatrixAlgebraSpace out;
    out.r = r;
    out.field = K;
    out.basis = matrix_span_basis(kept, r, K);
    out.contains_identity = out.contains(FqMat::identity(r, Fq::one(K))); // identity of the ambient ring
    out.closed_under_mult = true;
    out.commutative = true;
    for (const FqMat& a : out.basis)
        for (const FqMat& b : out.basis) {
            if (!out.contains(a * b)) out.closed_under_mult = false;
            if (a * b != b * a) out.commutative = false;
        }
    return out;
}

GradedMatrixSpace graded_matrix_space(const DPForm& f, int e) {
    if (e < 0 || e >= f.degree()) throw DomainError("graded_matrix_space: degree out of range");
    const Field K = field_of(f);
    const int r = f.nvars();
    const int d = f.degree();
    std::vector<Expo> emonos = monomials(r, e);
    const int ne = static_cast<int>(emonos.size());
    std::vector<DPForm> h = contraction_hessian(f);

    // unknowns: coefficient of monomial c in entry (i,k)
    int ncols = r * r * ne;
    int tdeg = d - 2 - e;
    std::vector<Expo> tmonos = tdeg >= 0 ? monomials(r, tdeg) : std::vector<Expo>{};
    int nrows = static_cast<int>(tmonos.size()) * r * (r - 1) / 2;
    FqMat sys(std::max(nrows, 1), ncols, Fq::zero(K));
    int row = 0;
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) {
            for (const Expo& t : tmonos) {
                for (int k = 0; k < r; ++k)
                    for (int c = 0; c < ne; ++c) {
                        // coefficient of t in (monomial c) applied to H_kj
                        DiffOp mc = op_monomial(K, r, emonos[static_cast<std::size_t>(c)], Fq::one(K));
                        DPForm a1 = contract(mc, h[static_cast<std::size_t>(k * r + j)]);
                        DPForm a2 = contract(mc, h[static_cast<std::size_t>(k * r + i)]);
                        sys.at(row, (i * r + k) * ne + c) += a1.coeff_or(t, Fq::zero(K));
                        sys.at(row, (j * r + k) * ne + c) -= a2.coeff_or(t, Fq::zero(K));
                    }
                ++row;
            }
        }
    GradedMatrixSpace out;
    out.r = r;
    out.e = e;
    auto ker = kernel_basis(sys, Fq::zero(K));
    auto canon = span_basis(ker, ncols, Fq::zero(K));
    for (const auto& v : canon) {
        std::vector<DiffOp> grid;
        for (int i = 0; i < r; ++i)
            for (int k = 0; k < r; ++k) {
                DiffOp entry(r, e);
                for (int c = 0; c < ne; ++c)
                    entry.add_term(emonos[static_cast<std::size_t>(c)], v[static_cast<std::size_t>((i * r + k) * ne + c)]);
                grid.push_back(entry);
            }
        out.basis.push_back(std::move(grid));
    }
    return out;
}

std::vector<DPForm> apply_graded(const std::vector<DiffOp>& a, int r, const DPForm& f) {
    std::vector<DPForm> grad = gradient(f);
    std::vector<DPForm> out;
    for (int i = 0; i < r; ++i) {
        DPForm acc(r, f.degree() - 1 - (a.empty() ? 0 : a[0].degree()));
        for (int k = 0; k < r; ++k)
            acc = acc + contract(a[static_cast<std::size_t>(i * r + k)], grad[static_cast<std::size_t>(k)]);
        out.push_back(acc);
    }
    return out;
}

DPForm graded_gradient_lift(const DPForm& f, int e, const std::vector<DiffOp>& a) {
    const int r = f.nvars();
    const int d = f.degree();
    std::vector<DPForm> ag = apply_graded(a, r, f);
    DPForm g(r, d - e);
    for (const Expo& alpha : monomials(r, d - e)) {
        int i0 = -1, i1 = -1;
        for (int i = 0; i < r; ++i)
            if (alpha[static_cast<std::size_t>(i)] > 0) {
                if (i0 < 0) i0 = i;
                else if (i1 < 0) i1 = i;
            }
        if (i0 < 0) continue;
        Expo down = alpha;
        --down[static_cast<std::size_t>(i0)];
        const Fq fzero = Fq::zero(f.terms().begin()->second.field());
        Fq c = ag[static_cast<std::size_t>(i0)].coeff_or(down, fzero);
        if (i1 >= 0) {
            Expo down2 = alpha;
            --down2[static_cast<std::size_t>(i1)];
            if (ag[static_cast<std::size_t>(i1)].coeff_or(down2, fzero) != c)
                throw DomainError("graded_gradient_lift: inconsistent integration");
        }
        g.add_term(alpha, c);
    }
    return g;
}

long graded_lift_image_dim(const DPForm& f, int e) {
    const Field K = field_of(f);
    GradedMatrixSpace sp = graded_matrix_space(f, e);
    std::vector<DPForm> imgs;
    for (const auto& a : sp.basis) imgs.push_back(graded_gradient_lift(f, e, a));
    return form_span_dim(imgs, f.nvars(), f.degree() - e, K);
}

long graded_lift_kernel_dim(const DPForm& f, int e) {
    GradedMatrixSpace sp = graded_matrix_space(f, e);
    return static_cast<long>(sp.basis.size()) - graded_lift_image_dim(f, e);
}

ContractionModules contraction_modules(const DPForm& f) {
    const Field K = field_of(f);
    const int d = f.degree();
    ContractionModules cm;
    cm.F.resize(static_cast<std::size_t>(d) + 1);
    cm.G.resize(static_cast<std::size_t>(d) + 1);
    for (int e = 0; e <= d; ++e) {
        cm.F[static_cast<std::size_t>(e)] = contraction_space(f, e);
        if (e < d) {
            GradedMatrixSpace sp = graded_matrix_space(f, e);
            std::vector<DPForm> imgs;
            for (const auto& a : sp.basis) imgs.push_back(graded_gradient_lift(f, e, a));
            cm.G[static_cast<std::size_t>(e)] = form_span_basis(imgs, f.nvars(), d - e, K);
        } else {
            // G_d is the scalars
            DPForm one(f.nvars(), 0);
            one.add_term(Expo(static_cast<std::size_t>(f.nvars()), 0), Fq::one(K));
            cm.G[static_cast<std::size_t>(e)] = {one};
        }
    }
    return cm;
}

namespace {

std::vector<DiffOp> lift_of(const DPForm& f, int e, const DPForm& g) {
    const Field K = field_of(f);
    GradedMatrixSpace sp = graded_matrix_space(f, e);
    std::vector<Expo> monos = monomials(f.nvars(), f.degree() - e);
    FqMat m(static_cast<int>(monos.size()), static_cast<int>(sp.basis.size()), Fq::zero(K));
    for (std::size_t b = 0; b < sp.basis.size(); ++b) {
        DPForm img = graded_gradient_lift(f, e, sp.basis[b]);
        auto v = to_coords(img, monos, Fq::zero(K));
        for (std::size_t i = 0; i < monos.size(); ++i) m.at(static_cast<int>(i), static_cast<int>(b)) = v[i];
    }
    auto sol = solve(m, to_coords(g, monos, Fq::zero(K)), Fq::zero(K));
    if (!sol) throw DomainError("star_product: operand not in the lift image");
    std::vector<DiffOp> a(static_cast<std::size_t>(f.nvars() * f.nvars()), DiffOp(f.nvars(), e));
    for (std::size_t b = 0; b < sp.basis.size(); ++b) {
        if ((*sol)[b].is_zero()) continue;
        for (std::size_t i = 0; i < a.size(); ++i)
            a[i] = a[i] + sp.basis[b][i].scaled((*sol)[b]);
    }
    return a;
}

} // namespace

DPForm star_product(const DPForm& f, int a_deg, const DPForm& g, int b_deg, const DPForm& h) {
    if (a_deg + b_deg > f.degree() - 3)
        throw DomainError("star_product: degree bound a+b <= d-3 violated");
    const int r = f.nvars();
    std::vector<DiffOp> A = lift_of(f, a_deg, g);
    std::vector<DiffOp> B = lift_of(f, b_deg, h);
    std::vector<DiffOp> AB(static_cast<std::size_t>(r * r), DiffOp(r, a_deg + b_deg));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            DiffOp acc(r, a_deg + b_deg);
            for (int k = 0; k < r; ++k)
                acc = acc + op_mul(A[static_cast<std::size_t>(i * r + k)], B[static_cast<std::size_t>(k * r + j)]);
            AB[static_cast<std::size_t>(i * r + j)] = acc;
        }
    return graded_gradient_lift(f, a_deg + b_deg, AB);
}

OperatorAlgebra operator_algebra(const DPForm& f, int e) {
    if (e < 1) throw DomainError("operator_algebra needs e >= 1");
    if (2 * e > f.degree()) throw DomainError("operator_algebra: 2e exceeds the degree");
    const Field K = field_of(f);
    const int r = f.nvars();
    const int d = f.degree();
    OperatorAlgebra out;
    out.e = e;
    out.op_basis = monomials(r, e);
    const int n = static_cast<int>(out.op_basis.size());
    out.n = n;

    // pairing matrix: (D_i D_j)(f), entries of degree d - 2e
    std::vector<DPForm> h;
    for (int i = 0; i < n; ++i) {
        DPForm fi = contract(op_monomial(K, r, out.op_basis[static_cast<std::size_t>(i)], Fq::one(K)), f);
        for (int j = 0; j < n; ++j)
            h.push_back(contract(op_monomial(K, r, out.op_basis[static_cast<std::size_t>(j)], Fq::one(K)), fi));
    }
    std::vector<Expo> tmonos = monomials(r, d - 2 * e);
    int nrows = static_cast<int>(tmonos.size()) * n * (n - 1) / 2;
    FqMat sys(std::max(nrows, 1), n * n, Fq::zero(K));
    int row = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (const Expo& t : tmonos) {
                for (int k = 0; k < n; ++k) {
                    sys.at(row, i * n + k) += h[static_cast<std::size_t>(k * n + j)].coeff_or(t, Fq::zero(K));
                    sys.at(row, j * n + k) -= h[static_cast<std::size_t>(k * n + i)].coeff_or(t, Fq::zero(K));
                }
                ++row;
            }
    MatrixAlgebraSpace& sp = out.space;
    sp.r = n;
    sp.field = K;
    auto ker = kernel_basis(sys, Fq::zero(K));
    auto canon = span_basis(ker, n * n, Fq::zero(K));
    for (const auto& v : canon) sp.basis.push_back(mat_from_flat(n, v, Fq::zero(K)));
    sp.contains_identity = sp.contains(FqMat::identity(n, Fq::one(K)));
    sp.closed_under_mult = true;
    sp.commutative = true;
    for (const FqMat& a : sp.basis)
        for (const FqMat& b : sp.basis) {
            if (!sp.contains(a * b)) sp.closed_under_mult = false;
            if (a * b != b * a) sp.commutative = false;
        }
    return out;
}

} // namespace apolar
