#include "apolar/matrix_ideals.hpp"

#include "apolar/factor.hpp"

namespace apolar {

namespace {

Field field_of_mats(const std::vector<FqMat>& ms) {
    if (ms.empty()) throw DomainError("empty matrix set");
    return ms.front().at(0, 0).field();
}

// minors of (d : A d): entries sum_k (A_jk d_i d_k - A_ik d_j d_k), i < j
std::vector<DiffOp> single_minors(const FqMat& a, const Field& K) {
    const int r = a.rows();
    std::vector<DiffOp> out;
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) {
            DiffOp q(r, 2);
            for (int k = 0; k < r; ++k) {
                Expo e1(static_cast<std::size_t>(r), 0);
                ++e1[static_cast<std::size_t>(i)];
                ++e1[static_cast<std::size_t>(k)];
                q.add_term(e1, a.at(j, k));
                Expo e2(static_cast<std::size_t>(r), 0);
                ++e2[static_cast<std::size_t>(j)];
                ++e2[static_cast<std::size_t>(k)];
                q.add_term(e2, Fq::zero(K) - a.at(i, k));
            }
            if (!q.is_zero()) out.push_back(q);
        }
    return out;
}

// minors of (A d : B d)
std::vector<DiffOp> pair_minors(const FqMat& a, const FqMat& b, const Field& K) {
    (void)K;
    const int r = a.rows();
    std::vector<DiffOp> out;
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) {
            DiffOp q(r, 2);
            for (int k = 0; k < r; ++k)
                for (int l = 0; l < r; ++l) {
                    // (A d)_i (B d)_j - (A d)_j (B d)_i
                    Expo e(static_cast<std::size_t>(r), 0);
                    ++e[static_cast<std::size_t>(k)];
                    ++e[static_cast<std::size_t>(l)];
                    Fq c = a.at(i, k) * b.at(j, l) - a.at(j, k) * b.at(i, l);
                    q.add_term(e, c);
                }
            if (!q.is_zero()) out.push_back(q);
        }
    return out;
}

} // namespace

MatrixSetIdeal minor_ideal(const std::vector<FqMat>& ms) {
    const Field K = field_of_mats(ms);
    const int r = ms.front().rows();
    std::vector<DiffOp> all;
    for (const FqMat& a : ms)
        for (DiffOp& q : single_minors(a, K)) all.push_back(std::move(q));
    MatrixSetIdeal out;
    out.nvars = r;
    out.field = K;
    out.quadrics = op_span_basis(all, r, 2, K);
    return out;
}

MatrixSetIdeal pair_minor_ideal(const std::vector<FqMat>& ms) {
    const Field K = field_of_mats(ms);
    const int r = ms.front().rows();
    std::vector<DiffOp> all;
    for (std::size_t x = 0; x < ms.size(); ++x)
        for (std::size_t y = x; y < ms.size(); ++y)
            for (DiffOp& q : pair_minors(ms[x], ms[y], K)) all.push_back(std::move(q));
    MatrixSetIdeal out;
    out.nvars = r;
    out.field = K;
    out.quadrics = op_span_basis(all, r, 2, K);
    return out;
}

std::vector<DPForm> forms_with_matrices(const std::vector<FqMat>& ms, int d) {
    const Field K = field_of_mats(ms);
    const int r = ms.front().rows();
    MatrixSetIdeal im = minor_ideal(ms);
    if (d < 2) {
        std::vector<DPForm> all;
        for (const Expo& m : monomials(r, d)) all.push_back(dp_monomial(K, r, m, Fq::one(K)));
        return all;
    }
    return perp_ops(im.piece(d), r, d, K);
}

std::vector<FqMat> generated_algebra(const std::vector<FqMat>& ms) {
    const Field K = field_of_mats(ms);
    const int r = ms.front().rows();
    std::vector<FqMat> span = matrix_span_basis(ms, r, K);
    for (;;) {
        std::vector<FqMat> bigger = span;
        for (const FqMat& a : span)
            for (const FqMat& b : span) bigger.push_back(a * b);
        bigger = matrix_span_basis(bigger, r, K);
        if (bigger.size() == span.size()) return span;
        span = std::move(bigger);
    }
}

ClosureReport closure_identities(const std::vector<FqMat>& ms, int degree_bound) {
    const Field K = field_of_mats(ms);
    const int r = ms.front().rows();
    if (!matrix_span_contains(matrix_span_basis(ms, r, K), FqMat::identity(r, Fq::one(K)), K))
        throw DomainError("closure identities need the identity matrix in the set");

    ClosureReport rep;
    rep.degree_bound = degree_bound;
    MatrixSetIdeal im = minor_ideal(ms);
    MatrixSetIdeal ichk = pair_minor_ideal(ms);
    for (int e = 3; e <= degree_bound; ++e)
        if (im.piece(e) != ichk.piece(e)) rep.high_degree_agreement = false;

    std::vector<FqMat> gen = generated_algebra(ms);
    MatrixSetIdeal igen = minor_ideal(gen);
    for (int e = 2; e <= degree_bound; ++e)
        if (igen.piece(e) != ichk.piece(e)) rep.generated_matches_pairs = false;

    // stacked-minor form of the generated-algebra ideal: minors over all
    // column pairs of (d : A_1 d : ... : A_n d)
    std::vector<DiffOp> stacked;
    std::vector<FqMat> cols = ms;
    for (std::size_t x = 0; x < cols.size(); ++x)
        for (std::size_t y = x + 1; y < cols.size(); ++y)
            for (DiffOp& q : pair_minors(cols[x], cols[y], K)) stacked.push_back(std::move(q));
    auto lhs = op_span_basis(stacked, r, 2, K);
    if (lhs != igen.quadrics) rep.stacked_minor_match = false;
    return rep;
}

EigenLocus eigen_locus(const std::vector<FqMat>& ms, std::uint64_t seed) {
    const Field K = field_of_mats(ms);
    const int r = ms.front().rows();
    std::vector<FqMat> span = matrix_span_basis(ms, r, K);
    EigenLocus out;
    // scalar span: everything is an eigenvector
    bool scalar = true;
    for (const FqMat& a : span) {
        FqMat s = a - FqMat::identity(r, a.at(0, 0)).scaled(a.at(0, 0));
        (void)s;
        for (int i = 0; i < r && scalar; ++i)
            for (int j = 0; j < r && scalar; ++j)
                if (i != j && !a.at(i, j).is_zero()) scalar = false;
        for (int i = 1; i < r && scalar; ++i)
            if (a.at(i, i) != a.at(0, 0)) scalar = false;
    }
    if (scalar) {
        out.full_space = true;
        return out;
    }

    std::vector<std::vector<Fq>> eigvals;
    for (const FqMat& a : span) {
        UPoly mp(K);
        {
            auto coeffs = minimal_polynomial(a);
            mp = UPoly(K, coeffs);
        }
        std::vector<Fq> roots = roots_in_field(mp, seed);
        long rootdeg = 0;
        for (const auto& [p, m] : factor(mp, seed)) {
            (void)m;
            if (p.degree() > 1) out.requires_extension = true;
            else ++rootdeg;
        }
        (void)rootdeg;
        eigvals.push_back(std::move(roots));
    }

    // enumerate assignments of one eigenvalue per spanning matrix
    std::vector<std::size_t> idx(span.size(), 0);
    for (;;) {
        bool done = false;
        for (std::size_t i = 0; i < span.size(); ++i)
            if (eigvals[i].empty()) done = true;
        if (done) break;
        // intersection of kernels of (A_i - lambda_i I)
        std::vector<std::vector<Fq>> constraints;
        std::vector<Fq> lambdas;
        for (std::size_t i = 0; i < span.size(); ++i) {
            const Fq& lam = eigvals[i][idx[i]];
            lambdas.push_back(lam);
            FqMat m = span[i] - FqMat::identity(r, Fq::one(K)).scaled(lam);
            for (int row = 0; row < r; ++row) constraints.push_back(m.row(row));
        }
        FqMat sys = FqMat::from_rows(constraints, r, Fq::zero(K));
        auto kb = kernel_basis(sys, Fq::zero(K));
        if (!kb.empty()) out.pieces.push_back({lambdas, kb});
        // advance
        std::size_t pos = 0;
        for (; pos < span.size(); ++pos) {
            if (++idx[pos] < eigvals[pos].size()) break;
            idx[pos] = 0;
        }
        if (pos == span.size()) break;
    }
    return out;
}

namespace {

std::vector<std::vector<Fq>> column_space(const FqMat& m, const Field& K) {
    std::vector<std::vector<Fq>> cols;
    for (int j = 0; j < m.cols(); ++j) {
        std::vector<Fq> v;
        for (int i = 0; i < m.rows(); ++i) v.push_back(m.at(i, j));
        cols.push_back(std::move(v));
    }
    return span_basis(cols, m.rows(), Fq::zero(K));
}

std::vector<std::vector<Fq>> kernel_space(const FqMat& m, const Field& K) {
    return kernel_basis(m, Fq::zero(K));
}

std::vector<std::vector<Fq>> intersect_spaces(const std::vector<std::vector<Fq>>& a,
                                              const std::vector<std::vector<Fq>>& b, int dim, const Field& K) {
    if (a.empty() || b.empty()) return {};
    // c in K^{|a|+|b|} with sum c_i a_i - sum c_j b_j = 0
    FqMat sys(dim, static_cast<int>(a.size() + b.size()), Fq::zero(K));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (int row = 0; row < dim; ++row) sys.at(row, static_cast<int>(i)) = a[i][static_cast<std::size_t>(row)];
    for (std::size_t j = 0; j < b.size(); ++j)
        for (int row = 0; row < dim; ++row)
            sys.at(row, static_cast<int>(a.size() + j)) = Fq::zero(K) - b[j][static_cast<std::size_t>(row)];
    std::vector<std::vector<Fq>> vecs;
    for (const auto& c : kernel_basis(sys, Fq::zero(K))) {
        std::vector<Fq> v(static_cast<std::size_t>(dim), Fq::zero(K));
        for (std::size_t i = 0; i < a.size(); ++i)
            for (int row = 0; row < dim; ++row) v[static_cast<std::size_t>(row)] += c[i] * a[i][static_cast<std::size_t>(row)];
        vecs.push_back(std::move(v));
    }
    return span_basis(vecs, dim, Fq::zero(K));
}

std::vector<std::vector<Fq>> full_space(int dim, const Field& K) {
    std::vector<std::vector<Fq>> out;
    for (int i = 0; i < dim; ++i) {
        std::vector<Fq> v(static_cast<std::size_t>(dim), Fq::zero(K));
        v[static_cast<std::size_t>(i)] = Fq::one(K);
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace

UVProducts uv_annihilator_products(const DPForm& f, const std::vector<FqMat>& a_list,
                                   const std::vector<FqMat>& b_list) {
    if (f.is_zero()) throw DomainError("zero form");
    const Field K = f.terms().begin()->second.field();
    const int r = f.nvars();
    for (const FqMat& m : a_list)
        if (!in_matrix_algebra(f, m)) throw DomainError("A-list member not in the matrix algebra");
    for (const FqMat& m : b_list)
        if (!in_matrix_algebra(f, m)) throw DomainError("B-list member not in the matrix algebra");

    std::vector<std::vector<Fq>> u;
    for (const FqMat& m : a_list)
        for (auto& v : column_space(m.transpose(), K)) u.push_back(std::move(v));
    for (const FqMat& m : b_list)
        for (auto& v : kernel_space(m.transpose(), K)) u.push_back(std::move(v));
    u = span_basis(u, r, Fq::zero(K));

    std::vector<std::vector<Fq>> v = full_space(r, K);
    for (const FqMat& m : a_list) v = intersect_spaces(v, kernel_space(m.transpose(), K), r, K);
    for (const FqMat& m : b_list) v = intersect_spaces(v, column_space(m.transpose(), K), r, K);

    UVProducts out;
    out.u_basis = u;
    out.v_basis = v;
    for (const auto& uu : u)
        for (const auto& vv : v) {
            DiffOp q(r, 2);
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j) {
                    Expo e(static_cast<std::size_t>(r), 0);
                    ++e[static_cast<std::size_t>(i)];
                    ++e[static_cast<std::size_t>(j)];
                    q.add_term(e, uu[static_cast<std::size_t>(i)] * vv[static_cast<std::size_t>(j)]);
                }
            if (q.is_zero()) continue;
            if (!contract(q, f).is_zero())
                throw DomainError("uv product fails to annihilate (unreachable)");
            out.quadrics.push_back(q);
        }
    out.quadrics = op_span_basis(out.quadrics, r, 2, K);

    // the two obstruction configurations
    auto sum_uv = u;
    for (const auto& vv : v) sum_uv.push_back(vv);
    long dim_sum = static_cast<long>(span_basis(sum_uv, r, Fq::zero(K)).size());
    long dim_meet = static_cast<long>(intersect_spaces(u, v, r, K).size());
    bool case_a = dim_sum == r && dim_meet > 0;
    bool case_b = static_cast<long>(u.size()) == r - 1 && static_cast<long>(v.size()) >= 2;
    out.obstructed = case_a || case_b;
    if (out.obstructed && ann_graded(f, 1).basis.empty())
        throw DomainError("uv obstruction holds but ann(f)_1 = 0 (unreachable)");
    return out;
}

RegularDecompositionReport regular_decomposition_check(const std::vector<FqMat>& ms, int degree_bound,
                                                       std::uint64_t seed) {
    const Field K = field_of_mats(ms);
    const int r = ms.front().rows();
    std::vector<FqMat> span = matrix_span_basis(ms, r, K);
    StructAlgebra alg = algebra_from_matrices(span, K);
    if (!alg.is_commutative()) throw DomainError("regular decomposition needs a commutative algebra");
    Coid coid = maximal_coid(alg, seed);

    std::vector<FqMat> idems;
    for (const auto& coords : coid.idempotents) {
        FqMat e(r, r, Fq::zero(K));
        for (std::size_t b = 0; b < coords.size(); ++b) e = e + span[b].scaled(coords[b]);
        idems.push_back(e);
    }
    FqMat p = simultaneous_diagonalize(idems);
    auto pinv = inverse(p);
    if (!pinv) throw DomainError("diagonalizer is singular (unreachable)");

    RegularDecompositionReport rep;
    rep.degree_bound = degree_bound;

    // conjugated blocks M_i = (P^-1 (B E_i) P) restricted to the block window
    std::vector<std::vector<FqMat>> blocks;
    int offset = 0;
    for (const FqMat& e : idems) {
        int s = rank(e);
        std::vector<FqMat> blk;
        for (const FqMat& b : span) {
            FqMat conj = *pinv * (b * e) * p;
            FqMat sub(s, s, Fq::zero(K));
            for (int i = 0; i < s; ++i)
                for (int j = 0; j < s; ++j) sub.at(i, j) = conj.at(offset + i, offset + j);
            blk.push_back(sub);
        }
        blocks.push_back(matrix_span_basis(blk, s, K));
        rep.block_sizes.push_back(s);
        offset += s;
    }

    // the ideal and form-space dimensions decompose degreewise
    std::vector<FqMat> conj_span;
    for (const FqMat& b : span) conj_span.push_back(*pinv * b * p);
    MatrixSetIdeal ambient = minor_ideal(conj_span);
    for (int d = 1; d <= degree_bound; ++d) {
        long lhs_q = static_cast<long>(monomials(r, d).size()) - static_cast<long>(ambient.piece(d).size());
        long lhs_x = static_cast<long>(forms_with_matrices(conj_span, d).size());
        long rhs_q = 0, rhs_x = 0;
        for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
            int s = rep.block_sizes[bi];
            MatrixSetIdeal bim = minor_ideal(blocks[bi]);
            rhs_q += static_cast<long>(monomials(s, d).size()) - static_cast<long>(bim.piece(d).size());
            rhs_x += static_cast<long>(forms_with_matrices(blocks[bi], d).size());
        }
        if (lhs_q != rhs_q) rep.quotient_dims_match = false;
        if (lhs_x != rhs_x) rep.form_dims_match = false;
    }
    return rep;
}

} // namespace apolar
