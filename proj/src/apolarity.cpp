#include "apolar/apolarity.hpp"

#include <map>

namespace apolar {

namespace {

Field field_of(const DPForm& f) {
    if (f.is_zero()) return Field::rationals();
    return f.terms().begin()->second.field();
}

} // namespace

Catalecticant catalecticant(const DPForm& f, int e) {
    if (e < 0 || e > f.degree()) throw DomainError("catalecticant degree out of range");
    if (f.is_zero()) throw DomainError("catalecticant of the zero form");
    Field K = field_of(f);
    Catalecticant c;
    c.e = e;
    c.row_monos = monomials(f.nvars(), f.degree() - e);
    c.col_monos = monomials(f.nvars(), e);
    c.m = FqMat(static_cast<int>(c.row_monos.size()), static_cast<int>(c.col_monos.size()), Fq::zero(K));
    Expo sum(static_cast<std::size_t>(f.nvars()), 0);
    for (std::size_t i = 0; i < c.row_monos.size(); ++i)
        for (std::size_t j = 0; j < c.col_monos.size(); ++j) {
            for (int k = 0; k < f.nvars(); ++k)
                sum[static_cast<std::size_t>(k)] =
                    c.row_monos[i][static_cast<std::size_t>(k)] + c.col_monos[j][static_cast<std::size_t>(k)];
            c.m.at(static_cast<int>(i), static_cast<int>(j)) = f.coeff(sum);
        }
    return c;
}

GradedPiece ann_graded(const DPForm& f, int e) {
    if (e < 0) throw DomainError("negative degree");
    Field K = field_of(f);
    GradedPiece g;
    g.e = e;
    if (e > f.degree()) {
        for (const Expo& m : monomials(f.nvars(), e))
            g.basis.push_back(op_monomial(K, f.nvars(), m, Fq::one(K)));
        return g;
    }
    Catalecticant c = catalecticant(f, e);
    for (const auto& v : kernel_basis(c.m, Fq::zero(K)))
        g.basis.push_back(op_from_coords(f.nvars(), e, c.col_monos, v));
    return g;
}

HilbertFunction hilbert_function(const DPForm& f) {
    if (f.is_zero()) throw DomainError("hilbert_function of the zero form");
    HilbertFunction h;
    for (int e = 0; e <= f.degree(); ++e) h.h.push_back(rank(catalecticant(f, e).m));
    return h;
}

std::map<int, std::vector<DiffOp>> minimal_generators(const DPForm& f) {
    if (f.is_zero()) throw DomainError("minimal_generators of the zero form");
    Field K = field_of(f);
    int d = f.degree();
    std::map<int, std::vector<DiffOp>> gens;
    std::vector<DiffOp> prev; // basis of ann(f)_{j-1}
    for (int j = 1; j <= d + 1; ++j) {
        std::vector<DiffOp> ann_j;
        if (j <= d) {
            ann_j = ann_graded(f, j).basis;
        } else {
            for (const Expo& m : monomials(f.nvars(), j))
                ann_j.push_back(op_monomial(K, f.nvars(), m, Fq::one(K)));
        }
        std::vector<DiffOp> below;
        for (const DiffOp& g : prev)
            for (const Expo& m : monomials(f.nvars(), 1))
                below.push_back(op_mul(op_monomial(K, f.nvars(), m, Fq::one(K)), g));

        // degree-j minimal generators: extend the span of R_1*ann_{j-1} by the
        // pivots found among ann_j
        std::vector<Expo> monos = monomials(f.nvars(), j);
        SpanBuilder<Fq> base(static_cast<int>(monos.size()), Fq::zero(K));
        for (const DiffOp& g : below) base.insert(to_coords(g, monos, Fq::zero(K)));
        std::vector<DiffOp> fresh;
        for (const DiffOp& g : ann_j)
            if (base.insert(to_coords(g, monos, Fq::zero(K)))) fresh.push_back(g);
        if (!fresh.empty()) gens[j] = fresh;
        prev = std::move(ann_j);
    }
    return gens;
}

std::map<int, long> generator_counts(const DPForm& f) {
    std::map<int, long> beta;
    for (const auto& [j, gs] : minimal_generators(f)) beta[j] = static_cast<long>(gs.size());
    return beta;
}

std::vector<DiffOp> perp(const std::vector<DPForm>& space, int nvars, int degree, const Field& K) {
    std::vector<Expo> monos = monomials(nvars, degree);
    if (space.empty()) {
        std::vector<DiffOp> all;
        for (const Expo& m : monos) all.push_back(op_monomial(K, nvars, m, Fq::one(K)));
        return all;
    }
    FqMat m(static_cast<int>(space.size()), static_cast<int>(monos.size()), Fq::zero(K));
    for (std::size_t i = 0; i < space.size(); ++i) {
        if (space[i].degree() != degree || space[i].nvars() != nvars)
            throw DomainError("perp: mixed degrees");
        auto v = to_coords(space[i], monos, Fq::zero(K));
        for (std::size_t j = 0; j < monos.size(); ++j) m.at(static_cast<int>(i), static_cast<int>(j)) = v[j];
    }
    std::vector<DiffOp> out;
    for (const auto& v : kernel_basis(m, Fq::zero(K)))
        out.push_back(op_from_coords(nvars, degree, monos, v));
    return out;
}

std::vector<DPForm> perp_ops(const std::vector<DiffOp>& space, int nvars, int degree, const Field& K) {
    std::vector<Expo> monos = monomials(nvars, degree);
    if (space.empty()) {
        std::vector<DPForm> all;
        for (const Expo& m : monos) all.push_back(dp_monomial(K, nvars, m, Fq::one(K)));
        return all;
    }
    FqMat m(static_cast<int>(space.size()), static_cast<int>(monos.size()), Fq::zero(K));
    for (std::size_t i = 0; i < space.size(); ++i) {
        if (space[i].degree() != degree || space[i].nvars() != nvars)
            throw DomainError("perp: mixed degrees");
        auto v = to_coords(space[i], monos, Fq::zero(K));
        for (std::size_t j = 0; j < monos.size(); ++j) m.at(static_cast<int>(i), static_cast<int>(j)) = v[j];
    }
    std::vector<DPForm> out;
    for (const auto& v : kernel_basis(m, Fq::zero(K)))
        out.push_back(dp_from_coords(nvars, degree, monos, v));
    return out;
}

std::vector<DiffOp> op_span_basis(const std::vector<DiffOp>& ops, int nvars, int degree, const Field& K) {
    std::vector<Expo> monos = monomials(nvars, degree);
    std::vector<std::vector<Fq>> rows;
    for (const DiffOp& g : ops) rows.push_back(to_coords(g, monos, Fq::zero(K)));
    std::vector<DiffOp> out;
    for (const auto& v : span_basis(rows, static_cast<int>(monos.size()), Fq::zero(K)))
        out.push_back(op_from_coords(nvars, degree, monos, v));
    return out;
}

std::vector<DPForm> form_span_basis(const std::vector<DPForm>& fs, int nvars, int degree, const Field& K) {
    std::vector<Expo> monos = monomials(nvars, degree);
    std::vector<std::vector<Fq>> rows;
    for (const DPForm& g : fs) rows.push_back(to_coords(g, monos, Fq::zero(K)));
    std::vector<DPForm> out;
    for (const auto& v : span_basis(rows, static_cast<int>(monos.size()), Fq::zero(K)))
        out.push_back(dp_from_coords(nvars, degree, monos, v));
    return out;
}

long op_span_dim(const std::vector<DiffOp>& ops, int nvars, int degree, const Field& K) {
    std::vector<Expo> monos = monomials(nvars, degree);
    SpanBuilder<Fq> span(static_cast<int>(monos.size()), Fq::zero(K));
    for (const DiffOp& g : ops) span.insert(to_coords(g, monos, Fq::zero(K)));
    return span.dim();
}

long form_span_dim(const std::vector<DPForm>& fs, int nvars, int degree, const Field& K) {
    std::vector<Expo> monos = monomials(nvars, degree);
    SpanBuilder<Fq> span(static_cast<int>(monos.size()), Fq::zero(K));
    for (const DPForm& g : fs) span.insert(to_coords(g, monos, Fq::zero(K)));
    return span.dim();
}

std::vector<DiffOp> ideal_graded_piece(const std::vector<DiffOp>& gens, int nvars, int e, const Field& K) {
    std::vector<DiffOp> prods;
    for (const DiffOp& g : gens) {
        if (g.is_zero()) continue;
        int k = e - g.degree();
        if (k < 0) continue;
        for (const Expo& m : monomials(nvars, k))
            prods.push_back(op_mul(op_monomial(K, nvars, m, Fq::one(K)), g));
    }
    return op_span_basis(prods, nvars, e, K);
}

std::vector<DPForm> contraction_space(const DPForm& f, int e) {
    Field K = field_of(f);
    std::vector<DPForm> imgs;
    if (e > f.degree()) return imgs;
    for (const Expo& m : monomials(f.nvars(), e))
        imgs.push_back(contract(op_monomial(K, f.nvars(), m, Fq::one(K)), f));
    return form_span_basis(imgs, f.nvars(), f.degree() - e, K);
}

} // namespace apolar
