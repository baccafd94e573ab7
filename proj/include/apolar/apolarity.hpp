#ifndef APOLAR_APOLARITY_HPP
#define APOLAR_APOLARITY_HPP

#include <map>
#include <vector>

#include "apolar/forms.hpp"

namespace apolar {

// Matrix of the contraction pairing in degree e: rows indexed by the lex
// descending monomials of degree d-e, columns by those of degree e; entry
// (i,j) is the scalar (D_i E_j)(f).
struct Catalecticant {
    int e = 0;
    FqMat m;
    std::vector<Expo> row_monos; // degree d-e
    std::vector<Expo> col_monos; // degree e
};

Catalecticant catalecticant(const DPForm& f, int e);

// Canonical basis of the degree-e part of the annihilator of f.
struct GradedPiece {
    int e = 0;
    std::vector<DiffOp> basis;
};

GradedPiece ann_graded(const DPForm& f, int e);

// h-vector (h_0, ..., h_d) of catalecticant ranks.
struct HilbertFunction {
    std::vector<long> h;
    bool operator==(const HilbertFunction& o) const { return h == o.h; }
    long operator()(int e) const {
        return (e < 0 || e >= static_cast<int>(h.size())) ? 0 : h[static_cast<std::size_t>(e)];
    }
    int top_degree() const { return static_cast<int>(h.size()) - 1; }
};

HilbertFunction hilbert_function(const DPForm& f);

// Minimal generator counts of the annihilator ideal by degree, for degrees
// 1..d+1 (reported degrees beyond d+1 are all zero by regularity).
std::map<int, long> generator_counts(const DPForm& f);

// Minimal generators themselves: in degree j a canonical complement of the
// span of (degree-1 ops) * (degree j-1 part) inside the degree-j part.
std::map<int, std::vector<DiffOp>> minimal_generators(const DPForm& f);

// Orthogonal complement under the contraction pairing; all inputs homogeneous
// of the same degree.
std::vector<DiffOp> perp(const std::vector<DPForm>& space, int nvars, int degree, const Field& K);
std::vector<DPForm> perp_ops(const std::vector<DiffOp>& space, int nvars, int degree, const Field& K);

// Canonical (rref-row) bases of spans.
std::vector<DiffOp> op_span_basis(const std::vector<DiffOp>& ops, int nvars, int degree, const Field& K);
std::vector<DPForm> form_span_basis(const std::vector<DPForm>& fs, int nvars, int degree, const Field& K);

// Degree-e piece of the ideal generated by homogeneous ops: canonical basis
// of sum_g R_{e-deg g} * g.
std::vector<DiffOp> ideal_graded_piece(const std::vector<DiffOp>& gens, int nvars, int e, const Field& K);

// dim_K of the space spanned (avoids materializing the basis).
long op_span_dim(const std::vector<DiffOp>& ops, int nvars, int degree, const Field& K);
long form_span_dim(const std::vector<DPForm>& fs, int nvars, int degree, const Field& K);

// R_e(f): the space of all contractions D(f), D in R_e.
std::vector<DPForm> contraction_space(const DPForm& f, int e);

} // namespace apolar

#endif
