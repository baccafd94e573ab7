#ifndef APOLAR_MATRIX_ALGEBRA_HPP
#define APOLAR_MATRIX_ALGEBRA_HPP

#include <optional>
#include <vector>

#include "apolar/apolarity.hpp"

namespace apolar {

// A finite-dimensional space of r x r scalar matrices, canonicalized by rref
// over the flattened coordinates.  Structure constants (products expanded in
// the basis) are filled in on demand for multiplicatively closed spaces.
struct MatrixAlgebraSpace {
    int r = 0;
    Field field = Field::rationals();
    std::vector<FqMat> basis;
    bool closed_under_mult = false;
    bool commutative = false;
    bool contains_identity = false;

    int dim() const { return static_cast<int>(basis.size()); }
    // Coordinates of a matrix in the basis, if it lies in the span.
    std::optional<std::vector<Fq>> coordinates(const FqMat& a) const;
    bool contains(const FqMat& a) const { return coordinates(a).has_value(); }
};

// The gradient (d_1 f, ..., d_r f) and the contraction Hessian (d_i d_j f).
std::vector<DPForm> gradient(const DPForm& f);
std::vector<DPForm> contraction_hessian(const DPForm& f);

// Whether A * (d d^T f) is symmetric, i.e. whether the pair (grad, A grad)
// has all its 2x2 minors in the annihilator.
bool in_matrix_algebra(const DPForm& f, const FqMat& a);

// The space M_f of all such A, with verified closure/commutativity flags.
MatrixAlgebraSpace matrix_algebra(const DPForm& f);

// The unique g with grad g = A grad f; A must pass the symmetry check.
DPForm gradient_lift(const DPForm& f, const FqMat& a);

// Matrices killing the gradient: the kernel of the lift map.
std::vector<FqMat> gradient_kill_space(const DPForm& f);

// Canonical idempotent E with E grad f = grad f and rank E = dim R_{d-1}(f);
// its kernel is spanned by the non-pivot coordinate directions of R_{d-1}(f).
FqMat support_idempotent(const DPForm& f);

// M_f^E = M_f intersected with E Mat E, for an idempotent E in M_f with
// E grad f = grad f and rank E = dim R_{d-1}(f).
MatrixAlgebraSpace restricted_algebra(const DPForm& f, const FqMat& e);

// rref-canonical span of products b * e over a basis.
std::vector<FqMat> span_times(const std::vector<FqMat>& basis, const FqMat& e, const Field& K);
std::vector<FqMat> matrix_span_basis(const std::vector<FqMat>& gens, int r, const Field& K);
bool matrix_span_contains(const std::vector<FqMat>& basis, const FqMat& a, const Field& K);

// --- graded generalization: matrices with entries in degree-e operators ---

struct GradedMatrixSpace {
    int r = 0;
    int e = 0; // entry degree
    std::vector<std::vector<DiffOp>> basis; // each element: r*r grid, row-major
};

GradedMatrixSpace graded_matrix_space(const DPForm& f, int e);

// Apply a graded matrix to the gradient: (A grad f)_i = sum_k A_ik (d_k f).
std::vector<DPForm> apply_graded(const std::vector<DiffOp>& a, int r, const DPForm& f);

// g in degree d-e with grad g = A grad f.
DPForm graded_gradient_lift(const DPForm& f, int e, const std::vector<DiffOp>& a);

long graded_lift_image_dim(const DPForm& f, int e);
long graded_lift_kernel_dim(const DPForm& f, int e);

// F_e = R_e(f) and G_e = image of the degree-e lift.
struct ContractionModules {
    std::vector<std::vector<DPForm>> F; // index e = 0..d
    std::vector<std::vector<DPForm>> G;
};

ContractionModules contraction_modules(const DPForm& f);

// The product induced on lift images: g * h = lift(AB) for lifts A, B of g
// and h; defined for a + b <= d-3 and independent of the chosen lifts.
DPForm star_product(const DPForm& f, int a_deg, const DPForm& g, int b_deg, const DPForm& h);

// N x N scalar matrices (N = dim R_e) preserving symmetry of the degree-e
// operator pairing: closed under products when d >= 3e, commutative when
// additionally ann(f)_e = 0.
struct OperatorAlgebra {
    int n = 0;
    int e = 0;
    std::vector<Expo> op_basis; // lex descending monomials of R_e
    MatrixAlgebraSpace space;
};

OperatorAlgebra operator_algebra(const DPForm& f, int e);

} // namespace apolar

#endif
