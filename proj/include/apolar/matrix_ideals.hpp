#ifndef APOLAR_MATRIX_IDEALS_HPP
#define APOLAR_MATRIX_IDEALS_HPP

#include <string>
#include <vector>

#include "apolar/artinian.hpp"

namespace apolar {

// The degree-two span generating I(M) = sum over A in M of the 2x2 minors of
// the paired gradient columns, rref-canonicalized.
struct MatrixSetIdeal {
    int nvars = 0;
    Field field = Field::rationals();
    std::vector<DiffOp> quadrics;

    // canonical basis of the degree-e piece R_{e-2} * quadrics
    std::vector<DiffOp> piece(int e) const {
        return ideal_graded_piece(quadrics, nvars, e, field);
    }
};

MatrixSetIdeal minor_ideal(const std::vector<FqMat>& ms);
// The variant summed over pairs (A d : B d).
MatrixSetIdeal pair_minor_ideal(const std::vector<FqMat>& ms);

// X_d(M): all degree-d forms whose matrix algebra contains M.
std::vector<DPForm> forms_with_matrices(const std::vector<FqMat>& ms, int d);

// Subalgebra generated by ms (span saturated under products).
std::vector<FqMat> generated_algebra(const std::vector<FqMat>& ms);

struct ClosureReport {
    bool high_degree_agreement = true; // I(M)_e = (pair version)_e for e >= 3
    bool generated_matches_pairs = true; // I(M') = pair version of I(M)
    bool stacked_minor_match = true;     // I(K[A_1..A_n]) from stacked columns
    int degree_bound = 0;
};

// Verifies the ideal-closure identities degreewise up to the bound; ms must
// contain the identity matrix.
ClosureReport closure_identities(const std::vector<FqMat>& ms, int degree_bound);

struct EigenPiece {
    std::vector<Fq> eigenvalues; // one per spanning matrix
    std::vector<std::vector<Fq>> basis; // of the joint eigenspace
};

struct EigenLocus {
    bool full_space = false;     // every direction is an eigenvector
    bool requires_extension = false; // some eigenvalue lives outside the field
    std::vector<EigenPiece> pieces;
};

// Common eigenvector locus of the span, enumerated over base-field
// eigenvalues of the spanning matrices.
EigenLocus eigen_locus(const std::vector<FqMat>& ms, std::uint64_t seed = 1);

struct UVProducts {
    std::vector<std::vector<Fq>> u_basis;
    std::vector<std::vector<Fq>> v_basis;
    std::vector<DiffOp> quadrics; // (u d)(v d), all verified annihilators
    bool obstructed = false;      // forces a linear annihilator
};

// U = sum im A_k^T + sum ker B_k^T, V = (cap ker A_k^T) cap (cap im B_k^T);
// every product (u d)(v d) annihilates f.  The verdict flags the two
// configurations forcing ann(f)_1 != 0.
UVProducts uv_annihilator_products(const DPForm& f, const std::vector<FqMat>& a_list,
                                   const std::vector<FqMat>& b_list);

struct RegularDecompositionReport {
    bool quotient_dims_match = true; // (R/I(M))_d = direct sum of block quotients
    bool form_dims_match = true;     // X(M)_d = direct sum of block form spaces
    int degree_bound = 0;
    std::vector<int> block_sizes;
};

// For a commutative matrix algebra with identity: decomposes along its
// maximal coid after simultaneous diagonalization and verifies the dimension
// splittings degreewise.
RegularDecompositionReport regular_decomposition_check(const std::vector<FqMat>& ms, int degree_bound,
                                                       std::uint64_t seed = 1);

} // namespace apolar

#endif
