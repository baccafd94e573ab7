#ifndef APOLAR_ARTINIAN_HPP
#define APOLAR_ARTINIAN_HPP

#include <cstdint>
#include <vector>

#include "apolar/matrix_algebra.hpp"
#include "apolar/upoly.hpp"

namespace apolar {

// A finite-dimensional commutative unital algebra presented by structure
// constants: basis e_1..e_n with e_i e_j expanded in the basis, plus the
// coordinates of the identity.
class StructAlgebra {
public:
    StructAlgebra(int n, const Field& K) : n_(n), field_(K), unit_(static_cast<std::size_t>(n), Fq::zero(K)) {
        table_.resize(static_cast<std::size_t>(n) * n, std::vector<Fq>(static_cast<std::size_t>(n), Fq::zero(K)));
    }

    int dim() const { return n_; }
    const Field& field() const { return field_; }
    const std::vector<Fq>& unit() const { return unit_; }
    void set_unit(std::vector<Fq> u) { unit_ = std::move(u); }
    void set_product(int i, int j, std::vector<Fq> v) { table_[static_cast<std::size_t>(i) * n_ + j] = std::move(v); }
    const std::vector<Fq>& basis_product(int i, int j) const { return table_[static_cast<std::size_t>(i) * n_ + j]; }

    std::vector<Fq> multiply(const std::vector<Fq>& x, const std::vector<Fq>& y) const;
    std::vector<Fq> power(const std::vector<Fq>& x, long k) const;
    bool is_commutative() const;
    bool is_associative_on_basis() const;
    bool unit_acts_trivially() const;

    // Matrix of multiplication by x.
    FqMat mult_operator(const std::vector<Fq>& x) const;

    // Monic minimal polynomial of an element.
    UPoly element_min_poly(const std::vector<Fq>& x) const;

private:
    int n_;
    Field field_;
    std::vector<Fq> unit_;
    std::vector<std::vector<Fq>> table_;
};

// Structure algebra spanned by multiplicatively closed r x r matrices
// (basis must contain the identity in its span).
StructAlgebra algebra_from_matrices(const std::vector<FqMat>& basis, const Field& K);
// Same with an explicit unit, for corner algebras whose identity is a proper
// idempotent rather than the identity matrix.
StructAlgebra algebra_from_matrices(const std::vector<FqMat>& basis, const Field& K, const FqMat& unit);

// A complete set of orthogonal idempotents (e_i^2 = e_i != 0, e_i e_j = 0,
// sum e_i = 1), each given in algebra coordinates.  residue_degrees[i] > 1
// marks a block whose residue field is a proper extension of the base field
// (no further split exists over the base field).
struct Coid {
    std::vector<std::vector<Fq>> idempotents;
    std::vector<int> residue_degrees;
    std::uint64_t seed = 0;
    std::size_t size() const { return idempotents.size(); }
};

// The unique maximal coid of a commutative algebra.  Splitting candidates are
// basis elements, then seeded random combinations; over a prime field the
// Frobenius fixed space gives a deterministic certificate.
Coid maximal_coid(const StructAlgebra& alg, std::uint64_t seed = 1);

// Basis of the set of nilpotent elements: the trace-form radical over Q, the
// kernel of an iterated Frobenius over a prime field.
std::vector<std::vector<Fq>> nilradical(const StructAlgebra& alg);

struct AlgebraBlock {
    std::vector<Fq> idempotent;              // in parent coordinates
    std::vector<std::vector<Fq>> basis;      // block basis, parent coordinates
    StructAlgebra algebra;                   // induced structure constants
};

std::vector<AlgebraBlock> block_decompose(const StructAlgebra& alg, std::uint64_t seed = 1);

// For a coid of r x r matrices: invertible P with every P^{-1} E_i P diagonal
// 0/1 in consecutive positions (block sizes = rank E_i).
FqMat simultaneous_diagonalize(const std::vector<FqMat>& coid);

} // namespace apolar

#endif
