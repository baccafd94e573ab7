#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "apolar/artinian.hpp"
#include "apolar/splitting.hpp"
#include "corpus.hpp"

using namespace apolar;
using namespace apolar::testing;

static const Field Q = Field::rationals();

namespace {

DPForm worked_example() {
    return make_form(Q, 3, {{1, {1, 2, 0}}, {1, {0, 1, 2}}, {1, {0, 0, 3}}});
}

// K[t]/(m) as a structure algebra in the power basis
StructAlgebra quotient_algebra(const UPoly& m) {
    const Field& K = m.field();
    int n = m.degree();
    StructAlgebra alg(n, K);
    std::vector<Fq> unit(static_cast<std::size_t>(n), Fq::zero(K));
    unit[0] = Fq::one(K);
    alg.set_unit(unit);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            UPoly p = UPoly::monomial(K, i + j, Fq::one(K)) % m;
            std::vector<Fq> v(static_cast<std::size_t>(n), Fq::zero(K));
            for (int k = 0; k <= p.degree(); ++k) v[static_cast<std::size_t>(k)] = p[k];
            alg.set_product(i, j, v);
        }
    return alg;
}

FqMat combine(const std::vector<FqMat>& basis, const std::vector<Fq>& coords) {
    FqMat m(basis[0].rows(), basis[0].cols(), coords[0].zero());
    for (std::size_t i = 0; i < basis.size(); ++i) m = m + basis[i].scaled(coords[i]);
    return m;
}

} // namespace

TEST_CASE("structure algebra sanity") {
    StructAlgebra a = quotient_algebra(UPoly(Q, {Fq::of_int(Q, -2), Fq::zero(Q), Fq::one(Q)})); // t^2 - 2
    CHECK(a.is_commutative());
    CHECK(a.is_associative_on_basis());
    CHECK(a.unit_acts_trivially());
    std::vector<Fq> t = {Fq::zero(Q), Fq::one(Q)};
    UPoly mp = a.element_min_poly(t);
    CHECK(mp.degree() == 2);
    CHECK(mp[0] == Fq::of_int(Q, -2));
}

TEST_CASE("trivial coid") {
    StructAlgebra one(1, Q);
    one.set_unit({Fq::one(Q)});
    one.set_product(0, 0, {Fq::one(Q)});
    Coid c = maximal_coid(one, 7);
    REQUIRE(c.size() == 1);
    CHECK(c.idempotents[0] == std::vector<Fq>{Fq::one(Q)});
    CHECK(c.residue_degrees[0] == 1);
}

TEST_CASE("coid of the worked example algebra") {
    DPForm f = worked_example();
    MatrixAlgebraSpace mf = matrix_algebra(f);
    StructAlgebra alg = algebra_from_matrices(mf.basis, Q);
    Coid c = maximal_coid(alg, 11);
    REQUIRE(c.size() == 2);
    FqMat a = make_mat(Q, 3, {0, 0, 0, 0, 0, 1, 1, 0, 1});
    FqMat e = a * a;
    FqMat e1 = combine(mf.basis, c.idempotents[0]);
    FqMat e2 = combine(mf.basis, c.idempotents[1]);
    bool match = (e1 == e && e2 == FqMat::identity(3, Fq::one(Q)) - e) ||
                 (e2 == e && e1 == FqMat::identity(3, Fq::one(Q)) - e);
    CHECK(match);
}

TEST_CASE("coid of a diagonal pair") {
    std::vector<FqMat> basis = {make_mat(Q, 2, {1, 0, 0, 0}), make_mat(Q, 2, {0, 0, 0, 1})};
    StructAlgebra alg = algebra_from_matrices(basis, Q);
    Coid c = maximal_coid(alg, 3);
    REQUIRE(c.size() == 2);
    FqMat e1 = combine(basis, c.idempotents[0]);
    FqMat e2 = combine(basis, c.idempotents[1]);
    CHECK(e1 * e1 == e1);
    CHECK(e2 * e2 == e2);
    CHECK((e1 * e2).is_zero());
    CHECK(e1 + e2 == FqMat::identity(2, Fq::one(Q)));
}

TEST_CASE("nilradical golden cases") {
    // <I, N> with N^2 = 0
    std::vector<FqMat> basis = {FqMat::identity(2, Fq::one(Q)), make_mat(Q, 2, {0, 1, 0, 0})};
    StructAlgebra alg = algebra_from_matrices(basis, Q);
    auto nil = nilradical(alg);
    REQUIRE(nil.size() == 1);
    CHECK(nil[0][0].is_zero());
    CHECK(!nil[0][1].is_zero());

    // the Jordan-type matrix algebra: nil spanned by A, A^2
    DPForm f = make_form(Q, 3, {{1, {3, 0, 1}}, {1, {2, 2, 0}}});
    MatrixAlgebraSpace mf = matrix_algebra(f);
    StructAlgebra jalg = algebra_from_matrices(mf.basis, Q);
    auto jnil = nilradical(jalg);
    CHECK(jnil.size() == 2);
    for (const auto& coords : jnil) {
        FqMat n = combine(mf.basis, coords);
        CHECK(nilpotency_index(n, 4) > 0);
    }

    // a field has no nilpotents
    StructAlgebra field2 = quotient_algebra(UPoly(Q, {Fq::of_int(Q, -2), Fq::zero(Q), Fq::one(Q)}));
    CHECK(nilradical(field2).empty());
}

TEST_CASE("nilradical over prime fields via Frobenius") {
    Field F5 = Field::prime(5);
    // F5[t]/(t^2): nil = <t>
    StructAlgebra a = quotient_algebra(UPoly(F5, {Fq::zero(F5), Fq::zero(F5), Fq::one(F5)}));
    auto nil = nilradical(a);
    REQUIRE(nil.size() == 1);
    // F5[t]/(t^2-2): a field (2 is not a square mod 5)
    StructAlgebra b = quotient_algebra(UPoly(F5, {Fq::of_int(F5, -2), Fq::zero(F5), Fq::one(F5)}));
    CHECK(nilradical(b).empty());
}

TEST_CASE("block decomposition") {
    // local algebra decomposes into itself
    std::vector<FqMat> basis = {FqMat::identity(2, Fq::one(Q)), make_mat(Q, 2, {0, 1, 0, 0})};
    StructAlgebra local = algebra_from_matrices(basis, Q);
    auto blocks = block_decompose(local, 5);
    REQUIRE(blocks.size() == 1);
    CHECK(blocks[0].algebra.dim() == 2);

    // the worked example: blocks of dimensions 1 and 2
    DPForm f = worked_example();
    MatrixAlgebraSpace mf = matrix_algebra(f);
    StructAlgebra alg = algebra_from_matrices(mf.basis, Q);
    auto wb = block_decompose(alg, 5);
    REQUIRE(wb.size() == 2);
    std::vector<int> dims = {wb[0].algebra.dim(), wb[1].algebra.dim()};
    std::sort(dims.begin(), dims.end());
    CHECK(dims == std::vector<int>{1, 2});
    for (const auto& blk : wb) {
        CHECK(blk.algebra.is_commutative());
        CHECK(blk.algebra.unit_acts_trivially());
        // no further idempotent split inside a block
        Coid sub = maximal_coid(blk.algebra, 17);
        CHECK(sub.size() == 1);
    }

    // product of three one-dimensional blocks
    std::vector<FqMat> diag3;
    for (int i = 0; i < 3; ++i) {
        FqMat m(3, 3, Fq::zero(Q));
        m.at(i, i) = Fq::one(Q);
        diag3.push_back(m);
    }
    auto tb = block_decompose(algebra_from_matrices(diag3, Q), 5);
    CHECK(tb.size() == 3);
}

TEST_CASE("residue field extensions are reported, not split") {
    // Q[t]/(t^2-2): local with residue degree 2
    StructAlgebra a = quotient_algebra(UPoly(Q, {Fq::of_int(Q, -2), Fq::zero(Q), Fq::one(Q)}));
    Coid c = maximal_coid(a, 19);
    REQUIRE(c.size() == 1);
    CHECK(c.residue_degrees[0] == 2);

    // Q[t]/((t^2-2)(t^2-3)): splits into two quadratic field blocks
    Field Kq = Q;
    UPoly t = UPoly::x(Kq);
    UPoly m = (t * t - UPoly::constant(Fq::of_int(Kq, 2))) * (t * t - UPoly::constant(Fq::of_int(Kq, 3)));
    StructAlgebra b = quotient_algebra(m);
    Coid cb = maximal_coid(b, 19);
    REQUIRE(cb.size() == 2);
    CHECK(cb.residue_degrees[0] == 2);
    CHECK(cb.residue_degrees[1] == 2);
}

TEST_CASE("coid over prime fields") {
    Field F7 = Field::prime(7);
    // F7[t]/(t^2-1) = F7 x F7
    UPoly t = UPoly::x(F7);
    StructAlgebra a = quotient_algebra(t * t - UPoly::constant(Fq::one(F7)));
    Coid c = maximal_coid(a, 23);
    CHECK(c.size() == 2);

    // F7[t]/(t^2-3): 3 is not a square mod 7, a quadratic field
    StructAlgebra b = quotient_algebra(t * t - UPoly::constant(Fq::of_int(F7, 3)));
    Coid cb = maximal_coid(b, 23);
    REQUIRE(cb.size() == 1);
    CHECK(cb.residue_degrees[0] == 2);

    // F2[t]/(t^2+t) splits even in characteristic two
    Field F2 = Field::prime(2);
    UPoly s = UPoly::x(F2);
    StructAlgebra d = quotient_algebra(s * s + s);
    CHECK(maximal_coid(d, 23).size() == 2);
}

TEST_CASE("coid axioms and refinement invariants") {
    std::mt19937_64 rng(201);
    for (Field K : {Field::rationals(), Field::prime(11)}) {
        // random split forms give algebras with nontrivial coids
        for (int t = 0; t < 5; ++t) {
            DPForm f1 = random_form(K, 2, 4, rng);
            DPForm g(4, 4);
            for (const auto& [e, c] : f1.terms()) {
                Expo e2 = {e[0], e[1], 0, 0};
                g.add_term(e2, c);
            }
            Expo e4 = {0, 0, 4, 0};
            g.add_term(e4, Fq::one(K));
            Expo e5 = {0, 0, 0, 4};
            g.add_term(e5, Fq::one(K));
            MatrixAlgebraSpace mg = matrix_algebra(g);
            if (!mg.closed_under_mult || !mg.commutative) continue;
            StructAlgebra alg = algebra_from_matrices(mg.basis, K);
            Coid c = maximal_coid(alg, rng());
            // coid axioms
            std::vector<Fq> total(static_cast<std::size_t>(alg.dim()), Fq::zero(K));
            for (const auto& e : c.idempotents) {
                CHECK(alg.multiply(e, e) == e);
                for (std::size_t k = 0; k < total.size(); ++k) total[k] += e[k];
            }
            CHECK(total == alg.unit());
            for (std::size_t i = 0; i < c.size(); ++i)
                for (std::size_t j = i + 1; j < c.size(); ++j) {
                    auto prod = alg.multiply(c.idempotents[i], c.idempotents[j]);
                    bool zero = true;
                    for (const Fq& x : prod) zero = zero && x.is_zero();
                    CHECK(zero);
                }
            // grouped coids are refined by the maximal one; their product with
            // the maximal coid reproduces the maximal coid
            if (c.size() >= 2) {
                std::vector<Fq> grouped(static_cast<std::size_t>(alg.dim()), Fq::zero(K));
                for (std::size_t k = 0; k < grouped.size(); ++k)
                    grouped[k] = c.idempotents[0][k] + c.idempotents[1][k];
                std::vector<std::vector<Fq>> coarse;
                coarse.push_back(grouped);
                for (std::size_t i = 2; i < c.size(); ++i) coarse.push_back(c.idempotents[i]);
                // product coid: nonzero products e_i e'_j
                std::vector<std::vector<Fq>> prod_coid;
                for (const auto& ei : c.idempotents)
                    for (const auto& ej : coarse) {
                        auto p = alg.multiply(ei, ej);
                        bool zero = true;
                        for (const Fq& x : p) zero = zero && x.is_zero();
                        if (!zero) prod_coid.push_back(p);
                    }
                CHECK(prod_coid.size() == c.size());
            }
            // idempotents of the algebra are exactly sums over subsets: check
            // that sums of pairs are idempotent
            for (std::size_t i = 0; i < c.size(); ++i)
                for (std::size_t j = i + 1; j < c.size(); ++j) {
                    std::vector<Fq> s(static_cast<std::size_t>(alg.dim()), Fq::zero(K));
                    for (std::size_t k = 0; k < s.size(); ++k)
                        s[k] = c.idempotents[i][k] + c.idempotents[j][k];
                    CHECK(alg.multiply(s, s) == s);
                }
        }
    }
}

TEST_CASE("local blocks: invertible or nilpotent") {
    std::mt19937_64 rng(207);
    DPForm f = worked_example();
    MatrixAlgebraSpace mf = matrix_algebra(f);
    StructAlgebra alg = algebra_from_matrices(mf.basis, Q);
    for (const auto& blk : block_decompose(alg, 31)) {
        for (int t = 0; t < 10; ++t) {
            std::vector<Fq> x(static_cast<std::size_t>(blk.algebra.dim()), Fq::zero(Q));
            for (auto& c : x) c = rand_scalar(Q, rng, 4);
            UPoly mp = blk.algebra.element_min_poly(x);
            bool nilpotent = true;
            for (int i = 0; i < mp.degree(); ++i) nilpotent = nilpotent && mp[i].is_zero();
            bool invertible = !mp[0].is_zero();
            CHECK((nilpotent || invertible));
        }
    }
}

TEST_CASE("simultaneous diagonalization") {
    // already-diagonal coid: P is a permutation-free identity-like matrix
    std::vector<FqMat> diag = {make_mat(Q, 2, {1, 0, 0, 0}), make_mat(Q, 2, {0, 0, 0, 1})};
    FqMat p = simultaneous_diagonalize(diag);
    CHECK(p == FqMat::identity(2, Fq::one(Q)));

    // worked example coid
    DPForm f = worked_example();
    FqMat a = make_mat(Q, 3, {0, 0, 0, 0, 0, 1, 1, 0, 1});
    FqMat e = a * a;
    FqMat ie = FqMat::identity(3, Fq::one(Q)) - e;
    FqMat pw = simultaneous_diagonalize({e, ie});
    auto pinv = inverse(pw);
    REQUIRE(pinv.has_value());
    FqMat d1 = *pinv * e * pw;
    // rank-1 block in the leading position
    CHECK(d1.at(0, 0) == Fq::one(Q));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != 0 || j != 0) CHECK(d1.at(i, j).is_zero());
    CHECK(rank(e) + rank(ie) == 3);

    CHECK_THROWS_AS(simultaneous_diagonalize({make_mat(Q, 2, {1, 1, 0, 0}), make_mat(Q, 2, {0, 0, 0, 1})}),
                    DomainError);
}
