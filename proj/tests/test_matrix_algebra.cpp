#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "apolar/matrix_algebra.hpp"
#include "corpus.hpp"

using namespace apolar;
using namespace apolar::testing;

static const Field Q = Field::rationals();

namespace {

long beta_at(const DPForm& f, int j) {
    auto b = generator_counts(f);
    auto it = b.find(j);
    return it == b.end() ? 0 : it->second;
}

DPForm worked_example() {
    return make_form(Q, 3, {{1, {1, 2, 0}}, {1, {0, 1, 2}}, {1, {0, 0, 3}}});
}

} // namespace

TEST_CASE("matrix algebra of x^[3] + x y^[2]") {
    DPForm f = make_form(Q, 2, {{1, {3, 0}}, {1, {1, 2}}});
    MatrixAlgebraSpace m = matrix_algebra(f);
    CHECK(m.dim() == 2);
    CHECK(m.contains_identity);
    CHECK(m.closed_under_mult);
    CHECK(m.commutative);
    CHECK(m.contains(make_mat(Q, 2, {0, 1, 1, 0})));
    CHECK(in_matrix_algebra(f, make_mat(Q, 2, {0, 1, 1, 0})));
    CHECK(!in_matrix_algebra(f, make_mat(Q, 2, {0, 1, 0, 0})));
}

TEST_CASE("matrix algebra of the nilpotent example") {
    for (int d : {3, 4, 5}) {
        DPForm f = make_form(Q, 3, {{1, {d - 1, 0, 1}}, {1, {d - 2, 2, 0}}});
        MatrixAlgebraSpace m = matrix_algebra(f);
        FqMat a = make_mat(Q, 3, {0, 1, 0, 0, 0, 1, 0, 0, 0});
        CHECK(m.dim() == 3);
        CHECK(m.contains(a));
        CHECK(m.contains(a * a));
        CHECK(m.closed_under_mult);
        CHECK(m.commutative);
    }
}

TEST_CASE("matrix algebra of x^[3] in two variables") {
    DPForm f = make_form(Q, 2, {{1, {3, 0}}});
    MatrixAlgebraSpace m = matrix_algebra(f);
    CHECK(m.dim() == 3); // all A with A_21 = 0
    for (const FqMat& b : m.basis) CHECK(b.at(1, 0).is_zero());
    // 1 + beta_{1d} + r beta_{11} = 1 + 0 + 2
    CHECK(m.dim() == 1 + beta_at(f, 3) + 2 * beta_at(f, 1));
}

TEST_CASE("gradient lift golden cases") {
    DPForm f = make_form(Q, 2, {{1, {3, 0}}, {1, {1, 2}}});
    FqMat a = make_mat(Q, 2, {0, 1, 1, 0});
    CHECK(gradient_lift(f, a) == make_form(Q, 2, {{1, {2, 1}}, {1, {0, 3}}}));
    CHECK(gradient_lift(f, FqMat::identity(2, Fq::one(Q))) == f);

    for (int d : {3, 4}) {
        DPForm g = make_form(Q, 3, {{1, {d - 1, 0, 1}}, {1, {d - 2, 2, 0}}});
        FqMat j = make_mat(Q, 3, {0, 1, 0, 0, 0, 1, 0, 0, 0});
        CHECK(gradient_lift(g, j) == make_form(Q, 3, {{1, {d - 1, 1, 0}}}));
    }
    CHECK_THROWS_AS(gradient_lift(f, make_mat(Q, 2, {0, 1, 0, 0})), DomainError);
}

TEST_CASE("dimension formula on a random corpus") {
    std::mt19937_64 rng(101);
    for (Field K : {Field::rationals(), Field::prime(7)}) {
        for (int t = 0; t < 20; ++t) {
            int r = 2 + static_cast<int>(rng() % 3);
            int d = 2 + static_cast<int>(rng() % 4);
            DPForm f = random_form(K, r, d, rng);
            MatrixAlgebraSpace m = matrix_algebra(f);
            long expect = 1 + beta_at(f, d) + r * beta_at(f, 1);
            CHECK(m.dim() == expect);
        }
    }
}

TEST_CASE("closure, commutators, exponentiation") {
    std::mt19937_64 rng(103);
    for (Field K : {Field::rationals(), Field::prime(7)}) {
        for (int t = 0; t < 12; ++t) {
            int r = 2 + static_cast<int>(rng() % 3);
            int d = 3 + static_cast<int>(rng() % 3);
            DPForm f = random_form(K, r, d, rng);
            MatrixAlgebraSpace m = matrix_algebra(f);
            CHECK(m.closed_under_mult);
            std::vector<DPForm> grad = gradient(f);
            for (const FqMat& a : m.basis)
                for (const FqMat& b : m.basis) {
                    FqMat c = a * b - b * a;
                    // commutators kill the gradient
                    for (int i = 0; i < r; ++i) {
                        DPForm acc(r, d - 1);
                        for (int k = 0; k < r; ++k) acc = acc + grad[static_cast<std::size_t>(k)].scaled(c.at(i, k));
                        CHECK(acc.is_zero());
                    }
                }
            if (ann_graded(f, 1).basis.empty()) CHECK(m.commutative);
        }
        // exponentiation closure holds even in degree 2
        for (int t = 0; t < 8; ++t) {
            int r = 2 + static_cast<int>(rng() % 2);
            DPForm f = random_form(K, r, 2, rng);
            MatrixAlgebraSpace m = matrix_algebra(f);
            for (const FqMat& a : m.basis) {
                FqMat p = a;
                for (int k = 2; k <= r; ++k) {
                    p = p * a;
                    CHECK(in_matrix_algebra(f, p));
                }
            }
        }
    }
}

TEST_CASE("kernel of the lift map") {
    std::mt19937_64 rng(107);
    for (int t = 0; t < 8; ++t) {
        int r = 2 + static_cast<int>(rng() % 2);
        int d = 3 + static_cast<int>(rng() % 2);
        DPForm f = random_form(Q, r, d, rng);
        auto kill = gradient_kill_space(f);
        CHECK(static_cast<long>(kill.size()) == r * beta_at(f, 1));
        std::vector<DPForm> grad = gradient(f);
        for (const FqMat& a : kill)
            for (int i = 0; i < r; ++i) {
                DPForm acc(r, d - 1);
                for (int k = 0; k < r; ++k) acc = acc + grad[static_cast<std::size_t>(k)].scaled(a.at(i, k));
                CHECK(acc.is_zero());
            }
    }
}

TEST_CASE("lift image equals the perp of m ann(f) in degree d") {
    std::mt19937_64 rng(109);
    for (int t = 0; t < 8; ++t) {
        DPForm f = random_form(Q, 3, 4, rng);
        MatrixAlgebraSpace m = matrix_algebra(f);
        std::vector<DPForm> imgs;
        for (const FqMat& a : m.basis) imgs.push_back(gradient_lift(f, a));
        auto lhs = form_span_basis(imgs, 3, 4, Q);
        // (R_1 ann(f)_{d-1})^perp
        std::vector<DiffOp> prods;
        for (const DiffOp& g : ann_graded(f, 3).basis)
            for (const Expo& mm : monomials(3, 1))
                prods.push_back(op_mul(op_monomial(Q, 3, mm, Fq::one(Q)), g));
        auto rhs = form_span_basis(perp_ops(op_span_basis(prods, 3, 4, Q), 3, 4, Q), 3, 4, Q);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("support idempotent") {
    DPForm f = make_form(Q, 2, {{1, {3, 0}}, {1, {1, 2}}});
    CHECK(support_idempotent(f) == FqMat::identity(2, Fq::one(Q)));

    DPForm xd = make_form(Q, 2, {{1, {4, 0}}});
    CHECK(support_idempotent(xd) == make_mat(Q, 2, {1, 0, 0, 0}));

    DPForm l = dp_power_of_linear(std::vector<Fq>{Fq::one(Q), Fq::one(Q)}, 4);
    FqMat e = support_idempotent(l);
    CHECK(e * e == e);
    CHECK(rank(e) == 1);
    std::vector<Fq> v = {Fq::one(Q), Fq::one(Q)};
    std::vector<Fq> ev(2, Fq::zero(Q));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) ev[static_cast<std::size_t>(i)] += e.at(i, j) * v[static_cast<std::size_t>(j)];
    CHECK(ev == v);
}

TEST_CASE("restricted algebra") {
    // ann(f)_1 = 0 and E = I recovers the full algebra
    DPForm f = make_form(Q, 2, {{1, {3, 0}}, {1, {1, 2}}});
    MatrixAlgebraSpace full = matrix_algebra(f);
    MatrixAlgebraSpace res = restricted_algebra(f, FqMat::identity(2, Fq::one(Q)));
    CHECK(full.basis == res.basis);

    // x^[d] embedded in two variables
    DPForm xd = make_form(Q, 2, {{1, {4, 0}}});
    MatrixAlgebraSpace rx = restricted_algebra(xd, make_mat(Q, 2, {1, 0, 0, 0}));
    REQUIRE(rx.dim() == 1);
    CHECK(rx.basis[0] == make_mat(Q, 2, {1, 0, 0, 0}));

    // worked example: M_f E = <E> for E = A^2
    DPForm g = worked_example();
    FqMat a = make_mat(Q, 3, {0, 0, 0, 0, 0, 1, 1, 0, 1});
    FqMat e = a * a;
    CHECK(e * e == e);
    MatrixAlgebraSpace mg = matrix_algebra(g);
    CHECK(mg.dim() == 3);
    CHECK(mg.contains(a));
    auto me = span_times(mg.basis, e, Q);
    REQUIRE(me.size() == 1);
    CHECK(matrix_span_contains(me, e, Q));
    // and M_f (I - E) = <I - E, A - A^2>
    FqMat ie = FqMat::identity(3, Fq::one(Q)) - e;
    auto mie = span_times(mg.basis, ie, Q);
    CHECK(mie.size() == 2);
    CHECK(matrix_span_contains(mie, ie, Q));
    CHECK(matrix_span_contains(mie, a - a * a, Q));
}

TEST_CASE("block algebras transfer to the components") {
    // for g the lift of an idempotent E, the block M_g E equals M_f E
    DPForm f = worked_example();
    MatrixAlgebraSpace mf = matrix_algebra(f);
    FqMat a = make_mat(Q, 3, {0, 0, 0, 0, 0, 1, 1, 0, 1});
    FqMat e = a * a;
    DPForm g = gradient_lift(f, e);
    MatrixAlgebraSpace mg = matrix_algebra(g);
    CHECK(span_times(mg.basis, e, Q) == span_times(mf.basis, e, Q));
    FqMat ie = FqMat::identity(3, Fq::one(Q)) - e;
    DPForm h = gradient_lift(f, ie);
    MatrixAlgebraSpace mh = matrix_algebra(h);
    CHECK(span_times(mh.basis, ie, Q) == span_times(mf.basis, ie, Q));
}

TEST_CASE("lift image characterizes the forms sharing the matrix") {
    // for the index-three nilpotent example, {g : A in M_g} is spanned by
    // f, x1^[d-1] x2 and x1^[d]
    for (int d : {3, 4}) {
        DPForm f = make_form(Q, 3, {{1, {d - 1, 0, 1}}, {1, {d - 2, 2, 0}}});
        MatrixAlgebraSpace m = matrix_algebra(f);
        std::vector<DPForm> imgs;
        for (const FqMat& b : m.basis) imgs.push_back(gradient_lift(f, b));
        auto lhs = form_span_basis(imgs, 3, d, Q);
        auto rhs = form_span_basis({f, make_form(Q, 3, {{1, {d - 1, 1, 0}}}), make_form(Q, 3, {{1, {d, 0, 0}}})},
                                   3, d, Q);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("small quadric annihilators force the trivial algebra") {
    // dim ann(f)_2 < r-1 leaves only scalar multiples of the identity
    std::mt19937_64 rng(149);
    for (int t = 0; t < 20; ++t) {
        int r = 2 + static_cast<int>(rng() % 3);
        int d = 3 + static_cast<int>(rng() % 3);
        DPForm f = random_form(Q, r, d, rng);
        if (static_cast<int>(ann_graded(f, 2).basis.size()) >= r - 1) continue;
        CHECK(matrix_algebra(f).dim() == 1);
    }
}

TEST_CASE("graded matrix space") {
    DPForm f = make_form(Q, 2, {{1, {3, 0}}, {1, {1, 2}}});
    // e = 0 agrees with the scalar algebra
    GradedMatrixSpace g0 = graded_matrix_space(f, 0);
    CHECK(g0.basis.size() == 2);

    // dim im gamma^f_1 = H_f(2) + beta_{12} = 2 + 1
    CHECK(graded_lift_image_dim(f, 1) == 3);

    // kernel dimension formula
    std::mt19937_64 rng(113);
    for (int t = 0; t < 6; ++t) {
        int r = 2 + static_cast<int>(rng() % 2);
        int d = 3 + static_cast<int>(rng() % 2);
        DPForm h = random_form(Q, r, d, rng);
        for (int e = 0; e < std::min(3, d); ++e) {
            long lhs = graded_lift_kernel_dim(h, e);
            long ann_next = static_cast<long>(ann_graded(h, e + 1).basis.size());
            mpz_class binom = binomial_z(r - 1 + e, e + 1);
            long rhs = r * e * binom.get_si() + r * ann_next;
            CHECK(lhs == rhs);
            long img = graded_lift_image_dim(h, e);
            long expect_img = hilbert_function(h)(d - e) + beta_at(h, d - e);
            CHECK(img == expect_img);
        }
    }
}

TEST_CASE("graded product closure on random members") {
    std::mt19937_64 rng(127);
    DPForm f = random_form(Q, 2, 6, rng);
    GradedMatrixSpace ga = graded_matrix_space(f, 1);
    GradedMatrixSpace gb = graded_matrix_space(f, 2);
    REQUIRE(!ga.basis.empty());
    REQUIRE(!gb.basis.empty());
    // product of members lands in the degree-3 space (3 <= d-3)
    const auto& a = ga.basis[rng() % ga.basis.size()];
    const auto& b = gb.basis[rng() % gb.basis.size()];
    std::vector<DiffOp> ab(4, DiffOp(2, 3));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            DiffOp acc(2, 3);
            for (int k = 0; k < 2; ++k) acc = acc + op_mul(a[static_cast<std::size_t>(i * 2 + k)], b[static_cast<std::size_t>(k * 2 + j)]);
            ab[static_cast<std::size_t>(i * 2 + j)] = acc;
        }
    // membership: A ddT f symmetric, checked through the lift
    CHECK_NOTHROW(graded_gradient_lift(f, 3, ab));
}

TEST_CASE("contraction modules and star product") {
    DPForm f = make_form(Q, 2, {{1, {3, 0}}, {1, {1, 2}}});
    ContractionModules cm = contraction_modules(f);
    // dim(G/F)_0 = beta_{1,3} = 1
    CHECK(static_cast<long>(cm.G[0].size() - cm.F[0].size()) == 1);

    // f is the identity for the star product
    CHECK(star_product(f, 0, f, 0, f) == f);

    // D(f) * h = D(h)
    std::mt19937_64 rng(131);
    for (int t = 0; t < 6; ++t) {
        DPForm g = random_form(Q, 2, 5, rng);
        DiffOp d1 = make_op(Q, 2, {{1, {1, 0}}, {2, {0, 1}}});
        DPForm df = contract(d1, g);
        DPForm h = gradient_lift(g, FqMat::identity(2, Fq::one(Q))); // h = g in G_0
        DPForm lhs = star_product(g, 1, df, 0, h);
        CHECK(lhs == contract(d1, h));
    }
}

TEST_CASE("star product is lift-independent, commutative, associative") {
    std::mt19937_64 rng(139);
    // d = 6 leaves room for degree-1 triples: 1+1 <= 3 and (1+1)+1 <= 3
    DPForm f = random_form(Q, 2, 6, rng);
    GradedMatrixSpace g1 = graded_matrix_space(f, 1);
    REQUIRE(!g1.basis.empty());
    auto member = [&](std::uint64_t pick) {
        std::vector<DiffOp> a(4, DiffOp(2, 1));
        for (std::size_t b = 0; b < g1.basis.size(); ++b)
            if ((pick >> b) & 1)
                for (std::size_t i = 0; i < 4; ++i) a[i] = a[i] + g1.basis[b][i];
        return a;
    };
    for (int t = 0; t < 5; ++t) {
        DPForm g = graded_gradient_lift(f, 1, member(rng() | 1));
        DPForm h = graded_gradient_lift(f, 1, member(rng() | 1));
        DPForm k = graded_gradient_lift(f, 1, member(rng() | 1));
        if (g.is_zero() || h.is_zero() || k.is_zero()) continue;
        // commutativity
        CHECK(star_product(f, 1, g, 1, h) == star_product(f, 1, h, 1, g));
        // associativity
        DPForm gh = star_product(f, 1, g, 1, h);
        DPForm hk = star_product(f, 1, h, 1, k);
        CHECK(star_product(f, 2, gh, 1, k) == star_product(f, 1, g, 2, hk));
    }
    // lift independence: perturbing a lift by a kernel member of the graded
    // lift map leaves the product unchanged
    for (int t = 0; t < 5; ++t) {
        auto a = member(rng() | 1);
        DPForm g = graded_gradient_lift(f, 1, a);
        auto b = member(rng() | 1);
        DPForm h = graded_gradient_lift(f, 1, b);
        if (g.is_zero() || h.is_zero()) continue;
        // search the basis for a kernel member
        for (const auto& cand : g1.basis) {
            if (!graded_gradient_lift(f, 1, cand).is_zero()) continue;
            std::vector<DiffOp> a2 = a;
            for (std::size_t i = 0; i < a2.size(); ++i) a2[i] = a2[i] + cand[i];
            CHECK(graded_gradient_lift(f, 1, a2) == g);
            // the product through the perturbed lift agrees
            std::vector<DiffOp> ab(4, DiffOp(2, 2)), a2b(4, DiffOp(2, 2));
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    DiffOp acc(2, 2), acc2(2, 2);
                    for (int kk = 0; kk < 2; ++kk) {
                        acc = acc + op_mul(a[static_cast<std::size_t>(i * 2 + kk)], b[static_cast<std::size_t>(kk * 2 + j)]);
                        acc2 = acc2 + op_mul(a2[static_cast<std::size_t>(i * 2 + kk)], b[static_cast<std::size_t>(kk * 2 + j)]);
                    }
                    ab[static_cast<std::size_t>(i * 2 + j)] = acc;
                    a2b[static_cast<std::size_t>(i * 2 + j)] = acc2;
                }
            CHECK(graded_gradient_lift(f, 2, ab) == graded_gradient_lift(f, 2, a2b));
        }
    }
}

TEST_CASE("operator algebra generalization") {
    std::mt19937_64 rng(137);
    // e = 1 recovers the matrix algebra
    DPForm f = make_form(Q, 2, {{1, {3, 0}}, {1, {1, 2}}});
    OperatorAlgebra oa = operator_algebra(f, 1);
    MatrixAlgebraSpace m = matrix_algebra(f);
    CHECK(oa.space.basis == m.basis);

    // one variable: everything
    DPForm x6 = make_form(Q, 1, {{1, {6}}});
    OperatorAlgebra o6 = operator_algebra(x6, 2);
    CHECK(o6.n == 1);
    CHECK(o6.space.dim() == 1);

    // ternary sextic at the closure boundary d = 3e
    DPForm g = random_form(Q, 3, 6, rng);
    OperatorAlgebra og = operator_algebra(g, 2);
    CHECK(og.space.closed_under_mult);
    if (ann_graded(g, 2).basis.empty()) CHECK(og.space.commutative);
}

TEST_CASE("block truncation membership") {
    // B2, B3 with repeated 2x2 blocks force the truncated matrix in as well
    Field K = Field::prime(7);
    const int r = 6;
    FqMat b1(r, r, Fq::zero(K)), b2(r, r, Fq::zero(K)), b3(r, r, Fq::zero(K));
    b1.at(0, 1) = Fq::one(K);
    b2.at(0, 1) = Fq::one(K);
    b2.at(2, 3) = Fq::one(K);
    b3.at(0, 1) = Fq::one(K);
    b3.at(4, 5) = Fq::one(K);
    // a form with B2, B3 in its algebra: common kernel of the minor equations
    std::mt19937_64 rng(139);
    const int d = 3;
    std::vector<Expo> monos = monomials(r, d);
    std::vector<DPForm> basis;
    // solve the linear conditions "B ddT f symmetric" for B in {b2, b3}
    FqMat sys(2 * r * (r - 1) / 2 * static_cast<int>(monomials(r, d - 2).size()),
              static_cast<int>(monos.size()), Fq::zero(K));
    int row = 0;
    for (const FqMat& b : {b2, b3}) {
        for (int i = 0; i < r; ++i)
            for (int j = i + 1; j < r; ++j)
                for (const Expo& t : monomials(r, d - 2)) {
                    for (std::size_t c = 0; c < monos.size(); ++c) {
                        // coefficient of monomial t in (B ddT x^[monos_c])_{ij} - (ji)
                        DPForm xc = dp_monomial(K, r, monos[c], Fq::one(K));
                        auto hess = contraction_hessian(xc);
                        Fq acc = Fq::zero(K);
                        for (int k = 0; k < r; ++k) {
                            acc += b.at(i, k) * hess[static_cast<std::size_t>(k * r + j)].coeff_or(t, Fq::zero(K));
                            acc -= b.at(j, k) * hess[static_cast<std::size_t>(k * r + i)].coeff_or(t, Fq::zero(K));
                        }
                        sys.at(row, static_cast<int>(c)) = acc;
                    }
                    ++row;
                }
    }
    auto ker = kernel_basis(sys, Fq::zero(K));
    REQUIRE(!ker.empty());
    DPForm f(r, d);
    for (const auto& v : ker) {
        DPForm g = dp_from_coords(r, d, monos, v);
        f = f + g.scaled(rand_nonzero(K, rng));
    }
    REQUIRE(!f.is_zero());
    REQUIRE(in_matrix_algebra(f, b2));
    REQUIRE(in_matrix_algebra(f, b3));
    CHECK(in_matrix_algebra(f, b1));
}
