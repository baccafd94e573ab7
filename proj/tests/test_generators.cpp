#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "apolar/generators.hpp"
#include "apolar/matrix_algebra.hpp"
#include "apolar/splitting.hpp"
#include "corpus.hpp"

using namespace apolar;
using namespace apolar::testing;

static const Field Q = Field::rationals();

TEST_CASE("expansion slices") {
    TermFamily fam = power_expansion_terms(Q, 2, 2);
    REQUIRE(fam.terms.size() == 3);
    CHECK(fam.terms[0] == make_form(Q, 2, {{1, {2, 0}}}));
    CHECK(fam.terms[1] == make_form(Q, 2, {{1, {1, 1}}}));
    CHECK(fam.terms[2] == make_form(Q, 2, {{1, {0, 2}}}));

    // (r-1)d + 1 slices, and their sum at t = 1 is the full power
    TermFamily f3 = power_expansion_terms(Q, 3, 3);
    CHECK(f3.terms.size() == 7);
    DPForm sum(3, 3);
    for (const DPForm& t : f3.terms) sum = sum + t;
    std::vector<Fq> ones(3, Fq::one(Q));
    CHECK(sum == dp_power_of_linear(ones, 3));

    // contraction shifts the slice index: d_i h_{dk} = h_{d-1, k-i+1}
    TermFamily f4 = power_expansion_terms(Q, 3, 4);
    TermFamily f3b = power_expansion_terms(Q, 3, 3);
    for (int k = 0; k < static_cast<int>(f4.terms.size()); ++k)
        for (int i = 0; i < 3; ++i) {
            DPForm lhs = diff_var(i, f4.terms[static_cast<std::size_t>(k)]);
            int target = k - i;
            DPForm rhs = (target >= 0 && target < static_cast<int>(f3b.terms.size()))
                             ? f3b.terms[static_cast<std::size_t>(target)]
                             : DPForm(3, 3);
            CHECK(lhs == rhs);
        }
}

TEST_CASE("jordan extremal form") {
    // r = 2: x^[d-1] y
    for (int d : {3, 4}) CHECK(jordan_extremal_form(Q, 2, d) == make_form(Q, 2, {{1, {d - 1, 1}}}));

    // r = 3, d = 3: the weight-two slice
    CHECK(jordan_extremal_form(Q, 3, 3) == make_form(Q, 3, {{1, {1, 2, 0}}, {1, {2, 0, 1}}}));

    // its matrix algebra is generated by the fundamental Jordan block
    for (int r : {3, 4}) {
        for (int d : {3, 4}) {
            DPForm f = jordan_extremal_form(Q, r, d);
            CHECK(ann_graded(f, 1).basis.empty());
            MatrixAlgebraSpace m = matrix_algebra(f);
            CHECK(m.dim() == r);
            FqMat a(r, r, Fq::zero(Q));
            for (int i = 0; i + 1 < r; ++i) a.at(i, i + 1) = Fq::one(Q);
            FqMat p = FqMat::identity(r, Fq::one(Q));
            for (int k = 0; k < r; ++k) {
                CHECK(m.contains(p));
                p = p * a;
            }
            // Hilbert function (1, r, ..., r, 1)
            auto h = hilbert_function(f).h;
            CHECK(h.front() == 1);
            CHECK(h.back() == 1);
            for (std::size_t e = 1; e + 1 < h.size(); ++e) CHECK(h[e] == r);
        }
    }

    // the annihilator contains d_r (d_2, ..., d_r)
    DPForm f = jordan_extremal_form(Q, 3, 4);
    for (int j = 1; j < 3; ++j) {
        Expo e(3, 0);
        ++e[2];
        ++e[static_cast<std::size_t>(j)];
        DiffOp q = op_monomial(Q, 3, e, Fq::one(Q));
        CHECK(contract(q, f).is_zero());
    }
}

TEST_CASE("consecutive window detection") {
    TermFamily fam = power_expansion_terms(Q, 3, 3);
    std::vector<DPForm> two = {fam.terms[2], fam.terms[3]};
    ConsecutiveCheck c = consecutive_terms_check(two);
    CHECK(c.consecutive);

    // {x^[3], y^[3]} wraps around: it sits at positions 3 and 4 of
    // (1 + t^4)(x2 + t x1)^[3], so the scalar witness is 1 + t^4
    std::vector<DPForm> wrapped = {make_form(Q, 2, {{1, {3, 0}}}), make_form(Q, 2, {{1, {0, 3}}})};
    ConsecutiveCheck cw = consecutive_terms_check(wrapped);
    CHECK(cw.consecutive);
    REQUIRE(cw.c_poly.size() == 5);
    CHECK(cw.c_poly[0] == Fq::one(Q));
    CHECK(cw.c_poly[4] == Fq::one(Q));
    for (int i : {1, 2, 3}) CHECK(cw.c_poly[static_cast<std::size_t>(i)].is_zero());

    std::vector<DPForm> apart = {make_form(Q, 2, {{1, {3, 0}}}),
                                 make_form(Q, 2, {{1, {2, 1}}, {1, {0, 3}}})};
    CHECK(!consecutive_terms_check(apart).consecutive);

    // scaled window keeps the scalar witness
    std::vector<DPForm> scaled = {fam.terms[2].scaled(Fq::of_int(Q, 3)), fam.terms[3].scaled(Fq::of_int(Q, 3))};
    ConsecutiveCheck cs = consecutive_terms_check(scaled);
    CHECK(cs.consecutive);
    bool found3 = false;
    for (const Fq& x : cs.c_poly) {
        if (x == Fq::of_int(Q, 3)) found3 = true;
        bool zero_or_three = x.is_zero() || x == Fq::of_int(Q, 3);
        CHECK(zero_or_three);
    }
    CHECK(found3);
}

TEST_CASE("weight-graded span equals the kernel of the shifted minors") {
    // a combination of slices is annihilated by the 2x(r-1) shifted-minor
    // ideal, and conversely membership forces the combination shape
    std::mt19937_64 rng(61);
    const int r = 3, d = 3;
    TermFamily fam = power_expansion_terms(Q, r, d);
    DiffOp m12 = make_op(Q, 3, {{1, {1, 0, 1}}, {-1, {0, 2, 0}}}); // d1 d3 - d2 d2 (shifted minor)
    DiffOp m11 = make_op(Q, 3, {{1, {1, 1, 0}}, {-1, {1, 1, 0}}});
    (void)m11;
    std::vector<DiffOp> j = {
        make_op(Q, 3, {{1, {1, 0, 1}}, {-1, {0, 2, 0}}}),
    };
    // all 2x2 minors d_i d_{j+1} - d_{i+1} d_j for i,j in {1,2}
    std::vector<DiffOp> gens;
    for (int i = 0; i < r - 1; ++i)
        for (int jj = 0; jj < r - 1; ++jj) {
            DiffOp q(3, 2);
            Expo e1(3, 0);
            ++e1[static_cast<std::size_t>(i)];
            ++e1[static_cast<std::size_t>(jj + 1)];
            q.add_term(e1, Fq::one(Q));
            Expo e2(3, 0);
            ++e2[static_cast<std::size_t>(i + 1)];
            ++e2[static_cast<std::size_t>(jj)];
            q.add_term(e2, -Fq::one(Q));
            if (!q.is_zero()) gens.push_back(q);
        }
    (void)j;
    for (int t = 0; t < 5; ++t) {
        DPForm f(r, d);
        for (const DPForm& slice : fam.terms) f = f + slice.scaled(rand_scalar(Q, rng, 3));
        for (const DiffOp& q : gens) CHECK(contract(q, f).is_zero());
    }
    // conversely: the forms annihilated by the minors are the slice span
    auto killed = perp_ops(ideal_graded_piece(gens, r, d, Q), r, d, Q);
    auto slices = form_span_basis(fam.terms, r, d, Q);
    CHECK(form_span_basis(killed, r, d, Q) == slices);
}

TEST_CASE("counterexample families") {
    // s=2, q=1, d=5 reproduces the 5-variable family with a = b = 2
    CounterexampleFamily fam = build_counterexample(Q, 2, 1, 5);
    CHECK(fam.r == 5);
    DPForm expect = make_form(Q, 5, {{1, {1, 3, 1, 0, 0}}, {1, {2, 2, 0, 1, 0}}, {1, {3, 1, 0, 0, 1}}});
    CHECK(fam.f == expect);
    MatrixAlgebraSpace m = matrix_algebra(fam.f);
    REQUIRE(m.dim() == static_cast<int>(fam.expected_basis.size()));
    for (const FqMat& b : fam.expected_basis) {
        CHECK(m.contains(b));
        bool rank2_or_id = rank(b) == 2 || b == FqMat::identity(5, Fq::one(Q));
        CHECK(rank2_or_id);
    }

    // s=3, q=1, d=4: the 7-variable quartic family
    CounterexampleFamily f7 = build_counterexample(Q, 3, 1, 4);
    CHECK(f7.r == 7);
    MatrixAlgebraSpace m7 = matrix_algebra(f7.f);
    CHECK(m7.dim() == 3);
    for (const FqMat& b : f7.expected_basis) CHECK(m7.contains(b));

    // s=4, q=1, d=3: the 9-variable cubic family
    CounterexampleFamily f9 = build_counterexample(Q, 4, 1, 3);
    CHECK(f9.r == 9);
    MatrixAlgebraSpace m9 = matrix_algebra(f9.f);
    CHECK(m9.dim() == 3);
    for (const FqMat& b : f9.expected_basis) CHECK(m9.contains(b));

    // infeasible parameters are rejected
    CHECK_THROWS_AS(build_counterexample(Q, 2, 2, 3), DomainError);
}

TEST_CASE("counterexample nilpotent ranks feed the obstruction") {
    CounterexampleFamily fam = build_counterexample(Q, 2, 1, 5);
    // B_k has rank s and no nonzero nilpotent of smaller rank exists
    for (std::size_t i = 1; i < fam.expected_basis.size(); ++i)
        CHECK(rank(fam.expected_basis[i]) == 2);
    ObstructionReport rep = nilpotent_rank_obstruction(fam.f, fam.r, 3, 71);
    CHECK(rep.obstructed);
    CHECK(rep.min_nilpotent_rank == 2);
}
