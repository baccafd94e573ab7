#ifndef APOLAR_SPLITTING_HPP
#define APOLAR_SPLITTING_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "apolar/artinian.hpp"
#include "apolar/mpoly.hpp"

namespace apolar {

struct SplittingComponent {
    FqMat idempotent;
    DPForm component;
    HilbertFunction hilbert;
    int support_dim = 0;              // dim R_{d-1}(g_i)
    std::vector<FqMat> block_algebra; // basis of M_f E_i
    int residue_degree = 1;           // >1: block residue field extends the base field
};

// A complete regular splitting f = g_1 + ... + g_n together with the
// idempotents producing it and per-component invariants.
struct SplittingReport {
    DPForm f;
    FqMat support_idem; // E with E grad f = grad f, rank = dim R_{d-1}(f)
    std::vector<SplittingComponent> components;
    int restricted_dim = 0; // dim M_f^E
    std::uint64_t seed = 0;
    std::size_t length() const { return components.size(); }
    std::vector<DPForm> component_forms() const {
        std::vector<DPForm> v;
        for (const auto& c : components) v.push_back(c.component);
        return v;
    }
};

// The unique maximal regular splitting (components are lifts of the maximal
// coid of M_f^E).  Degree 2 is handled by symmetric rank-one peeling of the
// contraction Hessian (characteristic != 2).
SplittingReport regular_split(const DPForm& f, std::uint64_t seed = 1);

// Coarser splitting: sum idempotents and components over the given partition
// of component indices.
SplittingReport group_components(const SplittingReport& report, const std::vector<std::vector<int>>& partition);

struct SplitCheck {
    bool ok = true;
    std::vector<std::string> failures;
};

// Checks the sum, nonzero-ness, support independence, and the graded
// annihilator-intersection identity in every degree below d.
SplitCheck verify_regular_splitting(const DPForm& f, const std::vector<DPForm>& components);

// dim M_f - 1, the hard ceiling on how often any specializing family can
// split; flagged when dummy variables inflate it.
struct SplitUpperBound {
    long bound = 0;
    bool dummy_variables_caveat = false;
};

SplitUpperBound splitting_upper_bound(const DPForm& f);

// A form with coefficients in K[t1..tm]; specializing all parameters to zero
// recovers an ordinary form.
struct ParamForm {
    int nvars = 0;
    int degree = 0;
    int nparams = 0;
    Field field = Field::rationals();
    DPFormT<MPoly> form;

    DPForm specialize(const std::vector<Fq>& tau) const;
    DPForm at_zero() const { return specialize(std::vector<Fq>(static_cast<std::size_t>(nparams), Fq::zero(field))); }
};

struct DegenerateSplit {
    ParamForm family;
    int nparams = 0;
    // certificate: a seeded specialization at which the family splits
    // regularly nparams times
    std::vector<Fq> specialization;
    std::size_t split_length = 0; // component count at the specialization
    bool certified = false;
    int retries_used = 0;
    HilbertFunction hilbert_at_specialization; // flatness report, informational
};

// Deformation along a nilpotent a in M_f (of index n+1): produces f_t over
// K[t1..tn] with f_0 = f that splits regularly n times over the fraction
// field.  The construction solves a^n Q a^n = a^n, sets E = Q a^n,
// A_t = a + tE, P = I + sum t^k a^{n-k} Q, and iterates on the co-component;
// the identities A_t^{n+1} = t A_t^n and A_t^n = P a^n are checked exactly at
// every level.
DegenerateSplit degenerate_split_onematrix(const DPForm& f, const FqMat& a, std::uint64_t seed = 1);

struct MultiMatrixInput {
    FqMat a;       // nonzero nilpotent
    FqMat e;       // idempotent with e a = a e = a
    int min_power; // a_i: a^k in M_f required (and checked) for k >= a_i
};

// Generalization over several nilpotents in orthogonal idempotent ranges;
// yields sum (index_i - min_power_i) parameters.
DegenerateSplit degenerate_split_multimatrix(const DPForm& f, const std::vector<MultiMatrixInput>& inputs,
                                             std::uint64_t seed = 1);

struct ObstructionReport {
    bool obstructed = false;
    long rank_bound = 0;          // floor(s / (m - r + s))
    int min_nilpotent_rank = -1;  // -1: no nonzero nilpotent at all
    bool exact = true;            // false when decided by grid sampling
};

// Decides whether f = h + sum x_j^[d] can have a degenerate splitting of
// length m: if no nonzero nilpotent in M_h has rank <= s/(m-r+s), none exists.
// h must not split regularly, and its matrix algebra must contain no
// nontrivial idempotent.  A negative verdict asserts nothing: when no
// construction applies either, existence is simply undecided.
ObstructionReport nilpotent_rank_obstruction(const DPForm& h, int ambient_vars, int target_length,
                                             std::uint64_t seed = 1);

} // namespace apolar

#endif
