#ifndef APOLAR_RESOLUTIONS_HPP
#define APOLAR_RESOLUTIONS_HPP

#include <map>
#include <vector>

#include "apolar/splitting.hpp"

namespace apolar {

// Shifted graded Betti numbers: entry (k, j) holds beta_{k, k+j}.
struct BettiTable {
    std::map<std::pair<int, int>, long> entries;

    long at(int k, int j) const {
        auto it = entries.find({k, j});
        return it == entries.end() ? 0 : it->second;
    }
    void add(int k, int j, long v) {
        if (v == 0) return;
        long& e = entries[{k, j}];
        e += v;
        if (e == 0) entries.erase({k, j});
    }
    bool operator==(const BettiTable& o) const { return entries == o.entries; }
};

// Two-block correction count C(s+t, k+1) - C(s, k+1) - C(t, k+1).
long nu_pair(long s, long t, long k);
// n-block version: (n-1) C(r, k+1) + C(r-s, k+1) - sum C(r-s_i, k+1).
long nu_multi(int n, long r, const std::vector<long>& s, long k);

// Table of K[D]/(D^{d+1}): socle degree d in one variable.
BettiTable betti_table_one_var(int d);
// Complete intersection of two generator degrees a <= b (socle a+b-2).
BettiTable betti_table_complete_intersection(int a, int b);
// Intrinsic table of a component in its own <= 2 variables.
BettiTable component_betti_table(const DPForm& g);

// Column convolution for adding t unused variables to the ring.
BettiTable extend_betti(const BettiTable& table, int extra_vars);

// Shifted Betti numbers of the join, from intrinsic component tables and
// support dimensions: the inner rectangle 0 < j < d via the nu-corrections,
// plus the rim entries C(r-s, k) and C(r-s, k-s).
BettiTable betti_join(const std::vector<BettiTable>& intrinsic, const std::vector<long>& s, long r, int d);

// Multiset of twists per homological index.
struct TwistMultiset {
    std::map<int, std::map<long, long>> at; // k -> (twist -> multiplicity)
    void add(int k, long twist, long mult) {
        if (mult == 0) return;
        at[k][twist] += mult;
    }
};

// Twists of the minimal free resolution of the annihilator of f = g + h, from
// the intrinsic tables of g (s variables) and h (t variables); both
// components must lack linear annihilator generators.
TwistMultiset join_resolution_twists(const BettiTable& tg, long s, const BettiTable& th, long t, int d);

// Twists resolving m_S m_T + I T + S J (the intersection-ideal step).
TwistMultiset intersection_ideal_twists(const BettiTable& ti, long s, const BettiTable& tj, long t);

// Pointwise sum minus (n-1) at degrees 0 and d.
HilbertFunction hilbert_join(const std::vector<HilbertFunction>& components);

// dim(R / ann(f)^2)_d, the tangent-space dimension of the parameter space at
// f; degree must be at least 3.
long tangent_space_dim(const DPForm& f);

struct TangentComponentData {
    long s = 0;         // support dimension
    long tangent = 0;   // dim(S_i / J_i^2)_d in its own variables
    long beta_top = 0;  // minimal generators of J_i in degree d-1
};

// The closed-form tangent dimension for a split form (degree >= 4, with the
// cubic correction term at degree 3).
long tangent_formula(const std::vector<TangentComponentData>& components, long r, int d);

struct PSplitDim {
    long dim = 0;
    long fiber_dim = 0; // sum s_i^2
};

// n - 1 + sum dims + sum s_i (r - s_i); component parameter-space dimensions
// are caller data.
PSplitDim psplit_dim(int n, long r, const std::vector<long>& s, const std::vector<long>& component_dims);

// Parameter-space dimension of the forms with Hilbert function H in s <= 2
// variables (a point for s = 1, a secant stratum for s = 2).
long pgor_dimension_small(long s, const HilbertFunction& h);

// Per-component intrinsic data for a computed splitting: the component is
// rectified into its own block variables first.
struct ComponentResolutionData {
    long s = 0;
    DPForm intrinsic_form; // in s variables
    BettiTable intrinsic;  // valid when s <= 2
    bool has_table = false;
    HilbertFunction hilbert;
    long tangent_dim = 0; // dim(S_i/J_i^2)_d
    long beta_top = 0;    // beta^i_{1, d-1}
};

std::vector<ComponentResolutionData> component_resolution_data(const SplittingReport& report);

} // namespace apolar

#endif
