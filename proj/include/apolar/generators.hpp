#ifndef APOLAR_GENERATORS_HPP
#define APOLAR_GENERATORS_HPP

#include <vector>

#include "apolar/forms.hpp"

namespace apolar {

// The weight-graded slices of (x_1 + t x_2 + ... + t^{r-1} x_r)^[d]: the
// coefficient of t^k collects the monomials with sum (i-1) a_i = k.
struct TermFamily {
    int r = 0;
    int d = 0;
    std::vector<DPForm> terms; // indices 0 .. (r-1) d
};

TermFamily power_expansion_terms(const Field& K, int r, int d);

// The slice of weight r-1: the form whose matrix algebra is generated by the
// fundamental Jordan block.
DPForm jordan_extremal_form(const Field& K, int r, int d);

struct ConsecutiveCheck {
    bool consecutive = false;
    bool reversed = false;  // the condition holds for the reversed list
    int offset = 0;         // position of the first form inside the expansion
    std::vector<Fq> c_poly; // scalar witness polynomial, low to high
};

// Decides whether d_i f_{j+1} = d_{i+1} f_j for all valid i, j (in either
// orientation) and, if so, reconstructs the window of the scaled expansion
// containing the forms.
ConsecutiveCheck consecutive_terms_check(const std::vector<DPForm>& forms);

struct CounterexampleFamily {
    int r = 0;
    DPForm f;
    std::vector<FqMat> expected_basis; // I, B_0, ..., B_q
    std::vector<DPForm> window;        // h_1 .. h_{r-1}
};

// f = sum x_{s+i} g_i in r = 2s+q variables whose matrix algebra is spanned
// by the identity and q+1 displaced-identity blocks of rank s; the window
// selects consecutive slices of c_t (x_s + t x_{s-1} + ...)^[d-2].
CounterexampleFamily build_counterexample(const Field& K, int s, int q, int d, int window_offset = 0,
                                          const std::vector<Fq>& c_poly = {});

} // namespace apolar

#endif
