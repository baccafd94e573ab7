#include "apolar/forms.hpp"

namespace apolar {

namespace {
void gen_monomials(int r, int d, Expo& cur, int pos, std::vector<Expo>& out) {
    if (pos == r - 1) {
        cur[static_cast<std::size_t>(pos)] = d;
        out.push_back(cur);
        return;
    }
    for (int k = d; k >= 0; --k) {
        cur[static_cast<std::size_t>(pos)] = k;
        gen_monomials(r, d - k, cur, pos + 1, out);
    }
}
} // namespace

std::vector<Expo> monomials(int r, int d) {
    if (r < 1 || d < 0) throw DomainError("monomials: need r >= 1, d >= 0");
    std::vector<Expo> out;
    Expo cur(static_cast<std::size_t>(r), 0);
    gen_monomials(r, d, cur, 0, out);
    return out;
}

DPForm dp_monomial(const Field& K, int nvars, const Expo& e, const Fq& c) {
    DPForm f(nvars, expo_degree(e));
    (void)K;
    f.add_term(e, c);
    return f;
}

DiffOp op_monomial(const Field& K, int nvars, const Expo& e, const Fq& c) {
    DiffOp f(nvars, expo_degree(e));
    (void)K;
    f.add_term(e, c);
    return f;
}

} // namespace apolar
