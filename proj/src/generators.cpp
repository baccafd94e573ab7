#include "apolar/generators.hpp"

#include "apolar/apolarity.hpp"

namespace apolar {

namespace {

int weight(const Expo& a) {
    int w = 0;
    for (std::size_t i = 0; i < a.size(); ++i) w += static_cast<int>(i) * a[i];
    return w;
}

Field field_of(const DPForm& f) {
    if (f.is_zero()) throw DomainError("zero form");
    return f.terms().begin()->second.field();
}

} // namespace

TermFamily power_expansion_terms(const Field& K, int r, int d) {
    if (r < 1 || d < 0) throw DomainError("power_expansion_terms: need r >= 1, d >= 0");
    TermFamily fam;
    fam.r = r;
    fam.d = d;
    fam.terms.assign(static_cast<std::size_t>((r - 1) * d) + 1, DPForm(r, d));
    for (const Expo& a : monomials(r, d))
        fam.terms[static_cast<std::size_t>(weight(a))].add_term(a, Fq::one(K));
    return fam;
}

DPForm jordan_extremal_form(const Field& K, int r, int d) {
    if (r < 2 || d < 3) throw DomainError("jordan_extremal_form: need r >= 2, d >= 3");
    DPForm f(r, d);
    for (const Expo& a : monomials(r, d))
        if (weight(a) == r - 1) f.add_term(a, Fq::one(K));
    return f;
}

namespace {

// extend the sequence one step to the right: g with d_i g = d_{i+1} f for
// i < r, normalized by a zero coefficient on the last pure power
DPForm shift_right(const DPForm& f) {
    const int r = f.nvars();
    const int d = f.degree();
    const Fq zero = f.zero_coeff().zero();
    DPForm g(r, d);
    for (const Expo& a : monomials(r, d)) {
        int i = -1;
        for (int k = 0; k < r - 1; ++k)
            if (a[static_cast<std::size_t>(k)] > 0) { i = k; break; }
        if (i < 0) continue; // coefficient of x_r^[d] stays zero
        Expo shifted = a;
        --shifted[static_cast<std::size_t>(i)];
        ++shifted[static_cast<std::size_t>(i + 1)];
        g.add_term(a, f.coeff_or(shifted, zero));
    }
    return g;
}

DPForm shift_left(const DPForm& f) {
    const int r = f.nvars();
    const int d = f.degree();
    const Fq zero = f.zero_coeff().zero();
    DPForm g(r, d);
    for (const Expo& a : monomials(r, d)) {
        int i = -1;
        for (int k = 1; k < r; ++k)
            if (a[static_cast<std::size_t>(k)] > 0) { i = k; break; }
        if (i < 0) continue; // coefficient of x_1^[d] stays zero
        Expo shifted = a;
        --shifted[static_cast<std::size_t>(i)];
        ++shifted[static_cast<std::size_t>(i - 1)];
        g.add_term(a, f.coeff_or(shifted, zero));
    }
    return g;
}

bool window_condition(const std::vector<DPForm>& fs) {
    const int r = fs.front().nvars();
    for (std::size_t j = 0; j + 1 < fs.size(); ++j)
        for (int i = 0; i + 1 < r; ++i)
            if (diff_var(i, fs[j + 1]) != diff_var(i + 1, fs[j])) return false;
    return true;
}

} // namespace

ConsecutiveCheck consecutive_terms_check(const std::vector<DPForm>& forms) {
    if (forms.size() < 2) throw DomainError("consecutive_terms_check needs at least two forms");
    const int r = forms.front().nvars();
    const int d = forms.front().degree();
    for (const DPForm& f : forms)
        if (f.nvars() != r || f.degree() != d) throw DomainError("mixed shapes");

    ConsecutiveCheck out;
    std::vector<DPForm> seq = forms;
    if (window_condition(seq)) {
        out.consecutive = true;
    } else {
        std::reverse(seq.begin(), seq.end());
        if (window_condition(seq)) {
            out.consecutive = true;
            out.reversed = true;
        } else {
            return out;
        }
    }

    // extend to the full window of the expansion; each direction terminates
    // within (r-1) d steps
    const Field K = field_of(seq.front());
    std::vector<DPForm> left, right;
    DPForm cur = seq.front();
    for (int guard = 0; guard <= (r - 1) * d + 1; ++guard) {
        cur = shift_left(cur);
        if (cur.is_zero()) break;
        left.push_back(cur);
    }
    cur = seq.back();
    for (int guard = 0; guard <= (r - 1) * d + 1; ++guard) {
        cur = shift_right(cur);
        if (cur.is_zero()) break;
        right.push_back(cur);
    }
    std::vector<DPForm> window;
    for (auto it = left.rbegin(); it != left.rend(); ++it) window.push_back(*it);
    for (const DPForm& f : seq) window.push_back(f);
    for (const DPForm& f : right) window.push_back(f);
    out.offset = static_cast<int>(left.size());

    // scalar witness: the pure-power coefficients along the window
    Expo top(static_cast<std::size_t>(r), 0);
    top[static_cast<std::size_t>(r - 1)] = d;
    const Fq zero = Fq::zero(K);
    for (const DPForm& f : window) out.c_poly.push_back(f.coeff_or(top, zero));
    while (!out.c_poly.empty() && out.c_poly.back().is_zero()) out.c_poly.pop_back();
    return out;
}

CounterexampleFamily build_counterexample(const Field& K, int s, int q, int d, int window_offset,
                                          const std::vector<Fq>& c_poly) {
    if (s < 2 || q < 1 || d < 3) throw DomainError("build_counterexample: need s >= 2, q >= 1, d >= 3");
    if (q + 2 > (d - 2) * (s - 1))
        throw DomainError("build_counterexample: infeasible, q + 2 > (d-2)(s-1)");
    const int r = 2 * s + q;

    // slices of (x_s + t x_{s-1} + ... + t^{s-1} x_1)^[d-2] in s variables
    std::vector<DPForm> u(static_cast<std::size_t>((s - 1) * (d - 2)) + 1, DPForm(s, d - 2));
    for (const Expo& a : monomials(s, d - 2)) {
        int w = 0;
        for (int i = 0; i < s; ++i) w += (s - 1 - i) * a[static_cast<std::size_t>(i)];
        u[static_cast<std::size_t>(w)].add_term(a, Fq::one(K));
    }
    std::vector<Fq> scal = c_poly.empty() ? std::vector<Fq>{Fq::one(K)} : c_poly;

    // window h_1 .. h_{r-1} with h_i = 0 below s-1
    auto window_at = [&](int pos) {
        DPForm acc(s, d - 2);
        for (std::size_t m = 0; m < scal.size(); ++m) {
            int k = window_offset + (pos - (s - 1)) - static_cast<int>(m);
            if (k < 0 || k >= static_cast<int>(u.size())) continue;
            acc = acc + u[static_cast<std::size_t>(k)].scaled(scal[m]);
        }
        return acc;
    };
    CounterexampleFamily fam;
    fam.r = r;
    for (int i = 1; i <= r - 1; ++i) fam.window.push_back(window_at(i));
    for (int i = 1; i < s - 1; ++i)
        if (!fam.window[static_cast<std::size_t>(i - 1)].is_zero())
            throw DomainError("build_counterexample: window does not vanish below s-1");
    {
        // h_{s-1} .. h_{s+q+1} must be linearly independent
        std::vector<DPForm> middle;
        for (int i = s - 1; i <= s + q + 1; ++i) middle.push_back(fam.window[static_cast<std::size_t>(i - 1)]);
        if (form_span_dim(middle, s, d - 2, K) != static_cast<long>(middle.size()))
            throw DomainError("build_counterexample: window slices are dependent");
    }

    // integrate g_k from the window: d_i g_k = h_{k-1+i}
    const Fq zero = Fq::zero(K);
    std::vector<DPForm> g;
    for (int k = 1; k <= s + q; ++k) {
        DPForm gk(s, d - 1);
        for (const Expo& a : monomials(s, d - 1)) {
            int i0 = -1, i1 = -1;
            for (int i = 0; i < s; ++i)
                if (a[static_cast<std::size_t>(i)] > 0) {
                    if (i0 < 0) i0 = i;
                    else if (i1 < 0) i1 = i;
                }
            Expo down = a;
            --down[static_cast<std::size_t>(i0)];
            Fq c = fam.window[static_cast<std::size_t>(k - 1 + i0)].coeff_or(down, zero);
            if (i1 >= 0) {
                Expo down2 = a;
                --down2[static_cast<std::size_t>(i1)];
                if (fam.window[static_cast<std::size_t>(k - 1 + i1)].coeff_or(down2, zero) != c)
                    throw DomainError("build_counterexample: window is not integrable (unreachable)");
            }
            gk.add_term(a, c);
        }
        g.push_back(gk);
    }

    // f = sum x_{s+i} g_i in r variables
    DPForm f(r, d);
    for (int k = 1; k <= s + q; ++k) {
        for (const auto& [a, c] : g[static_cast<std::size_t>(k - 1)].terms()) {
            Expo e(static_cast<std::size_t>(r), 0);
            for (int i = 0; i < s; ++i) e[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i)];
            ++e[static_cast<std::size_t>(s + k - 1)];
            f.add_term(e, c);
        }
    }
    fam.f = f;

    fam.expected_basis.push_back(FqMat::identity(r, Fq::one(K)));
    for (int k = 0; k <= q; ++k) {
        FqMat b(r, r, zero);
        for (int i = 0; i < s; ++i) b.at(i, s + k + i) = Fq::one(K);
        fam.expected_basis.push_back(b);
    }
    return fam;
}

} // namespace apolar
