#include "apolar/resolutions.hpp"

namespace apolar {

namespace {

long binom(long n, long k) {
    mpz_class b = binomial_z(n, k);
    return static_cast<long>(b.get_si());
}

Field field_of(const DPForm& f) {
    if (f.is_zero()) throw DomainError("zero form");
    return f.terms().begin()->second.field();
}

} // namespace

long nu_pair(long s, long t, long k) { return binom(s + t, k + 1) - binom(s, k + 1) - binom(t, k + 1); }

long nu_multi(int n, long r, const std::vector<long>& s, long k) {
    long total = 0;
    for (long si : s) total += si;
    long v = (n - 1) * binom(r, k + 1) + binom(r - total, k + 1);
    for (long si : s) v -= binom(r - si, k + 1);
    return v;
}

BettiTable betti_table_one_var(int d) {
    BettiTable t;
    t.add(0, 0, 1);
    t.add(1, d, 1); // the generator of degree d+1
    return t;
}

BettiTable betti_table_complete_intersection(int a, int b) {
    if (a > b) std::swap(a, b);
    BettiTable t;
    t.add(0, 0, 1);
    t.add(1, a - 1, 1);
    t.add(1, b - 1, 1);
    t.add(2, a + b - 2, 1); // socle degree d = a + b - 2
    return t;
}

BettiTable component_betti_table(const DPForm& g) {
    if (g.is_zero()) throw DomainError("component_betti_table of the zero form");
    const int s = g.nvars();
    const int d = g.degree();
    if (s == 1) return betti_table_one_var(d);
    if (s != 2) throw DomainError("component tables are computed internally only for s <= 2");
    if (!ann_graded(g, 1).basis.empty())
        throw DomainError("component table needs ann(g)_1 = 0 in its own ring");
    // height-two Gorenstein is a complete intersection: exactly two generators
    auto beta = generator_counts(g);
    std::vector<int> degs;
    for (const auto& [j, b] : beta)
        for (long i = 0; i < b; ++i) degs.push_back(j);
    if (degs.size() != 2 || degs[0] + degs[1] != d + 2)
        throw DomainError("component table: not a codimension-two complete intersection");
    return betti_table_complete_intersection(degs[0], degs[1]);
}

BettiTable extend_betti(const BettiTable& table, int extra_vars) {
    if (extra_vars == 0) return table;
    BettiTable out;
    for (const auto& [kj, v] : table.entries) {
        auto [i, j] = kj;
        for (int k = i; k <= i + extra_vars; ++k) out.add(k, j, binom(extra_vars, k - i) * v);
    }
    return out;
}

BettiTable betti_join(const std::vector<BettiTable>& intrinsic, const std::vector<long>& s, long r, int d) {
    if (intrinsic.size() != s.size()) throw DomainError("betti_join: component count mismatch");
    if (d < 2) throw DomainError("betti_join needs degree >= 2");
    long total = 0;
    for (long si : s) total += si;
    if (total > r) throw DomainError("betti_join: support dimensions exceed the ambient");
    const int n = static_cast<int>(s.size());
    BettiTable out;
    // inner rectangle
    for (int k = 1; k < r; ++k)
        for (int j = 1; j < d; ++j) {
            long v = 0;
            for (int i = 0; i < n; ++i) {
                for (const auto& [lj, val] : intrinsic[static_cast<std::size_t>(i)].entries) {
                    auto [l, jj] = lj;
                    if (jj != j || l < 1) continue;
                    v += binom(r - s[static_cast<std::size_t>(i)], k - l) * val;
                }
            }
            if (j == 1) v += nu_multi(n, r, s, k);
            if (j == d - 1) v += nu_multi(n, r, s, r - k);
            out.add(k, j, v);
        }
    // rim
    for (int k = 0; k <= r; ++k) {
        out.add(k, 0, binom(r - total, k));
        out.add(k, d, binom(r - total, k - total));
    }
    return out;
}

namespace {

void check_no_linear(const BettiTable& t) {
    for (const auto& [kj, v] : t.entries) {
        (void)v;
        if (kj.first >= 1 && kj.second == 0)
            throw DomainError("component table has linear generators");
    }
}

} // namespace

TwistMultiset intersection_ideal_twists(const BettiTable& ti, long s, const BettiTable& tj, long t) {
    TwistMultiset out;
    long r = s + t;
    for (int k = 1; k <= r; ++k) {
        out.add(k, -k - 1, nu_pair(s, t, k));
        for (const auto& [lj, v] : ti.entries) {
            auto [i, j] = lj;
            if (i < 1) continue;
            out.add(k, -k - j, binom(t, k - i) * v);
        }
        for (const auto& [lj, v] : tj.entries) {
            auto [i, j] = lj;
            if (i < 1) continue;
            out.add(k, -k - j, binom(s, k - i) * v);
        }
    }
    return out;
}

TwistMultiset join_resolution_twists(const BettiTable& tg, long s, const BettiTable& th, long t, int d) {
    if (d < 2) throw DomainError("join_resolution_twists needs degree >= 2");
    check_no_linear(tg);
    check_no_linear(th);
    TwistMultiset out;
    long r = s + t;
    for (int k = 1; k < r; ++k) {
        out.add(k, -k - 1, nu_pair(s, t, k));
        out.add(k, -d - k + 1, nu_pair(s, t, r - k));
        for (int j = 1; j < d; ++j) {
            long v = 0;
            for (int i = 1; i <= s - 1; ++i) v += binom(r - s, k - i) * tg.at(i, j);
            for (int i = 1; i <= t - 1; ++i) v += binom(r - t, k - i) * th.at(i, j);
            out.add(k, -k - j, v);
        }
    }
    out.add(static_cast<int>(r), -r - d, 1);
    return out;
}

HilbertFunction hilbert_join(const std::vector<HilbertFunction>& components) {
    if (components.empty()) throw DomainError("hilbert_join of nothing");
    std::size_t len = components.front().h.size();
    for (const auto& h : components)
        if (h.h.size() != len) throw DomainError("hilbert_join: mismatched degrees");
    HilbertFunction out;
    out.h.assign(len, 0);
    for (const auto& h : components)
        for (std::size_t e = 0; e < len; ++e) out.h[e] += h.h[e];
    long n1 = static_cast<long>(components.size()) - 1;
    out.h.front() -= n1;
    out.h.back() -= n1;
    return out;
}

long tangent_space_dim(const DPForm& f) {
    if (f.is_zero()) throw DomainError("tangent dimension of the zero form");
    const int d = f.degree();
    if (d < 3) throw DomainError("tangent dimension needs degree >= 3");
    const Field K = field_of(f);
    const int r = f.nvars();
    std::vector<Expo> monos = monomials(r, d);
    SpanBuilder<Fq> span(static_cast<int>(monos.size()), Fq::zero(K));
    for (int a = 1; 2 * a <= d; ++a) {
        auto ia = ann_graded(f, a).basis;
        if (ia.empty()) continue;
        auto ib = ann_graded(f, d - a).basis;
        for (const DiffOp& x : ia)
            for (const DiffOp& y : ib) span.insert(to_coords(op_mul(x, y), monos, Fq::zero(K)));
    }
    return static_cast<long>(monos.size()) - span.dim();
}

long tangent_formula(const std::vector<TangentComponentData>& components, long r, int d) {
    if (d < 3) throw DomainError("tangent formula needs degree >= 3");
    long total_s = 0;
    for (const auto& c : components) total_s += c.s;
    long v = 0;
    for (const auto& c : components) v += c.tangent + c.s * (r - c.s);
    if (d >= 4) {
        for (const auto& c : components) v += (total_s - c.s) * c.beta_top;
    } else {
        v += binom(total_s, 3);
        for (const auto& c : components) v -= binom(c.s, 3);
    }
    return v;
}

PSplitDim psplit_dim(int n, long r, const std::vector<long>& s, const std::vector<long>& component_dims) {
    if (s.size() != component_dims.size() || static_cast<int>(s.size()) != n)
        throw DomainError("psplit_dim: component data mismatch");
    PSplitDim out;
    out.dim = n - 1;
    for (int i = 0; i < n; ++i) {
        out.dim += component_dims[static_cast<std::size_t>(i)] +
                   s[static_cast<std::size_t>(i)] * (r - s[static_cast<std::size_t>(i)]);
        out.fiber_dim += s[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(i)];
    }
    return out;
}

long pgor_dimension_small(long s, const HilbertFunction& h) {
    if (s == 1) return 0;
    if (s != 2) throw DomainError("parameter-space dimensions are supplied internally only for s <= 2");
    long m = 0;
    for (long v : h.h) m = std::max(m, v);
    return 2 * m - 1;
}

std::vector<ComponentResolutionData> component_resolution_data(const SplittingReport& report) {
    const DPForm& f = report.f;
    const Field K = f.terms().begin()->second.field();
    const int r = f.nvars();

    // complete the coid with the complement of the support idempotent, then
    // rectify all blocks into consecutive variables
    std::vector<FqMat> coid;
    for (const auto& c : report.components) coid.push_back(c.idempotent);
    FqMat rest = FqMat::identity(r, Fq::one(K)) - report.support_idem;
    if (!rest.is_zero()) coid.push_back(rest);
    FqMat p = simultaneous_diagonalize(coid);
    auto pinv = inverse(p);
    if (!pinv) throw DomainError("component data: diagonalizer is singular (unreachable)");
    BaseChange rectify(*pinv);

    std::vector<ComponentResolutionData> out;
    int offset = 0;
    for (const auto& comp : report.components) {
        int s = rank(comp.idempotent);
        DPForm moved = rectify.apply(comp.component);
        DPForm intr(s, f.degree());
        for (const auto& [e, c] : moved.terms()) {
            Expo sub(static_cast<std::size_t>(s), 0);
            for (int i = 0; i < r; ++i) {
                int v = e[static_cast<std::size_t>(i)];
                if (v == 0) continue;
                if (i < offset || i >= offset + s)
                    throw DomainError("component data: component escapes its block (unreachable)");
                sub[static_cast<std::size_t>(i - offset)] = v;
            }
            intr.add_term(sub, c);
        }
        ComponentResolutionData data;
        data.s = s;
        data.intrinsic_form = intr;
        data.hilbert = hilbert_function(intr);
        data.tangent_dim = tangent_space_dim(intr);
        auto beta = generator_counts(intr);
        auto it = beta.find(f.degree() - 1);
        data.beta_top = it == beta.end() ? 0 : it->second;
        if (s <= 2) {
            data.intrinsic = component_betti_table(intr);
            data.has_table = true;
        }
        out.push_back(std::move(data));
        offset += s;
    }
    return out;
}

} // namespace apolar
