#include "apolar/artinian.hpp"

#include <random>

#include "apolar/factor.hpp"

namespace apolar {

std::vector<Fq> StructAlgebra::multiply(const std::vector<Fq>& x, const std::vector<Fq>& y) const {
    std::vector<Fq> out(static_cast<std::size_t>(n_), Fq::zero(field_));
    for (int i = 0; i < n_; ++i) {
        if (x[static_cast<std::size_t>(i)].is_zero()) continue;
        for (int j = 0; j < n_; ++j) {
            if (y[static_cast<std::size_t>(j)].is_zero()) continue;
            Fq c = x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)];
            const std::vector<Fq>& prod = basis_product(i, j);
            for (int k = 0; k < n_; ++k) out[static_cast<std::size_t>(k)] += c * prod[static_cast<std::size_t>(k)];
        }
    }
    return out;
}

std::vector<Fq> StructAlgebra::power(const std::vector<Fq>& x, long k) const {
    std::vector<Fq> acc = unit_;
    std::vector<Fq> base = x;
    while (k > 0) {
        if (k & 1) acc = multiply(acc, base);
        base = multiply(base, base);
        k >>= 1;
    }
    return acc;
}

bool StructAlgebra::is_commutative() const {
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            if (basis_product(i, j) != basis_product(j, i)) return false;
    return true;
}

bool StructAlgebra::is_associative_on_basis() const {
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            std::vector<Fq> ij = basis_product(i, j);
            for (int k = 0; k < n_; ++k) {
                std::vector<Fq> ek(static_cast<std::size_t>(n_), Fq::zero(field_));
                ek[static_cast<std::size_t>(k)] = Fq::one(field_);
                std::vector<Fq> left = multiply(ij, ek);
                std::vector<Fq> jk = basis_product(j, k);
                std::vector<Fq> ei(static_cast<std::size_t>(n_), Fq::zero(field_));
                ei[static_cast<std::size_t>(i)] = Fq::one(field_);
                if (left != multiply(ei, jk)) return false;
            }
        }
    return true;
}

bool StructAlgebra::unit_acts_trivially() const {
    for (int i = 0; i < n_; ++i) {
        std::vector<Fq> ei(static_cast<std::size_t>(n_), Fq::zero(field_));
        ei[static_cast<std::size_t>(i)] = Fq::one(field_);
        if (multiply(unit_, ei) != ei) return false;
    }
    return true;
}

FqMat StructAlgebra::mult_operator(const std::vector<Fq>& x) const {
    FqMat m(n_, n_, Fq::zero(field_));
    for (int j = 0; j < n_; ++j) {
        std::vector<Fq> ej(static_cast<std::size_t>(n_), Fq::zero(field_));
        ej[static_cast<std::size_t>(j)] = Fq::one(field_);
        std::vector<Fq> img = multiply(x, ej);
        for (int i = 0; i < n_; ++i) m.at(i, j) = img[static_cast<std::size_t>(i)];
    }
    return m;
}

UPoly StructAlgebra::element_min_poly(const std::vector<Fq>& x) const {
    const Fq zero = Fq::zero(field_);
    std::vector<std::vector<Fq>> powers;
    std::vector<Fq> cur = unit_;
    for (int k = 0; k <= n_; ++k) {
        if (!powers.empty()) {
            FqMat m = FqMat::from_rows(powers, n_, zero);
            auto sol = solve(m.transpose(), cur, zero);
            if (sol) {
                std::vector<Fq> coeffs(static_cast<std::size_t>(k) + 1, zero);
                for (int i = 0; i < k; ++i) coeffs[static_cast<std::size_t>(i)] = zero - (*sol)[static_cast<std::size_t>(i)];
                coeffs[static_cast<std::size_t>(k)] = Fq::one(field_);
                return UPoly(field_, coeffs);
            }
        }
        powers.push_back(cur);
        cur = multiply(cur, x);
    }
    throw DomainError("element_min_poly: no dependence found (unreachable)");
}

StructAlgebra algebra_from_matrices(const std::vector<FqMat>& basis, const Field& K, const FqMat& unit) {
    if (basis.empty()) throw DomainError("algebra_from_matrices: empty basis");
    const int r = basis.front().rows();
    const int n = static_cast<int>(basis.size());
    const Fq zero = Fq::zero(K);
    FqMat coords(r * r, n, zero);
    for (int b = 0; b < n; ++b) {
        auto flat = basis[static_cast<std::size_t>(b)].flatten();
        for (int i = 0; i < r * r; ++i) coords.at(i, b) = flat[static_cast<std::size_t>(i)];
    }
    StructAlgebra alg(n, K);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            FqMat p = basis[static_cast<std::size_t>(i)] * basis[static_cast<std::size_t>(j)];
            auto sol = solve(coords, p.flatten(), zero);
            if (!sol) throw DomainError("algebra_from_matrices: span not closed under products");
            alg.set_product(i, j, *sol);
        }
    auto u = solve(coords, unit.flatten(), zero);
    if (!u) throw DomainError("algebra_from_matrices: unit not in the span");
    alg.set_unit(*u);
    return alg;
}

StructAlgebra algebra_from_matrices(const std::vector<FqMat>& basis, const Field& K) {
    if (basis.empty()) throw DomainError("algebra_from_matrices: empty basis");
    return algebra_from_matrices(basis, K, FqMat::identity(basis.front().rows(), Fq::one(K)));
}

namespace {

// Basis of the quotient A/nil as coordinate representatives plus the
// projection data (nil basis).
struct EtaleQuotient {
    std::vector<std::vector<Fq>> nil;         // basis of the nilradical
    std::vector<std::vector<Fq>> reps;        // coset representatives
};

std::vector<std::vector<Fq>> nilradical_impl(const StructAlgebra& alg) {
    const Field K = alg.field();
    const int n = alg.dim();
    const Fq zero = Fq::zero(K);
    if (K.is_rationals()) {
        // trace-form radical
        std::vector<FqMat> ops;
        for (int i = 0; i < n; ++i) {
            std::vector<Fq> ei(static_cast<std::size_t>(n), zero);
            ei[static_cast<std::size_t>(i)] = Fq::one(K);
            ops.push_back(alg.mult_operator(ei));
        }
        FqMat gram(n, n, zero);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                FqMat p = ops[static_cast<std::size_t>(i)] * ops[static_cast<std::size_t>(j)];
                Fq tr = zero;
                for (int k = 0; k < n; ++k) tr += p.at(k, k);
                gram.at(i, j) = tr;
            }
        return span_basis(kernel_basis(gram, zero), n, zero);
    }
    // prime field: kernel of an iterated Frobenius x -> x^(p^k), p^k >= n
    std::uint64_t p = K.characteristic();
    long k = 1;
    mpz_class pk(static_cast<unsigned long>(p));
    while (pk < n) { pk *= static_cast<unsigned long>(p); ++k; }
    FqMat frob(n, n, zero);
    for (int j = 0; j < n; ++j) {
        std::vector<Fq> ej(static_cast<std::size_t>(n), zero);
        ej[static_cast<std::size_t>(j)] = Fq::one(K);
        std::vector<Fq> img = ej;
        for (long it = 0; it < k; ++it) {
            std::vector<Fq> acc = img;
            // acc^p via binary powering in the algebra
            std::vector<Fq> res = alg.unit();
            std::uint64_t e = p;
            while (e) {
                if (e & 1) res = alg.multiply(res, acc);
                acc = alg.multiply(acc, acc);
                e >>= 1;
            }
            img = res;
        }
        for (int i = 0; i < n; ++i) frob.at(i, j) = img[static_cast<std::size_t>(i)];
    }
    return span_basis(kernel_basis(frob, zero), n, zero);
}

EtaleQuotient etale_quotient(const StructAlgebra& alg) {
    EtaleQuotient q;
    q.nil = nilradical_impl(alg);
    const int n = alg.dim();
    const Fq zero = Fq::zero(alg.field());
    auto base = q.nil;
    for (int i = 0; i < n; ++i) {
        std::vector<Fq> ei(static_cast<std::size_t>(n), zero);
        ei[static_cast<std::size_t>(i)] = Fq::one(alg.field());
        if (!span_contains(span_basis(base, n, zero), ei, n, zero)) {
            base.push_back(ei);
            q.reps.push_back(ei);
        }
    }
    return q;
}

// One splitting step: a set of >= 2 orthogonal idempotents summing to the
// unit, or empty if no split was found (algebra presumed local).
std::vector<std::vector<Fq>> find_split(const StructAlgebra& alg, std::mt19937_64& rng) {
    const Field K = alg.field();
    const int n = alg.dim();
    if (n == 1) return {};

    auto split_by = [&](const std::vector<Fq>& a) -> std::vector<std::vector<Fq>> {
        UPoly m = alg.element_min_poly(a);
        std::vector<UPoly> parts = coprime_power_parts(m, rng());
        if (parts.size() < 2) return {};
        std::vector<std::vector<Fq>> idems;
        auto mul = [&](const std::vector<Fq>& x, const std::vector<Fq>& y) { return alg.multiply(x, y); };
        for (const UPoly& q : parts) {
            UPoly u = (m / q).monic();
            UPoly g(K);
            auto [s, t] = half_xgcd(u, q, &g);
            (void)t;
            if (!g.is_one()) throw DomainError("find_split: parts are not coprime (unreachable)");
            UPoly idem_poly = (s * u) % m;
            idems.push_back(eval_in_algebra(idem_poly, a, alg.unit(), mul));
        }
        return idems;
    };

    if (K.is_prime_field()) {
        // deterministic: a non-scalar element fixed by Frobenius modulo the
        // nilradical splits, and none exists iff the algebra is local
        EtaleQuotient q = etale_quotient(alg);
        const int m = static_cast<int>(q.reps.size());
        const Fq zero = Fq::zero(K);
        // Frobenius on A/nil in the chosen representatives
        std::uint64_t p = K.characteristic();
        std::vector<std::vector<Fq>> quot_basis = q.reps;
        auto full = q.nil;
        for (auto& r : quot_basis) full.push_back(r);
        FqMat tofull = FqMat::from_rows(full, n, zero).transpose();
        FqMat fr(m, m, zero);
        for (int j = 0; j < m; ++j) {
            std::vector<Fq> img = q.reps[static_cast<std::size_t>(j)];
            std::vector<Fq> res = alg.unit();
            std::vector<Fq> acc = img;
            std::uint64_t e = p;
            while (e) {
                if (e & 1) res = alg.multiply(res, acc);
                acc = alg.multiply(acc, acc);
                e >>= 1;
            }
            auto sol = solve(tofull, res, zero);
            if (!sol) throw DomainError("find_split: quotient coordinates failed (unreachable)");
            for (int i = 0; i < m; ++i)
                fr.at(i, j) = (*sol)[q.nil.size() + static_cast<std::size_t>(i)];
        }
        FqMat fmi = fr - FqMat::identity(m, Fq::one(K));
        auto fixed = kernel_basis(fmi, zero);
        if (fixed.size() <= 1) return {}; // certified local
        for (const auto& v : fixed) {
            std::vector<Fq> lift(static_cast<std::size_t>(n), zero);
            for (int i = 0; i < m; ++i)
                for (int k = 0; k < n; ++k)
                    lift[static_cast<std::size_t>(k)] += v[static_cast<std::size_t>(i)] * q.reps[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
            auto idems = split_by(lift);
            if (!idems.empty()) return idems;
        }
        // all kernel vectors were scalar multiples of the unit mod nil; take a
        // random combination of two of them
        for (int tries = 0; tries < 32; ++tries) {
            std::vector<Fq> lift(static_cast<std::size_t>(n), zero);
            for (const auto& v : fixed)
                for (int i = 0; i < m; ++i)
                    for (int k = 0; k < n; ++k)
                        lift[static_cast<std::size_t>(k)] += Fq::of_int(K, static_cast<long>(rng() % K.characteristic())) *
                                                             v[static_cast<std::size_t>(i)] *
                                                             q.reps[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
            auto idems = split_by(lift);
            if (!idems.empty()) return idems;
        }
        throw DomainError("find_split: prime-field split certified but not found");
    }

    // rationals: basis elements first, then seeded random combinations
    const Fq zero = Fq::zero(K);
    for (int i = 0; i < n; ++i) {
        std::vector<Fq> ei(static_cast<std::size_t>(n), zero);
        ei[static_cast<std::size_t>(i)] = Fq::one(K);
        auto idems = split_by(ei);
        if (!idems.empty()) return idems;
    }
    int attempts = 40 + 10 * n;
    for (int t = 0; t < attempts; ++t) {
        long range = 3 + t / 4;
        std::vector<Fq> a(static_cast<std::size_t>(n), zero);
        for (int i = 0; i < n; ++i)
            a[static_cast<std::size_t>(i)] = Fq::of_int(K, static_cast<long>(rng() % static_cast<std::uint64_t>(2 * range + 1)) - range);
        auto idems = split_by(a);
        if (!idems.empty()) return idems;
    }
    return {};
}

struct SubAlgebra {
    StructAlgebra alg;
    std::vector<std::vector<Fq>> basis; // in parent coordinates
};

SubAlgebra corner_subalgebra(const StructAlgebra& alg, const std::vector<Fq>& idem) {
    const Field K = alg.field();
    const int n = alg.dim();
    const Fq zero = Fq::zero(K);
    std::vector<std::vector<Fq>> gens;
    for (int i = 0; i < n; ++i) {
        std::vector<Fq> ei(static_cast<std::size_t>(n), zero);
        ei[static_cast<std::size_t>(i)] = Fq::one(K);
        gens.push_back(alg.multiply(idem, ei));
    }
    std::vector<std::vector<Fq>> basis = span_basis(gens, n, zero);
    const int m = static_cast<int>(basis.size());
    FqMat coords = FqMat::from_rows(basis, n, zero).transpose();
    StructAlgebra sub(m, K);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            auto p = alg.multiply(basis[static_cast<std::size_t>(i)], basis[static_cast<std::size_t>(j)]);
            auto sol = solve(coords, p, zero);
            if (!sol) throw DomainError("corner_subalgebra: product escaped the block");
            sub.set_product(i, j, *sol);
        }
    auto u = solve(coords, idem, zero);
    if (!u) throw DomainError("corner_subalgebra: idempotent not in its own block");
    sub.set_unit(*u);
    return {std::move(sub), std::move(basis)};
}

void coid_rec(const StructAlgebra& alg, const std::vector<std::vector<Fq>>& embed,
              const std::vector<Fq>& unit_in_parent, std::mt19937_64& rng, Coid& out) {
    std::vector<std::vector<Fq>> split = find_split(alg, rng);
    if (split.empty()) {
        out.idempotents.push_back(unit_in_parent);
        auto nil = nilradical_impl(alg);
        out.residue_degrees.push_back(alg.dim() - static_cast<int>(nil.size()));
        return;
    }
    for (const auto& e : split) {
        SubAlgebra sub = corner_subalgebra(alg, e);
        // embed block data into the parent's parent coordinates
        std::vector<std::vector<Fq>> sub_embed;
        for (const auto& b : sub.basis) {
            std::vector<Fq> v(embed.front().size(), Fq::zero(alg.field()));
            for (std::size_t i = 0; i < b.size(); ++i)
                for (std::size_t k = 0; k < v.size(); ++k) v[k] += b[i] * embed[i][k];
            sub_embed.push_back(std::move(v));
        }
        std::vector<Fq> e_parent(embed.front().size(), Fq::zero(alg.field()));
        for (std::size_t i = 0; i < e.size(); ++i)
            for (std::size_t k = 0; k < e_parent.size(); ++k) e_parent[k] += e[i] * embed[i][k];
        coid_rec(sub.alg, sub_embed, e_parent, rng, out);
    }
}

} // namespace

Coid maximal_coid(const StructAlgebra& alg, std::uint64_t seed) {
    if (!alg.is_commutative()) throw DomainError("maximal_coid needs a commutative algebra");
    std::mt19937_64 rng(seed);
    Coid out;
    out.seed = seed;
    std::vector<std::vector<Fq>> embed;
    for (int i = 0; i < alg.dim(); ++i) {
        std::vector<Fq> ei(static_cast<std::size_t>(alg.dim()), Fq::zero(alg.field()));
        ei[static_cast<std::size_t>(i)] = Fq::one(alg.field());
        embed.push_back(ei);
    }
    coid_rec(alg, embed, alg.unit(), rng, out);
    return out;
}

std::vector<std::vector<Fq>> nilradical(const StructAlgebra& alg) {
    if (!alg.is_commutative()) throw DomainError("nilradical needs a commutative algebra");
    return nilradical_impl(alg);
}

std::vector<AlgebraBlock> block_decompose(const StructAlgebra& alg, std::uint64_t seed) {
    Coid coid = maximal_coid(alg, seed);
    std::vector<AlgebraBlock> blocks;
    for (const auto& e : coid.idempotents) {
        SubAlgebra sub = corner_subalgebra(alg, e);
        blocks.push_back({e, sub.basis, sub.alg});
    }
    return blocks;
}

FqMat simultaneous_diagonalize(const std::vector<FqMat>& coid) {
    if (coid.empty()) throw DomainError("simultaneous_diagonalize: empty coid");
    const int r = coid.front().rows();
    const Field K = coid.front().at(0, 0).field();
    const Fq zero = Fq::zero(K);
    // verify the coid axioms
    FqMat sum(r, r, zero);
    for (std::size_t i = 0; i < coid.size(); ++i) {
        if (coid[i] * coid[i] != coid[i] || coid[i].is_zero())
            throw DomainError("simultaneous_diagonalize: not idempotent");
        for (std::size_t j = 0; j < coid.size(); ++j)
            if (i != j && !(coid[i] * coid[j]).is_zero())
                throw DomainError("simultaneous_diagonalize: not orthogonal");
        sum = sum + coid[i];
    }
    if (sum != FqMat::identity(r, Fq::one(K)))
        throw DomainError("simultaneous_diagonalize: does not sum to the identity");

    FqMat p(r, r, zero);
    int col = 0;
    for (const FqMat& e : coid) {
        // column-space basis of E
        std::vector<std::vector<Fq>> cols;
        for (int j = 0; j < r; ++j) {
            std::vector<Fq> v;
            for (int i = 0; i < r; ++i) v.push_back(e.at(i, j));
            cols.push_back(std::move(v));
        }
        for (const auto& v : span_basis(cols, r, zero)) {
            for (int i = 0; i < r; ++i) p.at(i, col) = v[static_cast<std::size_t>(i)];
            ++col;
        }
    }
    if (col != r) throw DomainError("simultaneous_diagonalize: ranks do not sum to r");
    return p;
}

} // namespace apolar
