#ifndef APOLAR_MATRIX_HPP
#define APOLAR_MATRIX_HPP

#include <optional>
#include <utility>
#include <vector>

#include "apolar/common.hpp"
#include "apolar/field.hpp"

namespace apolar {

// Dense matrix over an exact scalar type K.  K must supply same-context
// zero()/one()/is_zero() instance methods and exact +,-,*,/ (division only by
// nonzero).  Instantiated with Fq for the library core and with rational
// function scalars in the degenerate-splitting code.
template <class K>
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols, const K& zero)
        : rows_(rows), cols_(cols), e_(static_cast<std::size_t>(rows) * cols, zero) {}

    static Mat identity(int n, const K& one) {
        Mat m(n, n, one.zero());
        for (int i = 0; i < n; ++i) m.at(i, i) = one;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    K& at(int i, int j) { return e_[static_cast<std::size_t>(i) * cols_ + j]; }
    const K& at(int i, int j) const { return e_[static_cast<std::size_t>(i) * cols_ + j]; }

    bool is_zero() const {
        for (const K& x : e_)
            if (!x.is_zero()) return false;
        return true;
    }

    bool operator==(const Mat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) return false;
        for (std::size_t i = 0; i < e_.size(); ++i)
            if (!(e_[i] == o.e_[i])) return false;
        return true;
    }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    Mat operator+(const Mat& o) const {
        Mat r = *this;
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = r.e_[i] + o.e_[i];
        return r;
    }
    Mat operator-(const Mat& o) const {
        Mat r = *this;
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = r.e_[i] - o.e_[i];
        return r;
    }
    Mat operator*(const Mat& o) const {
        Mat r(rows_, o.cols_, e_.empty() ? o.e_[0].zero() : e_[0].zero());
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const K& a = at(i, k);
                if (a.is_zero()) continue;
                for (int j = 0; j < o.cols_; ++j)
                    r.at(i, j) = r.at(i, j) + a * o.at(k, j);
            }
        return r;
    }
    Mat scaled(const K& c) const {
        Mat r = *this;
        for (K& x : r.e_) x = x * c;
        return r;
    }

    Mat transpose() const {
        Mat r(cols_, rows_, e_.empty() ? K() : e_[0].zero());
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    Mat pow(int k) const {
        Mat r = identity(rows_, e_[0].one());
        Mat b = *this;
        while (k > 0) {
            if (k & 1) r = r * b;
            b = b * b;
            k >>= 1;
        }
        return r;
    }

    std::vector<K> row(int i) const {
        std::vector<K> v(e_.begin() + static_cast<std::size_t>(i) * cols_,
                         e_.begin() + static_cast<std::size_t>(i + 1) * cols_);
        return v;
    }

    std::vector<K> flatten() const { return e_; }

    static Mat from_rows(const std::vector<std::vector<K>>& rows, int cols, const K& zero) {
        Mat m(static_cast<int>(rows.size()), cols, zero);
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < cols; ++j) m.at(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        return m;
    }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<K> e_;
};

// Reduced row echelon form with full reduction and normalized pivots.
// Pivot choice: leftmost nonzero column, topmost unused row.  Returns the
// pivot column list.
template <class K>
std::vector<int> rref_in_place(Mat<K>& m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int pr = -1;
        for (int i = row; i < m.rows(); ++i)
            if (!m.at(i, col).is_zero()) { pr = i; break; }
        if (pr < 0) continue;
        if (pr != row)
            for (int j = 0; j < m.cols(); ++j) std::swap(m.at(pr, j), m.at(row, j));
        K inv = m.at(row, col).one() / m.at(row, col);
        for (int j = col; j < m.cols(); ++j) m.at(row, j) = m.at(row, j) * inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == row || m.at(i, col).is_zero()) continue;
            K c = m.at(i, col);
            for (int j = col; j < m.cols(); ++j)
                m.at(i, j) = m.at(i, j) - c * m.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <class K>
std::pair<Mat<K>, std::vector<int>> rref(Mat<K> m) {
    std::vector<int> p = rref_in_place(m);
    return {std::move(m), std::move(p)};
}

template <class K>
int rank(const Mat<K>& m) {
    Mat<K> c = m;
    return static_cast<int>(rref_in_place(c).size());
}

// Canonical kernel basis: for each free column (in increasing order) the
// vector with that free variable 1, other free variables 0, pivot entries
// solved from the rref.
template <class K>
std::vector<std::vector<K>> kernel_basis(const Mat<K>& m, const K& zero) {
    Mat<K> r = m;
    std::vector<int> pivots = rref_in_place(r);
    std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
    for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
    std::vector<std::vector<K>> out;
    for (int fc = 0; fc < m.cols(); ++fc) {
        if (is_pivot[static_cast<std::size_t>(fc)]) continue;
        std::vector<K> v(static_cast<std::size_t>(m.cols()), zero);
        v[static_cast<std::size_t>(fc)] = zero.one();
        for (std::size_t pi = 0; pi < pivots.size(); ++pi)
            v[static_cast<std::size_t>(pivots[pi])] = zero - r.at(static_cast<int>(pi), fc);
        out.push_back(std::move(v));
    }
    return out;
}

// One solution of m x = b with free variables set to zero, or nullopt.
template <class K>
std::optional<std::vector<K>> solve(const Mat<K>& m, const std::vector<K>& b, const K& zero) {
    Mat<K> aug(m.rows(), m.cols() + 1, zero);
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols()) = b[static_cast<std::size_t>(i)];
    }
    std::vector<int> pivots = rref_in_place(aug);
    if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
    std::vector<K> x(static_cast<std::size_t>(m.cols()), zero);
    for (std::size_t pi = 0; pi < pivots.size(); ++pi)
        x[static_cast<std::size_t>(pivots[pi])] = aug.at(static_cast<int>(pi), m.cols());
    return x;
}

template <class K>
std::optional<Mat<K>> inverse(const Mat<K>& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    const K zero = m.rows() ? m.at(0, 0).zero() : K();
    int n = m.rows();
    Mat<K> aug(n, 2 * n, zero);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, n + i) = zero.one();
    }
    std::vector<int> pivots = rref_in_place(aug);
    if (static_cast<int>(pivots.size()) != n || pivots.back() != n - 1) return std::nullopt;
    Mat<K> inv(n, n, zero);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
    return inv;
}

// Canonical basis (rref rows) of the row span of the given vectors.
template <class K>
std::vector<std::vector<K>> span_basis(const std::vector<std::vector<K>>& vecs, int dim, const K& zero) {
    if (vecs.empty()) return {};
    Mat<K> m = Mat<K>::from_rows(vecs, dim, zero);
    std::vector<int> pivots = rref_in_place(m);
    std::vector<std::vector<K>> out;
    for (std::size_t i = 0; i < pivots.size(); ++i) out.push_back(m.row(static_cast<int>(i)));
    return out;
}

template <class K>
bool span_contains(const std::vector<std::vector<K>>& basis, const std::vector<K>& v, int dim, const K& zero) {
    if (basis.empty()) {
        for (const K& x : v)
            if (!x.is_zero()) return false;
        return true;
    }
    Mat<K> m = Mat<K>::from_rows(basis, dim, zero);
    Mat<K> mt = m.transpose();
    return solve(mt, v, zero).has_value();
}

// Incremental row-reduced span: O(current dim x length) membership tests and
// insertions, for the hot loops that grow a span one vector at a time.
template <class K>
class SpanBuilder {
public:
    SpanBuilder(int length, const K& zero) : length_(length), zero_(zero) {}

    int dim() const { return static_cast<int>(rows_.size()); }

    // reduces v against the current rows; returns the residue
    std::vector<K> reduce(std::vector<K> v) const {
        for (const auto& [p, row] : rows_) {
            const K& c = v[static_cast<std::size_t>(p)];
            if (c.is_zero()) continue;
            K f = c;
            for (int j = p; j < length_; ++j)
                v[static_cast<std::size_t>(j)] = v[static_cast<std::size_t>(j)] - f * row[static_cast<std::size_t>(j)];
        }
        return v;
    }

    bool contains(const std::vector<K>& v) const {
        std::vector<K> r = reduce(v);
        for (const K& x : r)
            if (!x.is_zero()) return false;
        return true;
    }

    // returns true when v enlarged the span
    bool insert(const std::vector<K>& v) {
        std::vector<K> r = reduce(v);
        int pivot = -1;
        for (int j = 0; j < length_; ++j)
            if (!r[static_cast<std::size_t>(j)].is_zero()) {
                pivot = j;
                break;
            }
        if (pivot < 0) return false;
        K inv = r[static_cast<std::size_t>(pivot)].one() / r[static_cast<std::size_t>(pivot)];
        for (int j = pivot; j < length_; ++j) r[static_cast<std::size_t>(j)] = r[static_cast<std::size_t>(j)] * inv;
        rows_.emplace(pivot, std::move(r));
        return true;
    }

private:
    int length_;
    K zero_;
    std::map<int, std::vector<K>> rows_; // pivot column -> normalized row
};

// Minimal polynomial of a square matrix, monic, coefficients low to high.
// Found as the first linear dependence among I, A, A^2, ... in the flattened
// coordinates.
template <class K>
std::vector<K> minimal_polynomial(const Mat<K>& a) {
    if (a.rows() != a.cols() || a.rows() == 0)
        throw DomainError("minimal_polynomial needs a nonempty square matrix");
    const K zero = a.at(0, 0).zero();
    const int n = a.rows();
    std::vector<std::vector<K>> powers;
    Mat<K> cur = Mat<K>::identity(n, zero.one());
    for (int k = 0; k <= n; ++k) {
        std::vector<K> v = cur.flatten();
        if (!powers.empty()) {
            Mat<K> m = Mat<K>::from_rows(powers, n * n, zero);
            auto sol = solve(m.transpose(), v, zero);
            if (sol) {
                std::vector<K> coeffs(static_cast<std::size_t>(k) + 1, zero);
                for (int i = 0; i < k; ++i) coeffs[static_cast<std::size_t>(i)] = zero - (*sol)[static_cast<std::size_t>(i)];
                coeffs[static_cast<std::size_t>(k)] = zero.one();
                return coeffs;
            }
        }
        powers.push_back(std::move(v));
        cur = cur * a;
    }
    throw DomainError("minimal_polynomial: no dependence found (unreachable)");
}

using FqMat = Mat<Fq>;

inline int nilpotency_index(const FqMat& a, int cap) {
    FqMat p = a;
    for (int k = 1; k <= cap; ++k) {
        if (p.is_zero()) return k;
        p = p * a;
    }
    return -1; // not nilpotent within cap
}

} // namespace apolar

#endif
