#pragma once

// Dense matrices over a commutative ring, with division-free determinant and
// characteristic polynomial (Berkowitz), adjugate, exterior powers, Smith and
// Hermite forms over K[t], and fraction-free nullspaces over F_q[t].

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "motivix/frac.hpp"

namespace motivix {

template <class R>
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols, const R& zero)
        : rows_(rows), cols_(cols), zero_(zero.zero_like()), a_(rows * cols, zero_) {}

    static Mat identity(std::size_t n, const R& zero) {
        Mat m(n, n, zero);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = zero.one_like();
        return m;
    }
    static Mat scalar(std::size_t n, const R& s) {
        Mat m(n, n, s.zero_like());
        for (std::size_t i = 0; i < n; ++i) m(i, i) = s;
        return m;
    }
    static Mat from_rows(const std::vector<std::vector<R>>& rows, const R& zero) {
        Mat m(rows.size(), rows.empty() ? 0 : rows[0].size(), zero);
        for (std::size_t i = 0; i < m.rows_; ++i) {
            if (rows[i].size() != m.cols_) throw std::invalid_argument("ragged matrix rows");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }
    const R& zero_elem() const noexcept { return zero_; }

    R& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const R& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool is_zero() const {
        for (const auto& x : a_)
            if (!x.is_zero()) return false;
        return true;
    }
    bool is_identity() const {
        if (!square()) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if ((*this)(i, j) != (i == j ? zero_.one_like() : zero_)) return false;
        return true;
    }

    Mat operator+(const Mat& o) const {
        check_same(o);
        Mat r = *this;
        for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + o.a_[k];
        return r;
    }
    Mat operator-(const Mat& o) const {
        check_same(o);
        Mat r = *this;
        for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] - o.a_[k];
        return r;
    }
    Mat operator-() const {
        Mat r = *this;
        for (auto& x : r.a_) x = -x;
        return r;
    }
    Mat operator*(const Mat& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
        Mat r(rows_, o.cols_, zero_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const R& x = (*this)(i, k);
                if (x.is_zero()) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) {
                    const R& y = o(k, j);
                    if (y.is_zero()) continue;
                    r(i, j) = r(i, j) + x * y;
                }
            }
        return r;
    }
    Mat scale(const R& s) const {
        Mat r = *this;
        for (auto& x : r.a_) x = x * s;
        return r;
    }
    std::vector<R> apply(const std::vector<R>& v) const {
        std::vector<R> out(rows_, zero_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out[i] = out[i] + (*this)(i, j) * v[j];
        return out;
    }
    Mat transpose() const {
        Mat r(cols_, rows_, zero_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }
    Mat submatrix(const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) const {
        Mat r(rs.size(), cs.size(), zero_);
        for (std::size_t i = 0; i < rs.size(); ++i)
            for (std::size_t j = 0; j < cs.size(); ++j) r(i, j) = (*this)(rs[i], cs[j]);
        return r;
    }
    Mat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        Mat r(nr, nc, zero_);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) r(i, j) = (*this)(r0 + i, c0 + j);
        return r;
    }
    void set_block(std::size_t r0, std::size_t c0, const Mat& b) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }

    void swap_rows(std::size_t i, std::size_t k) {
        if (i == k) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(i, j), (*this)(k, j));
    }
    void swap_cols(std::size_t j, std::size_t k) {
        if (j == k) return;
        for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, j), (*this)(i, k));
    }
    /// row_i += c * row_k
    void add_row(std::size_t i, std::size_t k, const R& c) {
        if (c.is_zero()) return;
        for (std::size_t j = 0; j < cols_; ++j)
            if (!(*this)(k, j).is_zero()) (*this)(i, j) = (*this)(i, j) + c * (*this)(k, j);
    }
    /// col_j += c * col_k
    void add_col(std::size_t j, std::size_t k, const R& c) {
        if (c.is_zero()) return;
        for (std::size_t i = 0; i < rows_; ++i)
            if (!(*this)(i, k).is_zero()) (*this)(i, j) = (*this)(i, j) + (*this)(i, k) * c;
    }
    void scale_row(std::size_t i, const R& c) {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = (*this)(i, j) * c;
    }
    void scale_col(std::size_t j, const R& c) {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = (*this)(i, j) * c;
    }

    template <class F>
    auto map(F&& f) const {
        using S = std::decay_t<decltype(f(zero_))>;
        Mat<S> r(rows_, cols_, f(zero_));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(i, j) = f((*this)(i, j));
        return r;
    }

    friend bool operator==(const Mat& a, const Mat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }
    friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

private:
    void check_same(const Mat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
    }

    std::size_t rows_ = 0, cols_ = 0;
    R zero_{};
    std::vector<R> a_;
};

using TMat = Mat<TPoly>;

inline TMat sigma(const TMat& m) {
    return m.map([](const TPoly& a) { return sigma(a); });
}

inline TMat sigma_pow(const TMat& m, std::uint32_t k) {
    TMat r = m;
    for (std::uint32_t i = 0; i < k; ++i) r = sigma(r);
    return r;
}

template <class R>
Mat<R> mat_pow(const Mat<R>& a, std::uint64_t k) {
    Mat<R> r = Mat<R>::identity(a.rows(), a.zero_elem()), b = a;
    while (k) {
        if (k & 1) r = r * b;
        k >>= 1;
        if (k) b = b * b;
    }
    return r;
}

template <class R>
Mat<R> block_diag(const Mat<R>& a, const Mat<R>& b) {
    Mat<R> r(a.rows() + b.rows(), a.cols() + b.cols(), a.zero_elem());
    r.set_block(0, 0, a);
    r.set_block(a.rows(), a.cols(), b);
    return r;
}

/// det(x I - A), ascending in x, by Berkowitz's division-free recurrence.
template <class R>
Poly<R> charpoly(const Mat<R>& a) {
    if (!a.square()) throw std::invalid_argument("charpoly of non-square matrix");
    const std::size_t n = a.rows();
    const R zero = a.zero_elem();
    std::vector<R> p{zero.one_like()};  // descending coefficients
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<R> t(k + 2, zero);
        t[0] = zero.one_like();
        t[1] = -a(k, k);
        std::vector<R> v(k, zero);
        for (std::size_t i = 0; i < k; ++i) v[i] = a(i, k);
        for (std::size_t j = 2; j <= k + 1; ++j) {
            R s = zero;
            for (std::size_t i = 0; i < k; ++i) s = s + a(k, i) * v[i];
            t[j] = -s;
            if (j == k + 1) break;
            std::vector<R> w(k, zero);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t l = 0; l < k; ++l) w[i] = w[i] + a(i, l) * v[l];
            v = std::move(w);
        }
        std::vector<R> np(k + 2, zero);
        for (std::size_t i = 0; i < k + 2; ++i)
            for (std::size_t j = 0; j <= i && j < k + 2; ++j)
                if (i - j <= k) np[i] = np[i] + t[j] * p[i - j];
        p = std::move(np);
    }
    std::reverse(p.begin(), p.end());
    return Poly<R>(std::move(p), zero);
}

template <class R>
R det(const Mat<R>& a) {
    if (!a.square()) throw std::invalid_argument("determinant of non-square matrix");
    if (a.rows() == 0) return a.zero_elem().one_like();
    const Poly<R> cp = charpoly(a);
    const R c0 = cp.coeff(0);
    return a.rows() % 2 ? -c0 : c0;
}

/// Adjugate via the characteristic polynomial: with det(xI - A) = sum c_i x^i,
/// adj(A) = (-1)^(n-1) (A^(n-1) + c_(n-1) A^(n-2) + ... + c_1 I).
template <class R>
Mat<R> adjugate(const Mat<R>& a) {
    const std::size_t n = a.rows();
    const R zero = a.zero_elem();
    if (n == 0) return a;
    if (n == 1) return Mat<R>::identity(1, zero);
    const Poly<R> cp = charpoly(a);
    Mat<R> acc = Mat<R>::identity(n, zero);
    for (std::size_t i = n - 1; i >= 1; --i) acc = acc * a + Mat<R>::scalar(n, cp.coeff(i));
    return (n - 1) % 2 ? -acc : acc;
}

/// Size-k subsets of {0..n-1} in colexicographic order.
inline std::vector<std::vector<std::size_t>> colex_subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    if (k > n) return out;
    std::vector<std::size_t> s(k);
    for (std::size_t i = 0; i < k; ++i) s[i] = i;
    while (true) {
        out.push_back(s);
        // Next in colex: find the first position that can be incremented.
        std::size_t i = 0;
        while (i < k && (i + 1 < k ? s[i] + 1 == s[i + 1] : s[i] + 1 == n)) ++i;
        if (i == k) break;
        ++s[i];
        for (std::size_t j = 0; j < i; ++j) s[j] = j;
    }
    return out;
}

/// i-th exterior power: matrix of i x i minors, subsets in colex order.
template <class R>
Mat<R> exterior_power(const Mat<R>& a, std::size_t i) {
    const auto subs = colex_subsets(a.rows(), i);
    const auto csubs = colex_subsets(a.cols(), i);
    Mat<R> r(subs.size(), csubs.size(), a.zero_elem());
    for (std::size_t x = 0; x < subs.size(); ++x)
        for (std::size_t y = 0; y < csubs.size(); ++y) r(x, y) = det(a.submatrix(subs[x], csubs[y]));
    return r;
}

template <class R>
Mat<R> eval_poly_at(const Poly<R>& f, const Mat<R>& a) {
    Mat<R> acc(a.rows(), a.cols(), a.zero_elem());
    for (std::size_t i = f.size(); i-- > 0;) acc = acc * a + Mat<R>::scalar(a.rows(), f[i]);
    return acc;
}

// ---- normal forms over K[t] ----------------------------------------------

template <class K>
struct SmithForm {
    Mat<Poly<K>> U, D, V;           // U * A * V = D
    std::vector<Poly<K>> invariants;  // nonzero diagonal entries, monic, d_1 | d_2 | ...
};

/// Smith normal form over K[t], K a field. Pivots are the lowest-degree
/// entries of the remaining block, ties broken in row-major order.
template <class K>
SmithForm<K> smith_normal_form(const Mat<Poly<K>>& a) {
    using P = Poly<K>;
    const std::size_t m = a.rows(), n = a.cols();
    const P zero = a.zero_elem();
    Mat<P> D = a;
    Mat<P> U = Mat<P>::identity(m, zero), V = Mat<P>::identity(n, zero);
    const std::size_t steps = std::min(m, n);
    std::size_t k = 0;
    for (; k < steps; ++k) {
        while (true) {
            long best = -1;
            std::size_t bi = 0, bj = 0;
            for (std::size_t i = k; i < m; ++i)
                for (std::size_t j = k; j < n; ++j) {
                    const P& x = D(i, j);
                    if (x.is_zero()) continue;
                    if (best < 0 || x.degree() < best) {
                        best = x.degree();
                        bi = i;
                        bj = j;
                    }
                }
            if (best < 0) goto done;
            D.swap_rows(k, bi);
            U.swap_rows(k, bi);
            D.swap_cols(k, bj);
            V.swap_cols(k, bj);
            bool dirty = false;
            for (std::size_t i = k + 1; i < m; ++i) {
                if (D(i, k).is_zero()) continue;
                const P q = D(i, k) / D(k, k);
                D.add_row(i, k, -q);
                U.add_row(i, k, -q);
                if (!D(i, k).is_zero()) dirty = true;
            }
            for (std::size_t j = k + 1; j < n; ++j) {
                if (D(k, j).is_zero()) continue;
                const P q = D(k, j) / D(k, k);
                D.add_col(j, k, -q);
                V.add_col(j, k, -q);
                if (!D(k, j).is_zero()) dirty = true;
            }
            if (dirty) continue;
            bool fixed = false;
            for (std::size_t i = k + 1; i < m && !fixed; ++i)
                for (std::size_t j = k + 1; j < n; ++j)
                    if (!(D(i, j) % D(k, k)).is_zero()) {
                        D.add_row(k, i, zero.one_like());
                        U.add_row(k, i, zero.one_like());
                        fixed = true;
                        break;
                    }
            if (!fixed) break;
        }
        const P c = P::constant(D(k, k).lc().inv());
        D.scale_row(k, c);
        U.scale_row(k, c);
    }
done:
    SmithForm<K> out{U, D, V, {}};
    for (std::size_t i = 0; i < steps; ++i)
        if (!D(i, i).is_zero()) out.invariants.push_back(D(i, i));
    return out;
}

template <class K>
struct HermiteForm {
    Mat<Poly<K>> H, V;  // A * V = [H | 0], H lower triangular with monic diagonal
    std::size_t rank = 0;
};

/// Column Hermite form over K[t]: lower-triangular basis of the column span.
/// For each row the pivot column is the lowest-degree candidate, ties to the
/// leftmost column. rank < rows means the span is not of full rank.
template <class K>
HermiteForm<K> column_hermite_form(const Mat<Poly<K>>& a) {
    using P = Poly<K>;
    const std::size_t m = a.rows(), n = a.cols();
    const P zero = a.zero_elem();
    Mat<P> H = a;
    Mat<P> V = Mat<P>::identity(n, zero);
    std::size_t col = 0;
    for (std::size_t i = 0; i < m && col < n; ++i) {
        while (true) {
            long best = -1;
            std::size_t bj = 0;
            for (std::size_t j = col; j < n; ++j) {
                const P& x = H(i, j);
                if (!x.is_zero() && (best < 0 || x.degree() < best)) {
                    best = x.degree();
                    bj = j;
                }
            }
            if (best < 0) break;
            H.swap_cols(col, bj);
            V.swap_cols(col, bj);
            bool dirty = false;
            for (std::size_t j = col + 1; j < n; ++j) {
                if (H(i, j).is_zero()) continue;
                const P q = H(i, j) / H(i, col);
                H.add_col(j, col, -q);
                V.add_col(j, col, -q);
                if (!H(i, j).is_zero()) dirty = true;
            }
            if (!dirty) break;
        }
        if (H(i, col).is_zero()) continue;
        const P c = P::constant(H(i, col).lc().inv());
        H.scale_col(col, c);
        V.scale_col(col, c);
        for (std::size_t j = 0; j < col; ++j) {
            const P q = H(i, j) / H(i, col);
            H.add_col(j, col, -q);
            V.add_col(j, col, -q);
        }
        ++col;
    }
    return {H, V, col};
}

/// Inverse of a matrix over K[t] whose determinant is a nonzero constant.
template <class K>
Mat<Poly<K>> unimodular_inverse(const Mat<Poly<K>>& a) {
    const Poly<K> d = det(a);
    if (d.degree() != 0) throw std::domain_error("matrix is not unimodular");
    return adjugate(a).scale(Poly<K>::constant(d.lc().inv()));
}

// ---- fraction-free nullspace over F_q[t] ---------------------------------

/// Kernel of A (entries in K[t]) as primitive polynomial vectors, computed by
/// fraction-free Gauss-Jordan elimination with lowest-degree pivots.
template <class K>
std::vector<std::vector<Poly<K>>> nullspace(const Mat<Poly<K>>& a) {
    using P = Poly<K>;
    const std::size_t m = a.rows(), n = a.cols();
    const P zero = a.zero_elem();
    Mat<P> M = a;
    P prev = zero.one_like();
    std::vector<std::size_t> pivcol;
    std::size_t row = 0;
    for (std::size_t c = 0; c < n && row < m; ++c) {
        long best = -1;
        std::size_t bi = 0;
        for (std::size_t i = row; i < m; ++i) {
            const P& x = M(i, c);
            if (!x.is_zero() && (best < 0 || x.degree() < best)) {
                best = x.degree();
                bi = i;
            }
        }
        if (best < 0) continue;
        M.swap_rows(row, bi);
        const P piv = M(row, c);
        for (std::size_t i = 0; i < m; ++i) {
            if (i == row) continue;
            const P f = M(i, c);
            for (std::size_t j = 0; j < n; ++j) {
                P v = piv * M(i, j) - f * M(row, j);
                if (!prev.is_one()) {
                    auto qv = v.divide_exact(prev);
                    if (!qv) throw std::logic_error("fraction-free elimination: inexact division");
                    v = std::move(*qv);
                }
                M(i, j) = std::move(v);
            }
        }
        prev = piv;
        pivcol.push_back(c);
        ++row;
    }
    std::vector<bool> is_piv(n, false);
    for (auto c : pivcol) is_piv[c] = true;
    std::vector<std::vector<P>> out;
    for (std::size_t j = 0; j < n; ++j) {
        if (is_piv[j]) continue;
        std::vector<P> v(n, zero);
        v[j] = prev;
        for (std::size_t r = 0; r < pivcol.size(); ++r) v[pivcol[r]] = -M(r, j);
        P g = zero;
        for (const auto& x : v) g = gcd(g, x);
        for (auto& x : v) x = x / g;
        out.push_back(std::move(v));
    }
    return out;
}

template <class R>
std::string to_string(const Mat<R>& m, std::string_view var = "t") {
    std::string s = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        s += (i ? ", [" : "[");
        for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? ", " : "") + to_string(m(i, j), var);
        s += "]";
    }
    return s + "]";
}

}  // namespace motivix
