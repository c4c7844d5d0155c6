#pragma once

// Factorization of univariate polynomials over a finite field:
// squarefree decomposition, distinct-degree splitting, then Cantor-Zassenhaus
// equal-degree splitting driven by a seeded generator.

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "motivix/residue.hpp"

namespace motivix {

inline constexpr std::uint64_t kDefaultSeed = 0xA5DE12;

template <class K>
struct Factor {
    Poly<K> poly;
    std::uint32_t mult = 1;
};

template <class K>
K power(const K& a, std::uint64_t k) {
    K r = a.one_like(), b = a;
    while (k) {
        if (k & 1) r = r * b;
        k >>= 1;
        if (k) b = b * b;
    }
    return r;
}

/// Order used to make factor lists deterministic: degree, then coefficients
/// from the top.
template <class K>
bool poly_less(const Poly<K>& a, const Poly<K>& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] < b[i]) return true;
        if (b[i] < a[i]) return false;
    }
    return false;
}

namespace detail {

// f(x) with f' = 0 is g(x^p); returns g with p-th roots of the coefficients.
template <class K>
Poly<K> pth_root_poly(const Poly<K>& f, const FiniteField<K>& F) {
    const std::uint32_t p = F.characteristic;
    const std::uint64_t e = F.order / p;
    std::vector<K> c;
    for (std::size_t i = 0; i < f.size(); i += p) c.push_back(power(f[i], e));
    return Poly<K>(std::move(c), F.zero);
}

template <class K>
void squarefree_rec(const Poly<K>& f, const FiniteField<K>& F, std::uint32_t scale,
                    std::vector<Factor<K>>& out) {
    if (f.degree() <= 0) return;
    const Poly<K> df = f.derivative();
    if (df.is_zero()) {
        squarefree_rec(pth_root_poly(f, F), F, scale * F.characteristic, out);
        return;
    }
    Poly<K> c = gcd(f, df);
    Poly<K> w = f / c;
    std::uint32_t i = 1;
    while (w.degree() > 0) {
        Poly<K> y = gcd(w, c);
        Poly<K> z = w / y;
        if (z.degree() > 0) out.push_back({monic(z), i * scale});
        ++i;
        w = y;
        c = c / y;
    }
    if (c.degree() > 0) squarefree_rec(pth_root_poly(c, F), F, scale * F.characteristic, out);
}

// Frobenius x -> x^Q on F[x]/(f).
template <class K>
Poly<K> frob_mod(const Poly<K>& a, const Poly<K>& f, std::uint64_t Q) {
    return powmod(a, Q, f);
}

template <class K>
void equal_degree_split(const Poly<K>& f, std::size_t d, const FiniteField<K>& F,
                        std::mt19937_64& rng, std::vector<Poly<K>>& out) {
    if (static_cast<std::size_t>(f.degree()) == d) {
        out.push_back(monic(f));
        return;
    }
    const std::uint64_t Q = F.order;
    const auto n = static_cast<std::size_t>(f.degree());
    while (true) {
        std::vector<K> c(n, F.zero);
        for (auto& x : c) x = F.random(rng);
        Poly<K> a(std::move(c), F.zero);
        if (a.degree() <= 0) continue;
        Poly<K> g = gcd(a, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree_split(g, d, F, rng, out);
            equal_degree_split(f / g, d, F, rng, out);
            return;
        }
        Poly<K> b;
        if (F.characteristic == 2) {
            // Absolute trace to F_2 of a in F_{Q^d}.
            std::uint64_t k = 0;
            for (std::uint64_t s = Q; s > 1; s >>= 1) ++k;
            Poly<K> cur = a % f, acc = a % f;
            for (std::uint64_t i = 1; i < k * d; ++i) {
                cur = mulmod(cur, cur, f);
                acc = acc + cur;
            }
            b = acc;
        } else {
            // a^((Q^d - 1)/2) = (a * a^Q * ... * a^(Q^(d-1)))^((Q-1)/2)
            Poly<K> cur = a % f, norm = a % f;
            for (std::size_t i = 1; i < d; ++i) {
                cur = frob_mod(cur, f, Q);
                norm = mulmod(norm, cur, f);
            }
            b = powmod(norm, (Q - 1) / 2, f) - f.one_like();
        }
        g = gcd(b, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree_split(g, d, F, rng, out);
            equal_degree_split(f / g, d, F, rng, out);
            return;
        }
    }
}

// f monic squarefree; returns (product of irreducibles of degree d, d).
template <class K>
std::vector<std::pair<Poly<K>, std::size_t>> distinct_degree(Poly<K> f, const FiniteField<K>& F) {
    std::vector<std::pair<Poly<K>, std::size_t>> out;
    const Poly<K> x = Poly<K>::var(F.zero);
    Poly<K> h = x % f;
    std::size_t d = 0;
    while (f.degree() >= 2 * static_cast<long>(d + 1)) {
        ++d;
        h = frob_mod(h, f, F.order);
        Poly<K> g = gcd(h - x, f);
        if (g.degree() > 0) {
            out.emplace_back(g, d);
            f = f / g;
            h = h % f;
        }
    }
    if (f.degree() > 0) out.emplace_back(f, static_cast<std::size_t>(f.degree()));
    return out;
}

}  // namespace detail

/// Squarefree decomposition of a nonzero polynomial over a finite field:
/// monic pairwise coprime squarefree factors with multiplicities.
template <class K>
std::vector<Factor<K>> squarefree_factorization(const Poly<K>& f, const FiniteField<K>& F) {
    std::vector<Factor<K>> out;
    if (f.is_zero()) throw std::domain_error("squarefree decomposition of zero");
    detail::squarefree_rec(monic(f), F, 1, out);
    // Parts from different recursion levels may share a multiplicity.
    std::sort(out.begin(), out.end(), [](const Factor<K>& a, const Factor<K>& b) { return a.mult < b.mult; });
    std::vector<Factor<K>> merged;
    for (auto& fac : out) {
        if (!merged.empty() && merged.back().mult == fac.mult)
            merged.back().poly = merged.back().poly * fac.poly;
        else
            merged.push_back(fac);
    }
    return merged;
}

/// Complete factorization into monic irreducibles, sorted by degree then
/// coefficients. The leading coefficient of f is dropped.
template <class K>
std::vector<Factor<K>> factor(const Poly<K>& f, const FiniteField<K>& F, std::uint64_t seed = kDefaultSeed) {
    std::mt19937_64 rng(seed);
    std::vector<Factor<K>> out;
    for (const auto& sq : squarefree_factorization(f, F)) {
        for (const auto& [g, d] : detail::distinct_degree(sq.poly, F)) {
            std::vector<Poly<K>> parts;
            detail::equal_degree_split(g, d, F, rng, parts);
            for (auto& p : parts) out.push_back({std::move(p), sq.mult});
        }
    }
    std::sort(out.begin(), out.end(),
              [](const Factor<K>& a, const Factor<K>& b) { return poly_less(a.poly, b.poly); });
    return out;
}

template <class K>
bool is_irreducible(const Poly<K>& f, const FiniteField<K>& F) {
    if (f.degree() <= 0) return false;
    auto fs = factor(f, F);
    return fs.size() == 1 && fs[0].mult == 1;
}

template <class K>
bool is_squarefree(const Poly<K>& f) {
    if (f.degree() <= 0) return true;
    return gcd(f, f.derivative()).degree() == 0;
}

/// Monic irreducibles of F_q[t] of the given degree, in the order of poly_less.
inline std::vector<TPoly> monic_irreducibles_Fq(const FieldCtx& ctx, std::size_t degree) {
    const auto Fq = field_Fq(ctx);
    const auto& els = ctx.base_field();
    std::vector<TPoly> out;
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < degree; ++i) count *= els.size();
    for (std::uint64_t code = 0; code < count; ++code) {
        std::vector<Gf> c(degree + 1, ctx.zero());
        c[degree] = ctx.one();
        std::uint64_t k = code;
        for (std::size_t i = 0; i < degree; ++i) {
            c[i] = els[k % els.size()];
            k /= els.size();
        }
        TPoly v(std::move(c), ctx.zero());
        if (is_irreducible(v, Fq)) out.push_back(std::move(v));
    }
    std::sort(out.begin(), out.end(), [](const TPoly& a, const TPoly& b) { return poly_less(a, b); });
    return out;
}

}  // namespace motivix
