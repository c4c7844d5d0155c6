#pragma once

// Polynomials in F_q[t][x] (outer variable x, coefficients in t): contents,
// primitive-PRS gcd, squarefree decomposition over F_q(t) in characteristic p,
// separability, and the r_K count of common factors.

#include <vector>

#include "motivix/factor.hpp"
#include "motivix/frac.hpp"

namespace motivix {

struct BivarFactor {
    XPoly poly;
    std::uint32_t mult = 1;
};

inline XPoly xpoly_constant(const TPoly& c) { return XPoly::constant(c); }
inline XPoly x_var(const FieldCtx& ctx) { return XPoly::var(TPoly(ctx.zero())); }

inline TPoly content(const XPoly& f) {
    if (f.is_zero()) return TPoly(f.zero_coeff().zero_coeff());
    TPoly g = f.zero_coeff();
    for (const auto& c : f.coeffs()) {
        g = gcd(g, c);
        if (g.degree() == 0) break;
    }
    return g;
}

/// Primitive part, scaled so the leading t-coefficient of the leading
/// x-coefficient is one.
inline XPoly primitive_part(const XPoly& f) {
    if (f.is_zero()) return f;
    const TPoly c = content(f);
    std::vector<TPoly> out;
    out.reserve(f.size());
    for (const auto& a : f.coeffs()) out.push_back(a / c);
    XPoly r(std::move(out), f.zero_coeff());
    const Gf li = r.lc().lc().inv();
    return r.map([&](const TPoly& a) { return a.scale(li); });
}

inline XPoly pseudo_remainder(const XPoly& a, const XPoly& b) {
    if (b.is_zero()) throw std::domain_error("pseudo-remainder by zero");
    XPoly r = a;
    const TPoly lb = b.lc();
    const long db = b.degree();
    while (!r.is_zero() && r.degree() >= db) {
        const TPoly lr = r.lc();
        const auto k = static_cast<std::size_t>(r.degree() - db);
        r = r.map([&](const TPoly& c) { return c * lb; }) - b.shift(k).map([&](const TPoly& c) { return c * lr; });
    }
    return r;
}

/// gcd in F_q[t][x], normalized as in primitive_part times the monic content gcd.
inline XPoly bivar_gcd(const XPoly& a, const XPoly& b) {
    if (a.is_zero()) return b.is_zero() ? b : primitive_part(b).map([&](const TPoly& c) { return c * content(b); });
    if (b.is_zero()) return primitive_part(a).map([&](const TPoly& c) { return c * content(a); });
    const TPoly cg = gcd(content(a), content(b));
    XPoly u = primitive_part(a), v = primitive_part(b);
    if (u.degree() < v.degree()) std::swap(u, v);
    while (!v.is_zero() && v.degree() > 0) {
        XPoly r = pseudo_remainder(u, v);
        u = std::move(v);
        v = r.is_zero() ? r : primitive_part(r);
    }
    XPoly g = v.is_zero() ? u : XPoly::constant(cg.one_like());
    if (g.degree() <= 0) return XPoly::constant(cg);
    return g.map([&](const TPoly& c) { return c * cg; });
}

/// Exact quotient a / b in F_q[t][x]; throws if b does not divide a.
inline XPoly bivar_div(const XPoly& a, const XPoly& b) {
    auto q = a.divide_exact(b);
    if (!q) throw std::domain_error("bivariate division is not exact");
    return *q;
}

inline XPoly d_dx(const XPoly& f) { return f.derivative(); }
inline XPoly d_dt(const XPoly& f) {
    return f.map([](const TPoly& c) { return c.derivative(); });
}

/// For f in F_q[t^p, x^p], the unique g with g^p = f.
inline XPoly bivar_pth_root(const XPoly& f) {
    const auto& ctx = f.zero_coeff().zero_coeff().ctx();
    const std::uint32_t p = ctx.p();
    const std::uint64_t root = ctx.q() / p;
    std::vector<TPoly> out;
    for (std::size_t i = 0; i < f.size(); i += p) {
        std::vector<Gf> c;
        const TPoly& a = f[i];
        for (std::size_t j = 0; j < a.size(); j += p) c.push_back(a[j].pow(root));
        out.emplace_back(std::move(c), ctx.zero());
    }
    return XPoly(std::move(out), f.zero_coeff());
}

namespace detail {

inline void bivar_sqf_rec(const XPoly& f, std::uint32_t scale, std::vector<BivarFactor>& out) {
    if (f.degree() <= 0) return;
    XPoly g = bivar_gcd(bivar_gcd(f, d_dx(f)), d_dt(f));
    if (g.degree() <= 0) {
        out.push_back({primitive_part(f), scale});
        return;
    }
    XPoly w = primitive_part(bivar_div(f, g));
    g = primitive_part(g);
    std::uint32_t i = 1;
    while (w.degree() > 0) {
        XPoly y = primitive_part(bivar_gcd(w, g));
        XPoly z = bivar_div(w, y);
        if (z.degree() > 0) out.push_back({primitive_part(z), i * scale});
        ++i;
        w = y;
        g = primitive_part(bivar_div(g, y));
    }
    if (g.degree() > 0) bivar_sqf_rec(primitive_part(bivar_pth_root(g)), scale * f.zero_coeff().zero_coeff().ctx().p(), out);
}

}  // namespace detail

/// Squarefree decomposition over F_q(t) of a nonzero f in F_q[t][x]; the
/// content is discarded. Factors are primitive and pairwise coprime.
inline std::vector<BivarFactor> squarefree_decomposition(const XPoly& f) {
    if (f.is_zero()) throw std::domain_error("squarefree decomposition of zero");
    std::vector<BivarFactor> raw;
    detail::bivar_sqf_rec(primitive_part(f), 1, raw);
    std::sort(raw.begin(), raw.end(), [](const BivarFactor& a, const BivarFactor& b) { return a.mult < b.mult; });
    std::vector<BivarFactor> out;
    for (auto& fac : raw) {
        if (!out.empty() && out.back().mult == fac.mult)
            out.back().poly = primitive_part(out.back().poly * fac.poly);
        else
            out.push_back(fac);
    }
    return out;
}

inline bool is_squarefree(const XPoly& f) {
    for (const auto& fac : squarefree_decomposition(f))
        if (fac.mult != 1) return false;
    return true;
}

/// Product of the squarefree parts, i.e. the radical over F_q(t).
inline XPoly squarefree_part(const XPoly& f) {
    XPoly r = XPoly::constant(f.zero_coeff().one_like());
    for (const auto& fac : squarefree_decomposition(f)) r = r * fac.poly;
    return primitive_part(r);
}

/// True iff f_x != 0 and gcd(f, f_x) is constant in x.
inline bool is_separable(const XPoly& f) {
    const XPoly df = d_dx(f);
    if (df.is_zero()) return false;
    return bivar_gcd(f, df).degree() == 0;
}

/// Primitive polynomial in F_q[t][x] proportional to f in F_q(t)[x].
inline XPoly clear_denominators(const QxPoly& f) {
    if (f.is_zero()) return XPoly(f.zero_coeff().num());
    TPoly l = f.zero_coeff().num().one_like();
    for (const auto& c : f.coeffs()) l = l / gcd(l, c.den()) * c.den();
    std::vector<TPoly> out;
    for (const auto& c : f.coeffs()) out.push_back(c.num() * (l / c.den()));
    return primitive_part(XPoly(std::move(out), f.zero_coeff().num()));
}

/// Sum over common irreducible factors of m * n * deg, given two
/// factorizations over the same field. Coprime inputs give 0.
template <class P>
std::uint64_t r_count(const std::vector<std::pair<P, std::uint32_t>>& f,
                      const std::vector<std::pair<P, std::uint32_t>>& g) {
    std::uint64_t r = 0;
    for (const auto& [a, m] : f)
        for (const auto& [b, n] : g)
            if (a == b) r += std::uint64_t{m} * n * static_cast<std::uint64_t>(a.degree());
    return r;
}

inline std::string to_string(const XPoly& f) { return to_string(f, "x"); }

}  // namespace motivix
