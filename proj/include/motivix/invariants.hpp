#pragma once

// Isogeny invariants of a motive: semisimplicity, zeta function, the
// Riemann-hypothesis slopes, Hom dimensions from local factorizations, the
// endomorphism algebra report with Hasse invariants, and a search for
// explicit quasi-isogenies.

#include <random>
#include <set>
#include <string>

#include "motivix/motive.hpp"

namespace motivix {

// ---- semisimplicity ----------------------------------------------------------

inline bool is_semisimple(const Motive& M) { return is_squarefree(min_poly(M)); }

inline bool is_absolutely_semisimple(const Motive& M) { return is_separable(min_poly(M)); }

/// Smallest power t of p such that the base change to F_{q^{e t}} has
/// separable Frobenius minimal polynomial. Powers up to the first p^k >= r
/// are tried.
inline std::uint32_t semisimplifying_extension_degree(const Motive& M) {
    const std::uint32_t p = M.ctx().p();
    std::uint32_t bound = 1;
    while (bound < M.r) bound *= p;
    for (std::uint32_t t = 1; t <= bound; t *= p)
        if (is_absolutely_semisimple(base_change(M, M.e() * t))) return t;
    throw std::logic_error("no p-power extension up to " + std::to_string(bound) + " makes Frobenius separable");
}

// ---- zeta function -----------------------------------------------------------

/// Z(u) = prod_i det(1 - u wedge^i Pi)^((-1)^(i+1)) as a reduced fraction of
/// polynomials in u over F_q[t] (stored as XPoly, the outer variable being u).
struct ZetaFunction {
    std::vector<XPoly> factors;  // det(1 - u wedge^i Pi), i = 0..r
    XPoly numerator, denominator;
    std::vector<TPoly> a;        // a_1, a_2, ...: u Z'/Z = sum a_n u^n
};

namespace detail {

using Series = std::vector<TPoly>;  // truncated power series in u

inline Series to_series(const XPoly& f, std::size_t n) {
    Series s(n, f.zero_coeff());
    for (std::size_t i = 0; i < n && i < f.size(); ++i) s[i] = f[i];
    return s;
}

inline Series series_mul(const Series& a, const Series& b) {
    Series r(a.size(), a[0].zero_like());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; i + j < a.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    return r;
}

// Inverse of a series with constant term 1.
inline Series series_inv(const Series& a) {
    Series r(a.size(), a[0].zero_like());
    r[0] = a[0].one_like();
    for (std::size_t k = 1; k < a.size(); ++k) {
        TPoly s = a[0].zero_like();
        for (std::size_t j = 1; j <= k; ++j) s = s - a[j] * r[k - j];
        r[k] = s;
    }
    return r;
}

// u f'(u) / f(u) to n terms.
inline Series log_derivative(const XPoly& f, std::size_t n) {
    Series df = to_series(f.derivative().shift(1), n);
    return series_mul(df, series_inv(to_series(f, n)));
}

}  // namespace detail

/// det(1 - u A) from the characteristic polynomial of A.
inline XPoly reversed_charpoly(const TMat& A) {
    const XPoly cp = charpoly(A);
    std::vector<TPoly> c(cp.coeffs().rbegin(), cp.coeffs().rend());
    return XPoly(std::move(c), cp.zero_coeff());
}

inline ZetaFunction zeta(const Motive& M, std::size_t k = 5) {
    ZetaFunction Z;
    const XPoly one = xpoly_constant(TPoly::constant(M.ctx().one()));
    XPoly num = one, den = one;
    for (std::size_t i = 0; i <= M.r; ++i) {
        XPoly P = reversed_charpoly(exterior_power(M.Pi, i));
        if (!has_base_coeffs(P))
            throw Error(Errc::SigmaInvarianceViolated, "det(1 - u wedge^" + std::to_string(i) + " Pi) is not over F_q[t]");
        (i % 2 ? num : den) = (i % 2 ? num : den) * P;
        Z.factors.push_back(std::move(P));
    }
    XPoly g = bivar_gcd(num, den);
    if (g.degree() > 0) {
        const Gf c = g[0].lc();
        g = g.map([&](const TPoly& a) { return a.scale(c.inv()); });
        num = bivar_div(num, g);
        den = bivar_div(den, g);
    }
    Z.numerator = num;
    Z.denominator = den;
    const auto ln = detail::log_derivative(num, k + 1);
    const auto ld = detail::log_derivative(den, k + 1);
    const TMat I = TMat::identity(M.r, TPoly(M.ctx().zero()));
    TMat Pn = I;
    for (std::size_t n = 1; n <= k; ++n) {
        Pn = Pn * M.Pi;
        const TPoly an = ln[n] - ld[n];
        if (an != det(I - Pn)) throw std::logic_error("zeta coefficient a_" + std::to_string(n) + " != det(1 - Pi^n)");
        Z.a.push_back(an);
    }
    return Z;
}

/// Z(u) written as (num)/(den) with u as the variable.
inline std::string to_string(const ZetaFunction& Z) {
    return "(" + to_string(Z.numerator, "u") + ")/(" + to_string(Z.denominator, "u") + ")";
}

// ---- Riemann hypothesis ------------------------------------------------------

struct RhEntry {
    std::size_t i = 0;
    std::vector<Rational> slopes;  // root valuations at infinity
    Rational expected;
    bool pass = false;
};

struct RhReport {
    std::vector<RhEntry> entries;
    bool pass = true;
};

/// For each i, the Newton polygon at infinity of det(x - wedge^i Pi) must be
/// the single slope -e i d / r.
inline RhReport rh_check(const Motive& M) {
    RhReport R;
    for (std::size_t i = 0; i <= M.r; ++i) {
        RhEntry e;
        e.i = i;
        e.expected = Rational(-static_cast<std::int64_t>(M.e() * i * M.d), static_cast<std::int64_t>(M.r));
        const auto np = newton_polygon(charpoly(exterior_power(M.Pi, i)), Place::infinity());
        for (const auto& s : np.segments) e.slopes.push_back(s.slope);
        e.pass = e.slopes.size() == 1 && e.slopes[0] == e.expected;
        R.pass = R.pass && e.pass;
        R.entries.push_back(std::move(e));
    }
    return R;
}

// ---- local r-count (Hom dimension from factorizations) ----------------------

struct LocalRCount {
    Place aux;
    std::uint64_t r = 0;
};

namespace detail {

inline Poly<ModElem> reduce_mod(const XPoly& f, const FiniteField<ModElem>& res) {
    return f.map([&](const TPoly& c) { return res.zero.lift(c); });
}

// Local irreducible factors of chi over the completion at a finite place,
// as (reduction, multiplicity).
inline std::vector<std::pair<Poly<ModElem>, std::uint32_t>> local_factors(const XPoly& chi, const Place& v,
                                                                          std::uint64_t seed) {
    std::vector<std::pair<Poly<ModElem>, std::uint32_t>> out;
    for (const auto& sq : squarefree_decomposition(chi))
        for (const auto& h : hensel_factor(sq.poly, v, 4, seed)) out.emplace_back(h.reduction, sq.mult);
    return out;
}

}  // namespace detail

/// The first monic irreducible v != eps of degree <= max_degree at which the
/// radical of chi chi' has squarefree reduction.
inline std::optional<Place> auxiliary_place(const Motive& M, const Motive& Mp, std::uint32_t max_degree = 3) {
    const XPoly s = squarefree_part(M.chi * Mp.chi);
    for (std::uint32_t deg = 1; deg <= max_degree; ++deg)
        for (const auto& v : monic_irreducibles_Fq(M.ctx(), deg)) {
            if (v == M.eps) continue;
            if (is_squarefree(detail::reduce_mod(s, residue_field(v)))) return Place::finite(v);
        }
    return std::nullopt;
}

/// r_{Q_v}(chi, chi') at an auxiliary place: the sum of m m' deg over common
/// local irreducible factors.
inline std::optional<LocalRCount> local_r_count(const Motive& M, const Motive& Mp, std::uint64_t seed = kDefaultSeed) {
    require_compatible(M, Mp);
    const auto v = auxiliary_place(M, Mp);
    if (!v) return std::nullopt;
    return LocalRCount{*v, r_count(detail::local_factors(M.chi, *v, seed), detail::local_factors(Mp.chi, *v, seed))};
}

// ---- irreducibility of mu ----------------------------------------------------

struct IrreducibilityResult {
    std::optional<bool> irreducible;  // nullopt: no certificate either way
    std::string certificate;
};

namespace detail {

inline std::set<std::size_t> subset_sums(const std::vector<std::size_t>& degs) {
    std::set<std::size_t> s{0};
    for (auto d : degs) {
        std::set<std::size_t> n = s;
        for (auto x : s) n.insert(x + d);
        s = std::move(n);
    }
    return s;
}

// Roots of a monic f in F_q[t]: they divide f(0).
inline std::optional<TPoly> root_in_A(const XPoly& f, const FieldCtx& ctx) {
    const TPoly a0 = f.coeff(0);
    if (a0.is_zero()) return TPoly(ctx.zero());
    const auto fs = factor(a0, field_Fq(ctx));
    std::vector<TPoly> divisors{TPoly::constant(ctx.one())};
    for (const auto& fc : fs) {
        std::vector<TPoly> next;
        for (const auto& dv : divisors) {
            TPoly cur = dv;
            for (std::uint32_t k = 0; k <= fc.mult; ++k) {
                next.push_back(cur);
                cur = cur * fc.poly;
            }
        }
        divisors = std::move(next);
    }
    for (const auto& dv : divisors)
        for (const auto& u : ctx.base_field()) {
            if (u.is_zero()) continue;
            const TPoly cand = dv.scale(u);
            if (f.eval(cand).is_zero()) return cand;
        }
    return std::nullopt;
}

}  // namespace detail

/// Certifies irreducibility of a monic squarefree mu over F_q(t) when the
/// local degree patterns at the given places admit no proper factor degree,
/// or, for degree <= 3, when mu has no root in F_q[t]. A root certifies
/// reducibility.
inline IrreducibilityResult certify_irreducible(const XPoly& mu, const FieldCtx& ctx,
                                                const std::vector<std::pair<Place, std::vector<std::size_t>>>& local) {
    const auto n = static_cast<std::size_t>(mu.degree());
    if (n == 1) return {true, "degree 1"};
    if (const auto root = detail::root_in_A(mu, ctx)) return {false, "root " + to_string(*root) + " in F_q[t]"};
    if (n <= 3) return {true, "degree <= 3 without roots in F_q[t]"};
    std::set<std::size_t> possible;
    for (std::size_t k = 1; k < n; ++k) possible.insert(k);
    std::string used;
    for (const auto& [P, degs] : local) {
        const auto sums = detail::subset_sums(degs);
        std::set<std::size_t> keep;
        for (auto k : possible)
            if (sums.count(k)) keep.insert(k);
        possible = std::move(keep);
        used += (used.empty() ? "" : ", ") + P.label();
        if (possible.empty()) return {true, "local degree patterns at " + used};
    }
    return {std::nullopt, "inconclusive"};
}

// ---- endomorphism algebra ----------------------------------------------------

struct HasseEntry {
    LocalPlaceData local;
    Rational invariant;  // in [0, 1)
};

struct EndAlgebraReport {
    std::size_t r = 0;
    std::size_t dim_E = 0;  // dim_Q End(M) tensor Q
    std::size_t dim_F = 0;  // deg mu = [Q(pi) : Q]
    bool semisimple = false;
    bool absolutely_semisimple = false;
    bool center_is_Q = false;
    XPoly mu;
    std::vector<TMat> basis;
    IrreducibilityResult mu_irreducible;
    std::optional<std::uint64_t> h;  // r^2 / dim_E when F is a field
    bool dimensions_consistent = true;
    std::vector<HasseEntry> hasse;
    Rational invariant_sum;
    std::optional<LocalRCount> tate;
};

/// inv_v = -(f_v deg(base place) / e) v(pi) mod 1.
inline Rational hasse_invariant(const LocalPlaceData& d, std::uint32_t e) {
    return mod_one(Rational(-static_cast<std::int64_t>(d.f * d.base.degree()) * d.v_pi, e));
}

inline EndAlgebraReport end_algebra_report(const Motive& M, std::int64_t N = -1, std::uint64_t seed = kDefaultSeed) {
    EndAlgebraReport R;
    R.r = M.r;
    R.mu = min_poly(M);
    R.semisimple = is_squarefree(R.mu);
    if (!R.semisimple) throw Error(Errc::NotSemisimple, "Frobenius minimal polynomial is not squarefree");
    R.absolutely_semisimple = is_separable(R.mu);
    R.dim_F = static_cast<std::size_t>(R.mu.degree());
    R.center_is_Q = R.dim_F == 1;
    const auto hom = hom_space(M, M);
    R.basis = hom.basis;
    R.dim_E = hom.dim();

    std::vector<std::pair<Place, std::vector<std::size_t>>> patterns;
    for (const Place& P : {Place::infinity(), Place::finite(M.eps)}) {
        std::vector<std::size_t> degs;
        for (auto& d : ore_refine(R.mu, P, N, seed)) {
            degs.push_back(d.e * d.f);
            const Rational inv = hasse_invariant(d, M.e());
            R.invariant_sum = mod_one(R.invariant_sum + inv);
            R.hasse.push_back({std::move(d), inv});
        }
        patterns.emplace_back(P, std::move(degs));
    }
    for (std::uint32_t deg = 1; deg <= 2; ++deg)
        for (const auto& v : monic_irreducibles_Fq(M.ctx(), deg)) {
            if (v == M.eps) continue;
            const auto res = residue_field(v);
            const auto red = detail::reduce_mod(R.mu, res);
            if (!is_squarefree(red)) continue;
            std::vector<std::size_t> degs;
            for (const auto& fc : factor(red, res, seed)) degs.push_back(static_cast<std::size_t>(fc.poly.degree()));
            patterns.emplace_back(Place::finite(v), std::move(degs));
        }
    R.mu_irreducible = certify_irreducible(R.mu, M.ctx(), patterns);
    if (R.mu_irreducible.irreducible.value_or(false)) {
        const std::uint64_t r2 = M.r * M.r;
        R.dimensions_consistent = R.dim_E * R.dim_F == r2 && r2 % R.dim_E == 0 && M.r % (r2 / R.dim_E) == 0;
        if (R.dimensions_consistent) R.h = r2 / R.dim_E;
    }
    R.tate = local_r_count(M, M, seed);
    return R;
}

// ---- isogeny classes ---------------------------------------------------------

struct IsogenyTestResult {
    bool chi_equal = false;
    bool zeta_equal = false;
    bool isogenous = false;
    bool semisimple_warning = false;  // the answer is only a necessary condition
};

inline IsogenyTestResult isogeny_test(const Motive& M, const Motive& Mp) {
    require_compatible(M, Mp);
    IsogenyTestResult out;
    out.chi_equal = M.chi == Mp.chi;
    const auto Z = zeta(M), Zp = zeta(Mp);
    out.zeta_equal = Z.numerator == Zp.numerator && Z.denominator == Zp.denominator;
    out.isogenous = out.chi_equal;
    out.semisimple_warning = !is_semisimple(M) || !is_semisimple(Mp);
    return out;
}

/// Looks for an isogeny among F_q[t]-combinations of the Hom basis: the
/// identity when M = M', then basis elements, then all F_q-combinations when
/// there are at most 4096 of them, then seeded random combinations with
/// coefficients of degree <= 1.
inline Morphism find_quasi_isogeny(const Motive& M, const Motive& Mp, std::size_t trials = 200,
                                   std::uint64_t seed = kDefaultSeed) {
    require_compatible(M, Mp);
    if (M == Mp) return identity_morphism(M);
    const auto hom = hom_space(M, Mp);
    if (hom.dim() == 0) throw std::invalid_argument("Hom(M, M') is zero");
    if (M.r != Mp.r) throw Error(Errc::NotFound, "ranks differ");
    auto try_matrix = [&](const TMat& F) -> std::optional<Morphism> {
        if (F.is_zero() || det(F).is_zero()) return std::nullopt;
        return make_morphism(F, M, Mp);
    };
    for (const auto& B : hom.basis)
        if (auto f = try_matrix(B)) return *f;
    const auto& els = M.ctx().base_field();
    const std::size_t n = hom.dim();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n && total <= 4096; ++i) total *= els.size();
    if (total <= 4096) {
        for (std::uint64_t code = 1; code < total; ++code) {
            TMat F(Mp.r, M.r, TPoly(M.ctx().zero()));
            std::uint64_t c = code;
            for (std::size_t i = 0; i < n; ++i) {
                F = F + hom.basis[i].scale(TPoly::constant(els[c % els.size()]));
                c /= els.size();
            }
            if (auto f = try_matrix(F)) return *f;
        }
    }
    std::mt19937_64 rng(seed);
    for (std::size_t k = 0; k < trials; ++k) {
        TMat F(Mp.r, M.r, TPoly(M.ctx().zero()));
        for (std::size_t i = 0; i < n; ++i) {
            const TPoly c(std::vector<Gf>{els[rng() % els.size()], els[rng() % els.size()]}, M.ctx().zero());
            F = F + hom.basis[i].scale(c);
        }
        if (auto f = try_matrix(F)) return *f;
    }
    throw Error(Errc::NotFound, "no isogeny found in " + std::to_string(trials) + " random trials");
}

}  // namespace motivix
