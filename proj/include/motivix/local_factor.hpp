#pragma once

// Local structure of a polynomial f in F_q[t][x] at a place of F_q(t):
// Newton polygons, Ore residual polynomials, and Hensel lifting at finite
// places.

#include <boost/rational.hpp>
#include <optional>
#include <string>
#include <vector>

#include "motivix/bivar.hpp"
#include "motivix/laurent.hpp"

namespace motivix {

using Rational = boost::rational<std::int64_t>;

inline std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// Representative of r mod 1 in [0, 1).
inline Rational mod_one(const Rational& r) {
    const std::int64_t n = r.numerator(), d = r.denominator();
    std::int64_t m = n % d;
    if (m < 0) m += d;
    return Rational(m, d);
}

/// A place of F_q(t): infinity (uniformizer 1/t) or a monic irreducible v.
struct Place {
    bool infinite = true;
    TPoly v;

    static Place infinity() { return {}; }
    static Place finite(TPoly v) { return {false, std::move(v)}; }

    /// [residue field : F_q]
    std::uint32_t degree() const { return infinite ? 1u : static_cast<std::uint32_t>(v.degree()); }
    std::string label() const { return infinite ? "inf" : to_string(v, "t"); }
    friend bool operator==(const Place& a, const Place& b) {
        return a.infinite == b.infinite && (a.infinite || a.v == b.v);
    }
};

inline std::int64_t valuation(const TPoly& a, const Place& P) {
    if (a.is_zero()) throw std::domain_error("valuation of zero");
    if (P.infinite) return -a.degree();
    return valuation(a, P.v);
}

/// Residue field of the place, as F_q[t]/(v) (t itself for infinity).
inline FiniteField<ModElem> place_residue_field(const Place& P, const FieldCtx& ctx) {
    return residue_field(P.infinite ? t_var(ctx) : P.v);
}

/// Residue class of a / w^k where k = v_P(a).
inline ModElem leading_residue(const TPoly& a, const Place& P, const FiniteField<ModElem>& res) {
    if (P.infinite) return res.zero.lift(TPoly::constant(a.lc()));
    TPoly b = a;
    while (true) {
        auto q = b.divide_exact(P.v);
        if (!q) break;
        b = std::move(*q);
    }
    return res.zero.lift(b);
}

struct NewtonSegment {
    Rational slope;  // common valuation of the roots on this segment
    std::int64_t length = 0;
    std::int64_t i0 = 0, i1 = 0;  // x-degree endpoints
    std::int64_t v0 = 0;          // valuation of the coefficient at i0
};

struct NewtonPolygon {
    std::vector<NewtonSegment> segments;  // by increasing slope
};

/// Lower convex hull of (i, v(a_i)); segment slopes are root valuations,
/// i.e. minus the geometric slope of the hull.
inline NewtonPolygon newton_polygon(const XPoly& f, const Place& P) {
    if (f.is_zero()) throw std::domain_error("Newton polygon of zero");
    struct Pt {
        std::int64_t i, v;
    };
    std::vector<Pt> pts;
    for (std::size_t i = 0; i < f.size(); ++i)
        if (!f[i].is_zero()) pts.push_back({static_cast<std::int64_t>(i), valuation(f[i], P)});
    std::vector<Pt> hull;
    for (const auto& p : pts) {
        while (hull.size() >= 2) {
            const Pt& a = hull[hull.size() - 2];
            const Pt& b = hull.back();
            // Drop b if it lies on or above the segment a-p.
            if ((b.v - a.v) * (p.i - a.i) >= (p.v - a.v) * (b.i - a.i))
                hull.pop_back();
            else
                break;
        }
        hull.push_back(p);
    }
    NewtonPolygon np;
    for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
        const Pt& a = hull[k];
        const Pt& b = hull[k + 1];
        np.segments.push_back({Rational(-(b.v - a.v), b.i - a.i), b.i - a.i, a.i, b.i, a.v});
    }
    std::sort(np.segments.begin(), np.segments.end(),
              [](const NewtonSegment& x, const NewtonSegment& y) { return x.slope < y.slope; });
    return np;
}

/// Ore residual polynomial of a segment, made monic, over the residue field.
inline Poly<ModElem> residual_polynomial(const XPoly& f, const Place& P, const NewtonSegment& s,
                                         const FiniteField<ModElem>& res) {
    const std::int64_t h = s.slope.numerator(), e = s.slope.denominator();
    std::vector<ModElem> c;
    for (std::int64_t k = 0; s.i0 + k * e <= s.i1; ++k) {
        const TPoly& a = f.coeff(static_cast<std::size_t>(s.i0 + k * e));
        if (!a.is_zero() && valuation(a, P) == s.v0 - k * h)
            c.push_back(leading_residue(a, P, res));
        else
            c.push_back(res.zero);
    }
    return monic(Poly<ModElem>(std::move(c), res.zero));
}

struct LocalPlaceData {
    Place base;
    std::uint32_t e = 1;  // ramification index over the base place
    std::uint32_t f = 1;  // residue degree over the residue field of the base place
    std::int64_t v_pi = 0;
    Rational slope;
    Poly<ModElem> residual_factor;
    /// A root of f in F_q((w)) when e = f = 1 and the base place has degree 1.
    std::optional<FqSeries> root;
};

inline std::int64_t default_precision(const XPoly& f) {
    long dt = 0;
    for (const auto& c : f.coeffs()) dt = std::max(dt, c.degree());
    const std::int64_t disc_bound = (2 * f.degree() - 1) * dt;
    return 4 * disc_bound + 16;
}

namespace detail {

inline FqSeries expand_at(const TPoly& a, const Place& P) {
    if (P.infinite) return expand_at_infinity(a);
    return expand_at_point(a, -P.v.coeff(0));
}

// Newton iteration for the root x = w^h * y of f with y = c + O(w). The
// current approximation is treated as exact when evaluating f and f'.
inline FqSeries newton_root(const XPoly& f, const Place& P, std::int64_t h, const Gf& c, std::int64_t N) {
    std::vector<FqSeries> a, da;
    for (const auto& coef : f.coeffs()) a.push_back(expand_at(coef, P));
    const XPoly df = f.derivative();
    for (const auto& coef : df.coeffs()) da.push_back(expand_at(coef, P));
    auto horner = [&](const std::vector<FqSeries>& cs, const FqSeries& x) {
        FqSeries acc(c.zero_like(), FqSeries::kExact);
        for (std::size_t i = cs.size(); i-- > 0;) acc = acc * x + cs[i];
        return acc;
    };
    FqSeries x({c}, h, h + 1, c);
    std::int64_t prec = 1;
    while (prec < N) {
        prec = std::min(2 * prec, N);
        const FqSeries xs(x.coeffs(), x.valuation(), FqSeries::kExact, c);
        const FqSeries fx = horner(a, xs);
        const FqSeries dfx = horner(da, xs);
        x = (xs - fx * dfx.inv(prec + 1)).truncate(h + prec);
    }
    return x;
}

}  // namespace detail

/// Places of Q[x]/(f) above P from one round of Ore refinement. f must be
/// monic in x and squarefree; a segment whose residual polynomial is not
/// squarefree raises NotOreRegular.
inline std::vector<LocalPlaceData> ore_refine(const XPoly& f, const Place& P, std::int64_t N = -1,
                                              std::uint64_t seed = kDefaultSeed) {
    if (f.is_zero() || f.degree() < 1) throw std::domain_error("ore_refine needs a nonconstant polynomial");
    if (!f.lc().is_one()) throw std::domain_error("ore_refine needs a monic polynomial");
    if (N < 0) N = default_precision(f);
    const auto& ctx = f.zero_coeff().zero_coeff().ctx();
    const auto res = place_residue_field(P, ctx);
    std::vector<LocalPlaceData> out;
    for (const auto& seg : newton_polygon(f, P).segments) {
        const Poly<ModElem> R = residual_polynomial(f, P, seg, res);
        if (!is_squarefree(R))
            throw Error(Errc::NotOreRegular, "residual polynomial at " + P.label() + " for slope " +
                                                 to_string(seg.slope) + " is not squarefree");
        for (const auto& fac : factor(R, res, seed)) {
            LocalPlaceData d;
            d.base = P;
            d.e = static_cast<std::uint32_t>(seg.slope.denominator());
            d.f = static_cast<std::uint32_t>(fac.poly.degree());
            d.v_pi = seg.slope.numerator();
            d.slope = seg.slope;
            d.residual_factor = fac.poly;
            if (d.e == 1 && d.f == 1 && P.degree() == 1) {
                const ModElem r = -fac.poly.coeff(0);
                d.root = detail::newton_root(f, P, d.v_pi, r.value().coeff(0), N);
            }
            out.push_back(std::move(d));
        }
    }
    return out;
}

// ---- Hensel lifting at finite places -------------------------------------

struct HenselFactor {
    Poly<ModElem> poly;         // monic, coefficients modulo v^N
    Poly<ModElem> reduction;    // modulo v
    bool irreducible = true;
};

namespace detail {

using AdicPoly = Poly<ModElem>;

inline AdicPoly reduce_to(const AdicPoly& a, const std::shared_ptr<const TPoly>& m) {
    return a.map([&](const ModElem& c) { return ModElem(c.value(), m); });
}

// One quadratic Hensel step (f = g h mod m, s g + t h = 1 mod m) to modulus m2.
inline void hensel_step(const AdicPoly& f, AdicPoly& g, AdicPoly& h, AdicPoly& s, AdicPoly& t,
                        const std::shared_ptr<const TPoly>& m2) {
    const AdicPoly F = reduce_to(f, m2);
    g = reduce_to(g, m2);
    h = reduce_to(h, m2);
    s = reduce_to(s, m2);
    t = reduce_to(t, m2);
    const AdicPoly e = F - g * h;
    auto [q, r] = (s * e).divmod(h);
    const AdicPoly g2 = g + t * e + q * g;
    const AdicPoly h2 = h + r;
    const AdicPoly b = s * g2 + t * h2 - g2.one_like();
    auto [c, d] = (s * b).divmod(h2);
    s = s - d;
    t = t - t * b - c * g2;
    g = g2;
    h = h2;
}

inline std::vector<AdicPoly> multifactor_lift(const AdicPoly& f, const std::vector<AdicPoly>& fs,
                                              const TPoly& v, std::int64_t N) {
    if (fs.size() == 1) {
        return {reduce_to(f, std::make_shared<const TPoly>(pow(v, static_cast<std::uint64_t>(N))))};
    }
    const std::size_t half = fs.size() / 2;
    AdicPoly g = fs[0].one_like(), h = fs[0].one_like();
    for (std::size_t i = 0; i < fs.size(); ++i) (i < half ? g : h) = (i < half ? g : h) * fs[i];
    auto x = xgcd(g, h);
    AdicPoly s = x.s, t = x.t;
    std::int64_t k = 1;
    while (k < N) {
        k = std::min(2 * k, N);
        hensel_step(f, g, h, s, t, std::make_shared<const TPoly>(pow(v, static_cast<std::uint64_t>(k))));
    }
    std::vector<AdicPoly> left(fs.begin(), fs.begin() + static_cast<long>(half));
    std::vector<AdicPoly> right(fs.begin() + static_cast<long>(half), fs.end());
    auto a = multifactor_lift(g, left, v, N);
    auto b = multifactor_lift(h, right, v, N);
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

}  // namespace detail

/// Factorization of a monic f over the completion at a finite place P, to
/// precision v^N, lifted from the factorization of its reduction.
inline std::vector<HenselFactor> hensel_factor(const XPoly& f, const Place& P, std::int64_t N = -1,
                                               std::uint64_t seed = kDefaultSeed) {
    if (P.infinite) throw std::domain_error("hensel_factor works at finite places");
    if (f.degree() < 1 || !f.lc().is_one()) throw std::domain_error("hensel_factor needs a monic polynomial");
    if (N < 0) N = default_precision(f);
    const auto res = residue_field(P.v);
    const auto modN = std::make_shared<const TPoly>(pow(P.v, static_cast<std::uint64_t>(N)));
    const Poly<ModElem> fbar = f.map([&](const TPoly& c) { return res.zero.lift(c); });
    if (!is_squarefree(fbar))
        throw Error(Errc::NotSquarefreeReduction, "reduction modulo " + P.label() + " is not squarefree");
    const auto facs = factor(fbar, res, seed);
    std::vector<detail::AdicPoly> seeds;
    for (const auto& fc : facs) seeds.push_back(fc.poly);
    const detail::AdicPoly F = f.map([&](const TPoly& c) { return ModElem(c, modN); });
    const auto lifted = detail::multifactor_lift(F, seeds, P.v, N);
    std::vector<HenselFactor> out;
    for (std::size_t i = 0; i < lifted.size(); ++i) out.push_back({lifted[i], facs[i].poly, true});
    return out;
}

}  // namespace motivix
