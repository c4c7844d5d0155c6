#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace mt;

namespace {

XPoly x2_minus(const FieldCtx& c, const TPoly& a) { return xmono(tp(c, {1}), 2) - xpoly_constant(a); }

Errc code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return Errc::NotFound;
}

}  // namespace

TEST(LocalFactor, ModOne) {
    EXPECT_EQ(mod_one(Rational(-1, 2)), Rational(1, 2));
    EXPECT_EQ(mod_one(Rational(7, 3)), Rational(1, 3));
    EXPECT_EQ(mod_one(Rational(-3)), Rational(0));
}

TEST(LocalFactor, NewtonPolygonAtInfinity) {
    const auto& c = FieldCtx::make_default(3, 1, 1);
    for (int d = 1; d <= 4; ++d) {
        const auto np = newton_polygon(x2_minus(c, t_pow(c, d)), Place::infinity());
        ASSERT_EQ(np.segments.size(), 1u);
        EXPECT_EQ(np.segments[0].slope, Rational(-d, 2));
        EXPECT_EQ(np.segments[0].length, 2);
    }
    // x^2 - (t + t^3) x + t^4 = (x - t)(x - t^3): two slopes.
    const XPoly f = xmono(tp(c, {1}), 2) - xmono(tp(c, {0, 1, 0, 1}), 1) + xpoly_constant(t_pow(c, 4));
    const auto np = newton_polygon(f, Place::infinity());
    ASSERT_EQ(np.segments.size(), 2u);
    EXPECT_EQ(np.segments[0].slope, Rational(-3));
    EXPECT_EQ(np.segments[1].slope, Rational(-1));
    const auto npt = newton_polygon(f, Place::finite(t_var(c)));
    ASSERT_EQ(npt.segments.size(), 2u);
    EXPECT_EQ(npt.segments[0].slope, Rational(1));
    EXPECT_EQ(npt.segments[1].slope, Rational(3));
}

TEST(LocalFactor, OreRefineRamifiedAndSplit) {
    const auto& c = FieldCtx::make_default(3, 1, 1);
    for (int d = 1; d <= 4; ++d) {
        const auto loc = ore_refine(x2_minus(c, t_pow(c, d)), Place::infinity());
        if (d % 2) {
            ASSERT_EQ(loc.size(), 1u);
            EXPECT_EQ(loc[0].e, 2u);
            EXPECT_EQ(loc[0].f, 1u);
            EXPECT_EQ(loc[0].v_pi, -d);
            EXPECT_FALSE(loc[0].root.has_value());
        } else {
            // y^2 - 1 splits: two unramified places with roots +- t^(d/2).
            ASSERT_EQ(loc.size(), 2u);
            std::vector<Gf> leads;
            for (const auto& l : loc) {
                EXPECT_EQ(l.e, 1u);
                EXPECT_EQ(l.f, 1u);
                EXPECT_EQ(l.v_pi, -d / 2);
                ASSERT_TRUE(l.root.has_value());
                EXPECT_EQ(l.root->valuation(), -d / 2);
                leads.push_back(l.root->coeff(-d / 2));
                for (int i = -d / 2 + 1; i < 5; ++i) EXPECT_TRUE(l.root->coeff(i).is_zero());
            }
            EXPECT_EQ(leads[0] + leads[1], c.zero());
        }
    }
    // x^2 + 1 at infinity: inert, f = 2.
    const auto inert = ore_refine(x2_minus(c, tp(c, {-1})), Place::infinity());
    ASSERT_EQ(inert.size(), 1u);
    EXPECT_EQ(inert[0].f, 2u);
    EXPECT_EQ(inert[0].e, 1u);
}

TEST(LocalFactor, NewtonRootSatisfiesPolynomial) {
    // x^2 - (1 + t) at the place t: roots +-(1 + t/2 - t^2/8 + ...).
    const auto& c = FieldCtx::make_default(5, 1, 1);
    const XPoly f = x2_minus(c, tp(c, {1, 1}));
    const auto loc = ore_refine(f, Place::finite(t_var(c)), 12);
    ASSERT_EQ(loc.size(), 2u);
    for (const auto& l : loc) {
        ASSERT_TRUE(l.root.has_value());
        const FqSeries x = *l.root;
        const FqSeries v = x * x - expand_at_point(tp(c, {1, 1}), c.zero());
        for (int i = 0; i < 12; ++i) EXPECT_TRUE(v.coeff(i).is_zero()) << i;
    }
}

TEST(LocalFactor, NotOreRegular) {
    // (x - t)^2 + 1 at infinity in characteristic 3: residual polynomial (y - 1)^2.
    const auto& c = FieldCtx::make_default(3, 1, 1);
    const XPoly lin = xmono(tp(c, {1}), 1) - xpoly_constant(t_var(c));
    const XPoly f = lin * lin + xpoly_constant(tp(c, {1}));
    EXPECT_EQ(code_of([&] { ore_refine(f, Place::infinity()); }), Errc::NotOreRegular);
}

TEST(LocalFactor, HenselLiftsMultiply) {
    Rng g(30);
    const auto& c = FieldCtx::make_default(3, 1, 1);
    const std::int64_t N = 6;
    int checked = 0;
    for (int k = 0; k < 40 && checked < 15; ++k) {
        XPoly f = xmono(tp(c, {1}), 3);
        for (std::size_t i = 0; i < 3; ++i) f = f + xmono(rand_poly(c, g, 2, true), i);
        for (const auto& v : {tp(c, {0, 1}), tp(c, {1, 0, 1})}) {
            const auto res = residue_field(v);
            if (!is_squarefree(f.map([&](const TPoly& a) { return res.zero.lift(a); }))) {
                EXPECT_EQ(code_of([&] { hensel_factor(f, Place::finite(v), N); }), Errc::NotSquarefreeReduction);
                continue;
            }
            const auto hs = hensel_factor(f, Place::finite(v), N);
            ASSERT_FALSE(hs.empty());
            Poly<ModElem> prod = Poly<ModElem>::constant(hs[0].poly.lc().one_like());
            for (const auto& h : hs) prod = prod * h.poly;
            const TPoly vN = pow(v, static_cast<std::uint64_t>(N));
            ASSERT_EQ(prod.degree(), 3);
            for (long i = 0; i <= 3; ++i) EXPECT_EQ(prod.coeff(i).value(), f.coeff(i) % vN);
            ++checked;
        }
    }
    EXPECT_GT(checked, 0);
}

TEST(LocalFactor, NotSquarefreeReduction) {
    // (x - 1)^2 - t at the place t.
    const auto& c = FieldCtx::make_default(3, 1, 1);
    const XPoly lin = xmono(tp(c, {1}), 1) - xpoly_constant(tp(c, {1}));
    const XPoly f = lin * lin - xpoly_constant(t_var(c));
    EXPECT_EQ(code_of([&] { hensel_factor(f, Place::finite(t_var(c))); }), Errc::NotSquarefreeReduction);
    EXPECT_THROW(hensel_factor(f, Place::infinity()), std::domain_error);
}
