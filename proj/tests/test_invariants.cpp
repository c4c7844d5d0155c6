#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace mt;

namespace {

Errc code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return Errc::NotFound;
}

XPoly xp(const FieldCtx& c, std::vector<TPoly> cs) { return XPoly(std::move(cs), zero_t(c)); }

// Conjugate T by a constant permutation: the result is isomorphic to M.
Motive permuted(const Motive& M, const std::vector<std::size_t>& perm) {
    const auto& c = M.ctx();
    TMat P(M.r, M.r, zero_t(c));
    for (std::size_t i = 0; i < M.r; ++i) P(i, perm[i]) = tp(c, {1});
    // P T sigma(P)^{-1} with P a permutation: sigma(P) = P and P^{-1} = P^T.
    return make_motive(c, M.theta, P * M.T * P.transpose());
}

}  // namespace

TEST(Invariants, SemisimplicityOfAntiDiagonalFamily) {
    for (std::uint32_t e : {1u, 2u}) {
        const auto& c = FieldCtx::make_default(3, 1, e);
        for (int d = 1; d <= 3; ++d) {
            EXPECT_TRUE(is_semisimple(antidiag(c, d)));
            EXPECT_TRUE(is_absolutely_semisimple(antidiag(c, d)));
            EXPECT_EQ(semisimplifying_extension_degree(antidiag(c, d)), 1u);
        }
    }
    const auto& c2 = FieldCtx::make_default(2, 1, 1);
    for (int d = 1; d <= 3; ++d) {
        const Motive M = antidiag(c2, d);
        EXPECT_EQ(is_semisimple(M), d % 2 == 1);
        EXPECT_FALSE(is_absolutely_semisimple(M));
        EXPECT_EQ(semisimplifying_extension_degree(M), 2u);
    }
    // The unipotent example is not semisimple over F_3 but becomes so over F_27.
    const auto& c3 = FieldCtx::make_default(3, 1, 1);
    EXPECT_FALSE(is_semisimple(unipotent(c3)));
    EXPECT_EQ(semisimplifying_extension_degree(unipotent(c3)), 3u);
}

TEST(Invariants, ZetaOfAntiDiagonalMotive) {
    const auto& c = FieldCtx::make_default(3, 1, 1);
    const Motive M = antidiag(c, 1);
    const ZetaFunction Z = zeta(M);
    const TPoly one = tp(c, {1}), z = zero_t(c);
    EXPECT_EQ(Z.numerator, xp(c, {one, z, -t_var(c)}));
    EXPECT_EQ(Z.denominator, xp(c, {one, tp(c, {-1, 1}), -t_var(c)}));
    ASSERT_GE(Z.a.size(), 1u);
    EXPECT_EQ(Z.a[0], tp(c, {1, -1}));
}

TEST(Invariants, ZetaAgainstTraceOracle) {
    Rng g(50);
    for (auto [p, n, e] : std::vector<std::tuple<int, int, int>>{{2, 1, 1}, {3, 1, 1}, {2, 1, 2}, {3, 1, 2}, {2, 2, 1}}) {
        const auto& c = FieldCtx::make_default(p, n, e);
        for (std::size_t r = 1; r <= 3; ++r) {
            const Motive M = rand_drinfeld(c, g, r);
            const ZetaFunction Z = zeta(M, 4);
            ASSERT_EQ(Z.factors.size(), r + 1);
            // num * prod(even factors) == den * prod(odd factors)
            XPoly odd = xp(c, {tp(c, {1})}), even = odd;
            for (std::size_t i = 0; i <= r; ++i) {
                EXPECT_EQ(Z.factors[i], reversed_charpoly(exterior_power(M.Pi, i)));
                (i % 2 ? odd : even) = (i % 2 ? odd : even) * Z.factors[i];
            }
            EXPECT_EQ(Z.numerator * even, Z.denominator * odd);
            EXPECT_EQ(Z.numerator.coeff(0), tp(c, {1}));
            EXPECT_EQ(Z.denominator.coeff(0), tp(c, {1}));
            EXPECT_EQ(bivar_gcd(Z.numerator, Z.denominator).degree(), 0);
            // a_n = det(I - Pi^n).
            ASSERT_EQ(Z.a.size(), 4u);
            for (std::size_t k = 1; k <= 4; ++k)
                EXPECT_EQ(Z.a[k - 1], det(TMat::identity(r, zero_t(c)) - mat_pow(M.Pi, k)));
        }
    }
}

TEST(Invariants, RiemannHypothesisSlopes) {
    Rng g(51);
    for (auto [p, e] : std::vector<std::pair<int, int>>{{2, 1}, {3, 2}, {2, 3}}) {
        const auto& c = FieldCtx::make_default(p, 1, e);
        for (std::size_t r = 1; r <= 3; ++r) {
            const Motive M = rand_drinfeld(c, g, r);
            const RhReport R = rh_check(M);
            EXPECT_TRUE(R.pass);
            ASSERT_EQ(R.entries.size(), r + 1);
            for (const auto& en : R.entries)
                EXPECT_EQ(en.expected, Rational(-static_cast<std::int64_t>(e * en.i * M.d), static_cast<std::int64_t>(r)));
        }
    }
}

TEST(Invariants, IsogenyTestDetectsPermutedBases) {
    Rng g(52);
    for (auto [p, e] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}}) {
        const auto& c = FieldCtx::make_default(p, 1, e);
        for (int k = 0; k < 4; ++k) {
            const Motive M = rand_drinfeld(c, g, 3);
            const Motive Mp = permuted(M, {2, 0, 1});
            const auto res = isogeny_test(M, Mp);
            EXPECT_TRUE(res.chi_equal);
            EXPECT_TRUE(res.zeta_equal);
            EXPECT_TRUE(res.isogenous);
            const Morphism f = find_quasi_isogeny(M, Mp);
            EXPECT_TRUE(f.is_isogeny());
        }
    }
}

TEST(Invariants, BlockSumAndRankOneBlocks) {
    // x^2 - t^2 = (x - t)(x + t): the d = 2 motive is isogenous to diag(-t, t).
    const auto& c = FieldCtx::make_default(3, 1, 1);
    const TPoly z = zero_t(c);
    const Motive S = make_motive(c, c.zero(), TMat::from_rows({{tp(c, {0, -1}), z}, {z, tp(c, {0, 1})}}, z));
    const Motive M = antidiag(c, 2);
    EXPECT_TRUE(isogeny_test(M, S).isogenous);
    EXPECT_TRUE(find_quasi_isogeny(M, S).is_isogeny());
    // The blocks (-t) and (t) are isogenous over F_9 but not over F_3.
    const Motive minus = rank1(c, tp(c, {0, -1}), c.zero()), plus = rank1(c, tp(c, {0, 1}), c.zero());
    EXPECT_FALSE(isogeny_test(minus, plus).isogenous);
    EXPECT_EQ(hom_dimension(minus, plus), 0u);
    EXPECT_THROW(find_quasi_isogeny(minus, plus), std::invalid_argument);
    const auto& c9 = FieldCtx::make_default(3, 1, 2);
    const Motive minus9 = base_change(minus, 2), plus9 = base_change(plus, 2);
    EXPECT_TRUE(isogeny_test(minus9, plus9).isogenous);
    const Morphism f = find_quasi_isogeny(minus9, plus9);
    EXPECT_TRUE(f.is_isogeny());
    EXPECT_EQ(f.F(0, 0).degree(), 0);
    EXPECT_EQ(sigma(f.F(0, 0).coeff(0)), -f.F(0, 0).coeff(0));
}

TEST(Invariants, FindQuasiIsogenyErrors) {
    const auto& c = FieldCtx::make_default(3, 1, 1);
    const Motive A = antidiag(c, 2);
    // Different weights: Hom is zero.
    EXPECT_THROW(find_quasi_isogeny(antidiag(c, 1), A), std::invalid_argument);
    // Nonzero Hom between different ranks.
    const Motive B = rank1(c, tp(c, {0, 1}), c.zero());
    EXPECT_GT(hom_dimension(A, B), 0u);
    EXPECT_EQ(code_of([&] { find_quasi_isogeny(A, B); }), Errc::NotFound);
    EXPECT_EQ(code_of([&] { find_quasi_isogeny(A, unipotent(c)); }), Errc::FieldMismatch);
    EXPECT_TRUE(find_quasi_isogeny(A, A).F == TMat::identity(2, zero_t(c)));
}

TEST(Invariants, IrreducibilityCertificates) {
    const auto& c = FieldCtx::make_default(3, 1, 1);
    const XPoly x = x_var(c);
    EXPECT_EQ(certify_irreducible(x - xpoly_constant(t_var(c)), c, {}).irreducible, true);
    EXPECT_EQ(certify_irreducible(x * x - xpoly_constant(t_var(c)), c, {}).irreducible, true);
    EXPECT_EQ(certify_irreducible(x * x - xpoly_constant(t_pow(c, 2)), c, {}).irreducible, false);
    // (x^2 - t)(x^2 - t^3): no root in F_q[t]; at infinity both factors ramify, leaving degree 2 open.
    const XPoly f = (x * x - xpoly_constant(t_var(c))) * (x * x - xpoly_constant(t_pow(c, 3)));
    std::vector<std::size_t> degs;
    for (const auto& d : ore_refine(f, Place::infinity())) degs.push_back(d.e * d.f);
    EXPECT_EQ(certify_irreducible(f, c, {{Place::infinity(), degs}}).irreducible, std::nullopt);
    // x^4 - t is totally ramified at infinity.
    const XPoly h = x * x * x * x - xpoly_constant(t_var(c));
    degs.clear();
    for (const auto& d : ore_refine(h, Place::infinity())) degs.push_back(d.e * d.f);
    EXPECT_EQ(degs, std::vector<std::size_t>{4});
    EXPECT_EQ(certify_irreducible(h, c, {{Place::infinity(), degs}}).irreducible, true);
}

TEST(Invariants, CertificateNeverClaimsIrreducibleForProducts) {
    Rng g(53);
    for (auto [p, n] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}}) {
        const auto& c = FieldCtx::make_default(p, n, 1);
        for (int k = 0; k < 25; ++k) {
            XPoly a = x_var(c), b = x_var(c) * x_var(c);
            a = a + xpoly_constant(rand_poly(c, g, 2, true));
            b = b + xmono(rand_poly(c, g, 1, true), 1) + xpoly_constant(rand_poly(c, g, 2, true));
            XPoly f = a * b;
            if (k % 2) f = b * (b + xpoly_constant(t_var(c)));
            std::vector<std::pair<Place, std::vector<std::size_t>>> pats;
            for (const auto& v : monic_irreducibles_Fq(c, 1)) {
                const auto res = residue_field(v);
                const auto red = f.map([&](const TPoly& x) { return res.zero.lift(x); });
                if (!is_squarefree(red)) continue;
                std::vector<std::size_t> degs;
                for (const auto& fc : factor(red, res)) degs.push_back(static_cast<std::size_t>(fc.poly.degree()));
                pats.emplace_back(Place::finite(v), degs);
            }
            EXPECT_NE(certify_irreducible(f, c, pats).irreducible, std::optional<bool>(true)) << to_string(f);
        }
    }
}

TEST(Invariants, EndAlgebraOfAntiDiagonalFamily) {
    const auto& c = FieldCtx::make_default(3, 1, 2);
    for (int d = 1; d <= 3; ++d) {
        const auto R = end_algebra_report(antidiag(c, d));
        EXPECT_EQ(R.dim_E, 4u);
        EXPECT_EQ(R.dim_F, 1u);
        EXPECT_TRUE(R.center_is_Q);
        EXPECT_TRUE(R.dimensions_consistent);
        ASSERT_EQ(R.hasse.size(), 2u);
        for (const auto& h : R.hasse) EXPECT_EQ(h.invariant, mod_one(Rational(d, 2)));
        EXPECT_EQ(R.invariant_sum, Rational(0));
        ASSERT_TRUE(R.tate.has_value());
        EXPECT_EQ(R.tate->r, R.dim_E);
    }
    const auto& c3 = FieldCtx::make_default(3, 1, 1);
    const auto R = end_algebra_report(antidiag(c3, 1));
    EXPECT_EQ(R.dim_E, 2u);
    EXPECT_EQ(R.dim_F, 2u);
    EXPECT_EQ(R.mu_irreducible.irreducible, true);
    EXPECT_EQ(R.h, std::optional<std::uint64_t>(2));
}

TEST(Invariants, EndAlgebraOfRankFourFamily) {
    {
        const auto& c = FieldCtx::make_default(3, 1, 2);
        const auto R = end_algebra_report(rank_four(c, 1, 1));
        EXPECT_EQ(R.dim_E, 8u);
        EXPECT_EQ(R.dim_F, 2u);
        std::vector<Rational> inf;
        for (const auto& h : R.hasse)
            if (h.local.base.infinite)
                inf.push_back(h.invariant);
            else
                EXPECT_EQ(h.invariant, Rational(0));
        EXPECT_EQ(inf, (std::vector<Rational>{Rational(1, 2), Rational(1, 2)}));
        EXPECT_EQ(R.invariant_sum, Rational(0));
    }
    {
        const auto& c = FieldCtx::make_default(5, 1, 2);
        const auto R = end_algebra_report(rank_four(c, 2, 1));
        EXPECT_EQ(R.dim_E, 8u);
        EXPECT_EQ(R.dim_F, 2u);
        std::size_t at_inf = 0;
        for (const auto& h : R.hasse) {
            EXPECT_EQ(h.invariant, Rational(0));
            if (h.local.base.infinite) {
                ++at_inf;
                EXPECT_EQ(h.local.f, 2u);
            }
        }
        EXPECT_EQ(at_inf, 1u);
    }
    for (auto [p, a] : std::vector<std::pair<int, int>>{{3, 1}, {5, 2}}) {
        const auto& c = FieldCtx::make_default(p, 1, 1);
        const auto R = end_algebra_report(rank_four(c, a, 1));
        EXPECT_EQ(R.dim_E, 4u);
        EXPECT_EQ(R.dim_F, 4u);
        EXPECT_EQ(R.mu_irreducible.irreducible, true);
    }
}

TEST(Invariants, EndAlgebraRejectsNonSemisimple) {
    const auto& c = FieldCtx::make_default(3, 1, 1);
    EXPECT_EQ(code_of([&] { end_algebra_report(unipotent(c)); }), Errc::NotSemisimple);
}

TEST(Invariants, TateCountMatchesHomDimension) {
    Rng g(54);
    int checked = 0;
    for (auto [p, e] : std::vector<std::pair<int, int>>{{3, 1}, {3, 2}, {5, 1}, {2, 2}}) {
        const auto& c = FieldCtx::make_default(p, 1, e);
        for (int k = 0; k < 4; ++k) {
            const Motive M = rand_drinfeld(c, g, 1 + g() % 3);
            if (!is_semisimple(M)) continue;
            const auto lr = local_r_count(M, M);
            if (!lr) continue;
            EXPECT_EQ(lr->r, hom_dimension(M, M));
            ++checked;
        }
    }
    EXPECT_GT(checked, 5);
}

TEST(Invariants, ZetaToString) {
    const auto& c = FieldCtx::make_default(3, 1, 1);
    const std::string s = to_string(zeta(antidiag(c, 1)));
    EXPECT_NE(s.find("/"), std::string::npos);
}
