#pragma once

// Shared builders and hand-rolled random generators for the test suites.

#include <random>
#include <string>
#include <vector>

#include "motivix/motivix.hpp"

namespace mt {

using namespace motivix;

inline TPoly tp(const FieldCtx& c, std::vector<std::int64_t> v) {
    std::vector<Gf> g;
    for (auto x : v) g.push_back(c.from_int(x));
    return TPoly(std::move(g), c.zero());
}

inline TPoly t_pow(const FieldCtx& c, int d) {
    std::vector<std::int64_t> v(static_cast<std::size_t>(d) + 1, 0);
    v.back() = 1;
    return tp(c, v);
}

inline TPoly zero_t(const FieldCtx& c) { return TPoly(c.zero()); }

/// x^k with coefficient c in F_q[t][x].
inline XPoly xmono(const TPoly& c, std::size_t k) { return XPoly::monomial(c, k); }

inline TMat antidiag_T(const FieldCtx& c, int d) {
    return TMat::from_rows({{tp(c, {0}), tp(c, {1})}, {t_pow(c, d), tp(c, {0})}}, zero_t(c));
}

inline Motive antidiag(const FieldCtx& c, int d) { return make_motive(c, c.zero(), antidiag_T(c, d)); }

inline Motive rank_four(const FieldCtx& c, int a, int b) {
    const TPoly z = zero_t(c), t = tp(c, {0, 1});
    return make_motive(
        c, c.zero(),
        TMat::from_rows({{z, z, z, tp(c, {a})}, {z, tp(c, {b}), tp(c, {1}), z}, {t, z, tp(c, {-b}), z}, {z, t, z, z}}, z));
}

inline Motive unipotent(const FieldCtx& c) {
    return make_motive(c, c.one(),
                       TMat::from_rows({{tp(c, {1}), tp(c, {0, -1})}, {tp(c, {0, 1}), tp(c, {1, 1})}}, zero_t(c)));
}

inline Motive rank1(const FieldCtx& c, const TPoly& a, const Gf& theta) {
    return make_motive(c, theta, TMat::from_rows({{a}}, zero_t(c)));
}

inline Motive fixture(const std::string& name) {
    return motive_from_json(read_json_file(std::string(MOTIVIX_FIXTURES) + "/" + name));
}

// ---- generators ------------------------------------------------------------

using Rng = std::mt19937_64;

inline Gf rand_L(const FieldCtx& c, Rng& g) { return c.from_packed(static_cast<std::uint32_t>(g() % c.order())); }

inline Gf rand_Fq(const FieldCtx& c, Rng& g) { return c.base_field()[g() % c.base_field().size()]; }

inline TPoly rand_poly(const FieldCtx& c, Rng& g, int max_deg, bool base = false) {
    std::vector<Gf> v;
    for (int i = 0; i <= max_deg; ++i) v.push_back(base ? rand_Fq(c, g) : rand_L(c, g));
    return TPoly(std::move(v), c.zero());
}

inline TMat rand_mat(const FieldCtx& c, Rng& g, std::size_t n, std::size_t m, int max_deg) {
    TMat a(n, m, zero_t(c));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) a(i, j) = rand_poly(c, g, static_cast<int>(g() % (max_deg + 1)));
    return a;
}

/// A rank-r motive with companion-shaped T: ones below the diagonal, constant
/// entries b_i in the last column and c (t - theta) in the corner. Retries
/// until the motive axioms hold.
inline Motive rand_drinfeld(const FieldCtx& c, Rng& g, std::size_t r) {
    while (true) {
        const Gf theta = rand_L(c, g);
        const TPoly z = zero_t(c);
        TMat T(r, r, z);
        for (std::size_t i = 1; i < r; ++i) T(i, i - 1) = TPoly::constant(c.one());
        for (std::size_t i = 1; i < r; ++i) T(i, r - 1) = TPoly::constant(rand_L(c, g));
        Gf lead = rand_L(c, g);
        if (lead.is_zero()) continue;
        T(0, r - 1) = TPoly(std::vector<Gf>{-theta * lead, lead}, c.zero());
        if (r == 1) T(0, 0) = TPoly(std::vector<Gf>{-theta * lead, lead}, c.zero());
        try {
            return make_motive(c, theta, T);
        } catch (const Error&) {
        }
    }
}

/// A random F_q[t]-combination of the given Hom basis, coefficients of
/// degree <= deg.
inline TMat rand_combination(const std::vector<TMat>& basis, const FieldCtx& c, Rng& g, int deg) {
    TMat F(basis[0].rows(), basis[0].cols(), zero_t(c));
    for (const auto& B : basis) F = F + B.scale(rand_poly(c, g, deg, true));
    return F;
}

}  // namespace mt
