#pragma once

// Pure Anderson motives over L = F_{q^e} with A = F_q[t], given by the matrix
// T of tau in a basis of M = L[t]^r (tau(m) = T * sigma(m)), and their
// morphisms F: M -> M' with F * T = T' * sigma(F).

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "motivix/bivar.hpp"
#include "motivix/local_factor.hpp"
#include "motivix/matrix.hpp"

namespace motivix {

struct Motive {
    const FieldCtx* field = nullptr;
    Gf theta;
    TMat T;
    std::size_t r = 0;
    std::uint32_t d = 0;
    TPoly eps;  // monic minimal polynomial of theta over F_q
    TMat Pi;    // T sigma(T) ... sigma^{e-1}(T)
    XPoly chi;  // det(x I - Pi), coefficients in F_q[t]

    const FieldCtx& ctx() const { return *field; }
    Rational weight() const { return Rational(d, static_cast<std::int64_t>(r)); }
    /// [L : F_q]
    std::uint32_t e() const { return field->e(); }

    friend bool operator==(const Motive& a, const Motive& b) {
        return a.field == b.field && a.theta == b.theta && a.T == b.T;
    }
};

inline TMat frobenius_matrix(const TMat& T, std::uint32_t e) {
    TMat P = T, cur = T;
    for (std::uint32_t i = 1; i < e; ++i) {
        cur = sigma(cur);
        P = P * cur;
    }
    return P;
}

inline bool has_base_coeffs(const XPoly& f) {
    for (const auto& c : f.coeffs())
        if (!is_base_field(c)) return false;
    return true;
}

namespace detail {

inline void check_field(const TMat& T, const FieldCtx& ctx) {
    for (std::size_t i = 0; i < T.rows(); ++i)
        for (std::size_t j = 0; j < T.cols(); ++j)
            if (&T(i, j).zero_coeff().ctx() != &ctx)
                throw Error(Errc::FieldMismatch, "matrix entry over a different field");
}

}  // namespace detail

/// Checks the motive axioms and caches Frobenius and its characteristic
/// polynomial. Purity is certified by a single Newton slope -e d / r of chi
/// at infinity.
inline Motive make_motive(const FieldCtx& ctx, const Gf& theta, const TMat& T) {
    if (!T.square() || T.rows() == 0) throw std::invalid_argument("tau matrix must be square of positive size");
    if (&theta.ctx() != &ctx) throw Error(Errc::FieldMismatch, "theta lies in a different field");
    detail::check_field(T, ctx);
    Motive M;
    M.field = &ctx;
    M.theta = theta;
    M.T = T;
    M.r = T.rows();
    const TPoly D = det(T);
    if (D.is_zero()) throw Error(Errc::NotInjective, "det T = 0");
    M.d = static_cast<std::uint32_t>(D.degree());
    const TPoly lin(std::vector<Gf>{-theta, ctx.one()}, ctx.zero());
    if (D != pow(lin, M.d).scale(D.lc()))
        throw Error(Errc::NotCharacteristic, "det T = " + to_string(D) + " is not a unit times a power of t - theta");
    const auto eps = frobenius_orbit_minpoly(theta);
    M.eps = TPoly(eps, ctx.zero());
    M.Pi = frobenius_matrix(T, ctx.e());
    M.chi = charpoly(M.Pi);
    if (!has_base_coeffs(M.chi))
        throw Error(Errc::SigmaInvarianceViolated, "characteristic polynomial of Frobenius is not over F_q[t]");
    const auto np = newton_polygon(M.chi, Place::infinity());
    const Rational want(-static_cast<std::int64_t>(ctx.e()) * M.d, static_cast<std::int64_t>(M.r));
    if (np.segments.size() != 1 || np.segments[0].slope != want)
        throw Error(Errc::NotPure, "Newton polygon of chi at infinity is not the single slope " + to_string(want));
    return M;
}

inline TPoly char_place(const Motive& M) { return M.eps; }
inline const XPoly& char_poly(const Motive& M) { return M.chi; }

/// Minimal polynomial of Frobenius over F_q(t): the last invariant factor of
/// x I - Pi over F_q(t)[x], made primitive in F_q[t][x].
inline XPoly min_poly(const Motive& M) {
    const RatFunc zq(TPoly(M.ctx().zero()));
    const QxPoly zx(zq);
    Mat<QxPoly> A(M.r, M.r, zx);
    for (std::size_t i = 0; i < M.r; ++i)
        for (std::size_t j = 0; j < M.r; ++j) {
            QxPoly c = QxPoly::constant(-RatFunc(M.Pi(i, j)));
            if (i == j) c = c + QxPoly::var(zq);
            A(i, j) = c;
        }
    const auto snf = smith_normal_form(A);
    XPoly mu = clear_denominators(snf.invariants.back());
    if (!has_base_coeffs(mu)) throw Error(Errc::SigmaInvarianceViolated, "minimal polynomial is not over F_q[t]");
    return mu;
}

// ---- morphisms -------------------------------------------------------------

enum class MorphismKind { Zero, Isogeny, NonIsogeny };

inline const char* kind_name(MorphismKind k) {
    switch (k) {
        case MorphismKind::Zero: return "zero";
        case MorphismKind::Isogeny: return "isogeny";
        case MorphismKind::NonIsogeny: return "morphism";
    }
    return "?";
}

struct Morphism {
    Motive src, tgt;
    TMat F;
    MorphismKind kind = MorphismKind::Zero;

    bool is_endomorphism() const { return src == tgt; }
    bool is_isogeny() const { return kind == MorphismKind::Isogeny; }
};

inline void require_compatible(const Motive& a, const Motive& b) {
    if (a.field != b.field) throw Error(Errc::FieldMismatch, "motives are over different fields");
    if (a.theta != b.theta) throw Error(Errc::FieldMismatch, "motives have different characteristic maps");
}

inline Morphism make_morphism(const TMat& F, const Motive& src, const Motive& tgt) {
    require_compatible(src, tgt);
    if (F.rows() != tgt.r || F.cols() != src.r)
        throw std::invalid_argument("morphism matrix must be rank(target) x rank(source)");
    detail::check_field(F, src.ctx());
    if (F * src.T != tgt.T * sigma(F)) throw Error(Errc::IntertwiningViolated, "F T != T' sigma(F)");
    Morphism f{src, tgt, F, MorphismKind::NonIsogeny};
    if (F.is_zero())
        f.kind = MorphismKind::Zero;
    else if (F.square() && !det(F).is_zero())
        f.kind = MorphismKind::Isogeny;
    return f;
}

/// g o f
inline Morphism compose(const Morphism& g, const Morphism& f) {
    if (!(f.tgt == g.src)) throw std::invalid_argument("morphisms are not composable");
    return make_morphism(g.F * f.F, f.src, g.tgt);
}

inline Morphism frobenius(const Motive& M) { return make_morphism(M.Pi, M, M); }

inline Morphism scalar_morphism(const Motive& M, const TPoly& a) {
    return make_morphism(TMat::scalar(M.r, a), M, M);
}

inline Morphism identity_morphism(const Motive& M) { return scalar_morphism(M, TPoly::constant(M.ctx().one())); }

// ---- degree ideal ----------------------------------------------------------

struct DegreeIdeal {
    /// Monic irreducibles v of F_q[t] with exponents, sorted by poly_less.
    std::vector<std::pair<TPoly, std::uint32_t>> exponents;
    TPoly monic_generator;             // prod v^exp
    std::optional<TPoly> generator;    // det F for endomorphisms
    std::uint64_t coker_dim = 0;       // dim_L coker f
    TPoly separable_part, inseparable_part;

    std::uint64_t colength() const {
        std::uint64_t s = 0;
        for (const auto& [v, k] : exponents) s += static_cast<std::uint64_t>(v.degree()) * k;
        return s;
    }
};

inline void require_isogeny(const Morphism& f) {
    if (!f.is_isogeny()) throw Error(Errc::NotIsogeny, "morphism is not an isogeny");
}

/// prod_{i<e} sigma^i(a), which lies in F_q[t].
inline TPoly norm_to_Fq(const TPoly& a) {
    TPoly n = a, cur = a;
    for (std::uint32_t i = 1; i < a.zero_coeff().ctx().e(); ++i) {
        cur = sigma(cur);
        n = n * cur;
    }
    return n;
}

/// Degree of an isogeny: the exponent at v is dim_L of the v-primary part of
/// coker f divided by deg v.
inline DegreeIdeal isogeny_degree(const Morphism& f) {
    require_isogeny(f);
    const auto& ctx = f.src.ctx();
    const auto snf = smith_normal_form(f.F);
    DegreeIdeal out;
    out.monic_generator = out.separable_part = out.inseparable_part = TPoly::constant(ctx.one());
    for (const auto& dj : snf.invariants) out.coker_dim += static_cast<std::uint64_t>(dj.degree());
    const TPoly N = norm_to_Fq(monic(det(f.F)));
    if (N.degree() > 0) {
        for (const auto& fac : factor(N, field_Fq(ctx))) {
            const TPoly& v = fac.poly;
            std::uint64_t dim = 0;
            for (const auto& dj : snf.invariants) {
                if (dj.degree() <= 0) continue;
                dim += static_cast<std::uint64_t>(gcd(dj, pow(v, static_cast<std::uint64_t>(dj.degree()))).degree());
            }
            if (dim == 0) continue;
            if (dim % static_cast<std::uint64_t>(v.degree()) != 0)
                throw std::logic_error("v-primary cokernel dimension is not a multiple of deg v");
            const auto k = static_cast<std::uint32_t>(dim / static_cast<std::uint64_t>(v.degree()));
            out.exponents.emplace_back(v, k);
            const TPoly vk = pow(v, k);
            out.monic_generator = out.monic_generator * vk;
            if (v == f.src.eps)
                out.inseparable_part = out.inseparable_part * vk;
            else
                out.separable_part = out.separable_part * vk;
        }
    }
    if (f.is_endomorphism()) out.generator = det(f.F);
    return out;
}

/// det F for an endomorphism; it lies in F_q[t].
inline TPoly reduced_norm(const Morphism& f) {
    if (!f.is_endomorphism()) throw std::invalid_argument("reduced norm needs an endomorphism");
    const TPoly n = det(f.F);
    if (!is_base_field(n)) throw Error(Errc::SigmaInvarianceViolated, "det F is not in F_q[t]");
    return n;
}

/// The dual isogeny adj(F), with F adj(F) = adj(F) F = N(f).
inline Morphism dual_isogeny(const Morphism& f) {
    if (!f.is_endomorphism()) throw std::invalid_argument("dual isogeny needs an endomorphism");
    require_isogeny(f);
    const Morphism g = make_morphism(adjugate(f.F), f.src, f.src);
    const TMat n = TMat::scalar(f.src.r, det(f.F));
    if (f.F * g.F != n || g.F * f.F != n) throw std::logic_error("adjugate identity failed");
    return g;
}

// ---- cokernel ---------------------------------------------------------------

inline Mat<Gf> sigma(const Mat<Gf>& m) {
    return m.map([](const Gf& a) { return sigma(a); });
}

/// coker f = L[t]^r / F L[t]^r, identified with the sum of L[t]/(d_j) through
/// the Smith form U F V = D. Basis vectors are t^k e_j with k < deg d_j, and
/// tau acts by c -> tau * sigma(c) in this basis.
struct CokerModule {
    std::vector<TPoly> divisors;                          // d_j, monic
    TMat U;                                               // y = U m
    std::vector<std::pair<std::size_t, std::size_t>> basis;  // (j, k)
    Mat<Gf> tau;
    bool separable = true;
    bool purely_inseparable = false;

    std::size_t dim() const { return basis.size(); }

    /// Coordinates of the class of m in L[t]^r.
    std::vector<Gf> coords(const std::vector<TPoly>& m) const {
        const auto y = U.apply(m);
        std::vector<Gf> c;
        for (const auto& [j, k] : basis) c.push_back((y[j] % divisors[j]).coeff(k));
        return c;
    }

    /// Whether a in F_q[t] acts as zero.
    bool annihilated_by(const TPoly& a) const {
        for (const auto& dj : divisors)
            if (!(a % dj).is_zero()) return false;
        return true;
    }
};

inline CokerModule coker_structure(const Morphism& f) {
    require_isogeny(f);
    const auto& ctx = f.src.ctx();
    const auto snf = smith_normal_form(f.F);
    CokerModule C;
    C.U = snf.U;
    const std::size_t r = f.F.rows();
    for (std::size_t j = 0; j < r; ++j) C.divisors.push_back(snf.D(j, j));
    for (std::size_t j = 0; j < r; ++j)
        for (long k = 0; k < C.divisors[j].degree(); ++k) C.basis.emplace_back(j, static_cast<std::size_t>(k));
    const std::size_t n = C.basis.size();
    C.tau = Mat<Gf>(n, n, ctx.zero());
    if (n == 0) return C;
    const TMat S = snf.U * f.tgt.T * sigma(unimodular_inverse(snf.U));
    for (std::size_t b = 0; b < n; ++b) {
        const auto [j, k] = C.basis[b];
        std::vector<TPoly> col(r, TPoly(ctx.zero()));
        for (std::size_t i = 0; i < r; ++i) col[i] = S(i, j).shift(k) % C.divisors[i];
        for (std::size_t a = 0; a < n; ++a) {
            const auto [i, l] = C.basis[a];
            C.tau(a, b) = col[i].coeff(l);
        }
    }
    C.separable = !det(C.tau).is_zero();
    Mat<Gf> P = C.tau, cur = C.tau;
    for (std::size_t i = 1; i < n; ++i) {
        cur = sigma(cur);
        P = P * cur;
    }
    C.purely_inseparable = P.is_zero();
    return C;
}

// ---- sub-motives from ideals --------------------------------------------

struct SubMotive {
    Motive sub;
    Morphism inclusion;  // M^I -> M with matrix B
};

/// M^I = sum of the images of the generators, with a Hermite basis B of the
/// column span and tau-matrix B^{-1} T sigma(B).
inline SubMotive submotive_from_ideal(const Motive& M, const std::vector<Morphism>& gens) {
    if (gens.empty()) throw Error(Errc::NoIsogenyInIdeal, "empty generator list");
    for (const auto& g : gens)
        if (!(g.src == M) || !(g.tgt == M)) throw std::invalid_argument("generators must be endomorphisms of M");
    const TPoly zero(M.ctx().zero());
    TMat G(M.r, M.r * gens.size(), zero);
    for (std::size_t k = 0; k < gens.size(); ++k) G.set_block(0, k * M.r, gens[k].F);
    const auto hf = column_hermite_form(G);
    if (hf.rank < M.r) throw Error(Errc::NoIsogenyInIdeal, "the images do not span a full-rank submodule");
    const TMat B = hf.H.block(0, 0, M.r, M.r);
    const TPoly dB = det(B);
    TMat X = adjugate(B) * M.T * sigma(B);
    for (std::size_t i = 0; i < M.r; ++i)
        for (std::size_t j = 0; j < M.r; ++j) {
            auto q = X(i, j).divide_exact(dB);
            if (!q) throw std::logic_error("B^{-1} T sigma(B) is not polynomial");
            X(i, j) = std::move(*q);
        }
    Motive sub = make_motive(M.ctx(), M.theta, X);
    Morphism inc = make_morphism(B, sub, M);
    return {std::move(sub), std::move(inc)};
}

// ---- base change and direct sums ---------------------------------------

/// Field embedding L -> L' sending the generator of L to the smallest root
/// (by packed value) of its modulus in L'.
class Embedding {
public:
    Embedding(const FieldCtx& from, const FieldCtx& to) : from_(&from), to_(&to) {
        if (from.p() != to.p() || to.degree() % from.degree() != 0)
            throw Error(Errc::EmbeddingFailure, from.describe() + " does not embed in " + to.describe());
        const auto& m = from.modulus();
        std::optional<Gf> root;
        for (std::uint64_t v = 0; v < to.order() && !root; ++v) {
            const Gf x = to.from_packed(static_cast<std::uint32_t>(v));
            Gf acc = to.zero();
            for (std::size_t i = m.size(); i-- > 0;) acc = acc * x + to.from_int(m[i]);
            if (acc.is_zero()) root = x;
        }
        if (!root) throw Error(Errc::EmbeddingFailure, "modulus has no root in " + to.describe());
        table_.resize(from.order());
        std::vector<Gf> pw{to.one()};
        for (std::uint32_t i = 1; i < from.degree(); ++i) pw.push_back(pw.back() * *root);
        for (std::uint64_t v = 0; v < from.order(); ++v) {
            const auto c = from.from_packed(static_cast<std::uint32_t>(v)).coeffs();
            Gf y = to.zero();
            for (std::size_t i = 0; i < c.size(); ++i) y += pw[i] * to.from_int(c[i]);
            table_[v] = y.packed();
        }
    }

    const FieldCtx& target() const { return *to_; }
    Gf operator()(const Gf& x) const { return to_->from_packed(table_[x.packed()]); }
    TPoly operator()(const TPoly& a) const {
        return a.map([this](const Gf& x) { return (*this)(x); });
    }
    TMat operator()(const TMat& m) const {
        return m.map([this](const TPoly& a) { return (*this)(a); });
    }

private:
    const FieldCtx* from_;
    const FieldCtx* to_;
    std::vector<std::uint32_t> table_;
};

/// The motive over F_{q^e'} obtained by extending scalars; e must divide e'.
inline Motive base_change(const Motive& M, std::uint32_t e_new) {
    const auto& ctx = M.ctx();
    if (e_new == 0 || e_new % ctx.e() != 0) throw std::invalid_argument("extension degree must be a multiple of e");
    if (e_new == ctx.e()) return M;
    const FieldCtx& big = FieldCtx::make_default(ctx.p(), ctx.n(), e_new);
    const Embedding emb(ctx, big);
    return make_motive(big, emb(M.theta), emb(M.T));
}

inline Motive direct_sum(const Motive& a, const Motive& b) {
    require_compatible(a, b);
    if (a.weight() != b.weight())
        throw Error(Errc::WeightMismatch, "weights " + to_string(a.weight()) + " and " + to_string(b.weight()) + " differ");
    return make_motive(a.ctx(), a.theta, block_diag(a.T, b.T));
}

// ---- Hom spaces by semilinear nullspace -------------------------------------

struct HomSpace {
    std::vector<TMat> basis;  // Q-basis of Hom(M, M') tensor Q, entries in L[t]
    std::size_t dim() const { return basis.size(); }
};

/// Solves F T = T' sigma(F) for F in Mat(L(t)) by writing F = sum_k w_k X_k
/// with w_k an F_q-basis of L and X_k over F_q(t), then splitting every
/// equation into F_q-coordinates. gamma selects the basis w_k = gamma^k.
inline HomSpace hom_space(const Motive& M, const Motive& Mp, std::optional<Gf> gamma = std::nullopt) {
    require_compatible(M, Mp);
    HomSpace out;
    if (M.weight() != Mp.weight()) return out;
    const auto& ctx = M.ctx();
    const FqBasis w(gamma ? *gamma : ctx.generator());
    const std::size_t e = w.size(), r = M.r, rp = Mp.r;
    const TPoly zero(ctx.zero());
    auto unknown = [&](std::size_t k, std::size_t a, std::size_t b) { return (k * rp + a) * r + b; };
    const std::size_t nu = e * rp * r;
    TMat sys(rp * r * e, nu, zero);
    std::vector<TPoly> acc(nu, zero);
    for (std::size_t a = 0; a < rp; ++a)
        for (std::size_t c = 0; c < r; ++c) {
            std::fill(acc.begin(), acc.end(), zero);
            for (std::size_t k = 0; k < e; ++k) {
                const TPoly wk = TPoly::constant(w[static_cast<std::uint32_t>(k)]);
                const TPoly swk = TPoly::constant(sigma(w[static_cast<std::uint32_t>(k)]));
                for (std::size_t b = 0; b < r; ++b) acc[unknown(k, a, b)] = acc[unknown(k, a, b)] + wk * M.T(b, c);
                for (std::size_t b = 0; b < rp; ++b) acc[unknown(k, b, c)] = acc[unknown(k, b, c)] - Mp.T(a, b) * swk;
            }
            for (std::size_t u = 0; u < nu; ++u) {
                const TPoly& P = acc[u];
                if (P.is_zero()) continue;
                std::vector<std::vector<Gf>> split(e, std::vector<Gf>(P.size(), ctx.zero()));
                for (std::size_t m = 0; m < P.size(); ++m) {
                    const auto cs = w.coords(P[m]);
                    for (std::size_t l = 0; l < e; ++l) split[l][m] = cs[l];
                }
                for (std::size_t l = 0; l < e; ++l) sys((a * r + c) * e + l, u) = TPoly(std::move(split[l]), ctx.zero());
            }
        }
    for (const auto& v : nullspace(sys)) {
        TMat F(rp, r, zero);
        for (std::size_t k = 0; k < e; ++k) {
            const TPoly wk = TPoly::constant(w[static_cast<std::uint32_t>(k)]);
            for (std::size_t a = 0; a < rp; ++a)
                for (std::size_t b = 0; b < r; ++b) F(a, b) = F(a, b) + wk * v[unknown(k, a, b)];
        }
        if (F * M.T != Mp.T * sigma(F)) throw std::logic_error("semilinear nullspace vector does not intertwine");
        out.basis.push_back(std::move(F));
    }
    return out;
}

inline std::size_t hom_dimension(const Motive& M, const Motive& Mp) { return hom_space(M, Mp).dim(); }

}  // namespace motivix
