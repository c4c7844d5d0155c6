#pragma once

// Quotient rings F_q[t]/(m). With m irreducible this is the residue field of
// the place m; with m = v^N it is the truncated v-adic ring used for lifting.

#include <functional>
#include <memory>
#include <random>

#include "motivix/poly.hpp"

namespace motivix {

class ModElem {
public:
    ModElem() = default;
    ModElem(const TPoly& v, std::shared_ptr<const TPoly> m) : m_(std::move(m)) {
        v_ = v.degree() >= m_->degree() ? v % *m_ : v;
    }

    const TPoly& value() const noexcept { return v_; }
    const TPoly& modulus() const noexcept { return *m_; }
    const std::shared_ptr<const TPoly>& modulus_ptr() const noexcept { return m_; }

    bool is_zero() const noexcept { return v_.is_zero(); }
    ModElem zero_like() const { return ModElem(m_->zero_like(), m_); }
    ModElem one_like() const { return ModElem(m_->one_like(), m_); }
    ModElem lift(const TPoly& a) const { return ModElem(a, m_); }

    ModElem operator+(const ModElem& o) const { return raw(v_ + o.v_); }
    ModElem operator-(const ModElem& o) const { return raw(v_ - o.v_); }
    ModElem operator-() const { return raw(-v_); }
    ModElem operator*(const ModElem& o) const { return ModElem(v_ * o.v_, m_); }
    ModElem& operator+=(const ModElem& o) { return *this = *this + o; }
    ModElem& operator-=(const ModElem& o) { return *this = *this - o; }
    ModElem& operator*=(const ModElem& o) { return *this = *this * o; }

    bool is_unit() const {
        if (v_.is_zero()) return false;
        return gcd(v_, *m_).degree() == 0;
    }
    ModElem inv() const {
        if (v_.is_zero()) throw std::domain_error("inverse of zero residue");
        return ModElem(inverse_mod(v_, *m_), m_);
    }
    ModElem pow(std::uint64_t k) const {
        ModElem r = one_like(), b = *this;
        while (k) {
            if (k & 1) r = r * b;
            k >>= 1;
            if (k) b = b * b;
        }
        return r;
    }

    friend bool operator==(const ModElem& a, const ModElem& b) {
        return a.v_ == b.v_ && (a.m_ == b.m_ || *a.m_ == *b.m_);
    }
    friend bool operator!=(const ModElem& a, const ModElem& b) { return !(a == b); }
    friend bool operator<(const ModElem& a, const ModElem& b) {
        const auto& x = a.v_.coeffs();
        const auto& y = b.v_.coeffs();
        if (x.size() != y.size()) return x.size() < y.size();
        for (std::size_t i = x.size(); i-- > 0;)
            if (x[i] != y[i]) return x[i] < y[i];
        return false;
    }

private:
    ModElem raw(TPoly v) const {
        ModElem r;
        r.v_ = std::move(v);
        r.m_ = m_;
        return r;
    }

    TPoly v_;
    std::shared_ptr<const TPoly> m_;
};

inline std::optional<ModElem> exact_quotient(const ModElem& a, const ModElem& b) {
    if (!b.is_unit()) return std::nullopt;
    return a * b.inv();
}

inline std::string coeff_string(const ModElem& c) { return to_string(c.value(), "t"); }

/// What the generic factorization routines need to know about a finite field K.
template <class K>
struct FiniteField {
    K zero;
    std::uint64_t order = 0;
    std::uint32_t characteristic = 0;
    std::function<K(std::mt19937_64&)> random;

    K one() const { return zero.one_like(); }
};

/// L itself.
inline FiniteField<Gf> field_L(const FieldCtx& ctx) {
    return {ctx.zero(), ctx.order(), ctx.p(),
            [&ctx](std::mt19937_64& rng) { return ctx.from_packed(static_cast<std::uint32_t>(rng() % ctx.order())); }};
}

/// The subfield F_q of L.
inline FiniteField<Gf> field_Fq(const FieldCtx& ctx) {
    return {ctx.zero(), ctx.q(), ctx.p(), [&ctx](std::mt19937_64& rng) {
                const auto& els = ctx.base_field();
                return els[rng() % els.size()];
            }};
}

/// F_q[t]/(v) for a monic irreducible v in F_q[t].
inline FiniteField<ModElem> residue_field(const TPoly& v) {
    auto m = std::make_shared<const TPoly>(v);
    const auto& ctx = v.zero_coeff().ctx();
    std::uint64_t order = 1;
    for (long i = 0; i < v.degree(); ++i) order *= ctx.q();
    const auto deg = static_cast<std::size_t>(v.degree());
    return {ModElem(v.zero_like(), m), order, ctx.p(), [m, &ctx, deg](std::mt19937_64& rng) {
                const auto& els = ctx.base_field();
                std::vector<Gf> c(deg, ctx.zero());
                for (auto& x : c) x = els[rng() % els.size()];
                return ModElem(TPoly(std::move(c), ctx.zero()), m);
            }};
}

}  // namespace motivix
