#pragma once

// Dense univariate polynomials over an arbitrary coefficient ring R.
//
// R must provide is_zero(), zero_like(), one_like(), +, -, *, unary -, ==.
// Division needs exact_quotient(a, b) (found by ADL) returning
// std::optional<R>; for fields this is a * b^-1.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "motivix/gf.hpp"

namespace motivix {

inline std::optional<Gf> exact_quotient(const Gf& a, const Gf& b) {
    if (b.is_zero()) return std::nullopt;
    return a / b;
}

template <class R>
class Poly {
public:
    using coeff_type = R;

    Poly() = default;
    explicit Poly(const R& zero) : zero_(zero.zero_like()) {}
    Poly(std::vector<R> c, const R& zero) : c_(std::move(c)), zero_(zero.zero_like()) { trim(); }

    static Poly constant(const R& c) { return Poly(std::vector<R>{c}, c); }
    static Poly monomial(const R& c, std::size_t k) {
        std::vector<R> v(k + 1, c.zero_like());
        v[k] = c;
        return Poly(std::move(v), c);
    }
    /// The variable itself.
    static Poly var(const R& zero) { return monomial(zero.one_like(), 1); }

    const R& zero_coeff() const noexcept { return zero_; }
    const std::vector<R>& coeffs() const noexcept { return c_; }
    std::size_t size() const noexcept { return c_.size(); }
    /// -1 for the zero polynomial.
    long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == zero_.one_like(); }
    bool is_constant() const noexcept { return c_.size() <= 1; }
    const R& lc() const {
        if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
        return c_.back();
    }
    R coeff(std::size_t i) const { return i < c_.size() ? c_[i] : zero_; }
    const R& operator[](std::size_t i) const { return c_[i]; }

    Poly zero_like() const { return Poly(zero_); }
    Poly one_like() const { return constant(zero_.one_like()); }

    void set_coeff(std::size_t i, const R& v) {
        if (i >= c_.size()) {
            if (v.is_zero()) return;
            c_.resize(i + 1, zero_);
        }
        c_[i] = v;
        trim();
    }

    Poly operator+(const Poly& o) const {
        std::vector<R> r(std::max(c_.size(), o.c_.size()), zero_);
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
        for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] = r[i] + o.c_[i];
        return Poly(std::move(r), zero_);
    }
    Poly operator-(const Poly& o) const {
        std::vector<R> r(std::max(c_.size(), o.c_.size()), zero_);
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
        for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] = r[i] - o.c_[i];
        return Poly(std::move(r), zero_);
    }
    Poly operator-() const {
        std::vector<R> r;
        r.reserve(c_.size());
        for (const auto& a : c_) r.push_back(-a);
        return Poly(std::move(r), zero_);
    }
    Poly operator*(const Poly& o) const {
        if (c_.empty() || o.c_.empty()) return Poly(zero_);
        std::vector<R> r(c_.size() + o.c_.size() - 1, zero_);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j) {
                if (o.c_[j].is_zero()) continue;
                r[i + j] = r[i + j] + c_[i] * o.c_[j];
            }
        }
        return Poly(std::move(r), zero_);
    }
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly scale(const R& s) const {
        std::vector<R> r;
        r.reserve(c_.size());
        for (const auto& a : c_) r.push_back(a * s);
        return Poly(std::move(r), zero_);
    }
    /// Multiply by var^k.
    Poly shift(std::size_t k) const {
        if (c_.empty()) return *this;
        std::vector<R> r(k, zero_);
        r.insert(r.end(), c_.begin(), c_.end());
        return Poly(std::move(r), zero_);
    }
    /// Coefficients of index >= k, shifted down.
    Poly shift_down(std::size_t k) const {
        if (k >= c_.size()) return Poly(zero_);
        return Poly(std::vector<R>(c_.begin() + static_cast<long>(k), c_.end()), zero_);
    }
    /// Terms of index < k.
    Poly truncate(std::size_t k) const {
        if (k >= c_.size()) return *this;
        return Poly(std::vector<R>(c_.begin(), c_.begin() + static_cast<long>(k)), zero_);
    }

    /// Quotient and remainder; the leading coefficient of the divisor must
    /// divide every leading coefficient encountered.
    std::pair<Poly, Poly> divmod(const Poly& d) const {
        if (d.is_zero()) throw std::domain_error("polynomial division by zero");
        Poly rem = *this;
        if (rem.degree() < d.degree()) return {Poly(zero_), rem};
        std::vector<R> q(static_cast<std::size_t>(rem.degree() - d.degree() + 1), zero_);
        const long dd = d.degree();
        while (!rem.is_zero() && rem.degree() >= dd) {
            auto c = exact_quotient(rem.lc(), d.lc());
            if (!c) throw std::domain_error("leading coefficient not divisible");
            const auto k = static_cast<std::size_t>(rem.degree() - dd);
            q[k] = *c;
            for (long i = 0; i <= dd; ++i)
                rem.c_[k + static_cast<std::size_t>(i)] =
                    rem.c_[k + static_cast<std::size_t>(i)] - *c * d.c_[static_cast<std::size_t>(i)];
            rem.trim();
        }
        return {Poly(std::move(q), zero_), rem};
    }
    Poly operator/(const Poly& d) const { return divmod(d).first; }
    Poly operator%(const Poly& d) const { return divmod(d).second; }

    /// Exact division; nullopt when d does not divide *this.
    std::optional<Poly> divide_exact(const Poly& d) const {
        if (d.is_zero()) return std::nullopt;
        if (is_zero()) return Poly(zero_);
        if (degree() < d.degree()) return std::nullopt;
        Poly rem = *this;
        std::vector<R> q(static_cast<std::size_t>(rem.degree() - d.degree() + 1), zero_);
        const long dd = d.degree();
        while (!rem.is_zero()) {
            if (rem.degree() < dd) return std::nullopt;
            auto c = exact_quotient(rem.lc(), d.lc());
            if (!c) return std::nullopt;
            const auto k = static_cast<std::size_t>(rem.degree() - dd);
            q[k] = *c;
            for (long i = 0; i <= dd; ++i)
                rem.c_[k + static_cast<std::size_t>(i)] =
                    rem.c_[k + static_cast<std::size_t>(i)] - *c * d.c_[static_cast<std::size_t>(i)];
            rem.trim();
        }
        return Poly(std::move(q), zero_);
    }

    R eval(const R& x) const {
        R acc = zero_;
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly(zero_);
        std::vector<R> r(c_.size() - 1, zero_);
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = int_times(i, c_[i]);
        return Poly(std::move(r), zero_);
    }

    template <class F>
    auto map(F&& f) const {
        using S = std::decay_t<decltype(f(zero_))>;
        std::vector<S> r;
        r.reserve(c_.size());
        for (const auto& a : c_) r.push_back(f(a));
        return Poly<S>(std::move(r), f(zero_));
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

private:
    static R int_times(std::size_t k, const R& a) {
        R acc = a.zero_like();
        R base = a;
        while (k) {
            if (k & 1) acc = acc + base;
            base = base + base;
            k >>= 1;
        }
        return acc;
    }
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<R> c_;
    R zero_{};
};

template <class R>
std::optional<Poly<R>> exact_quotient(const Poly<R>& a, const Poly<R>& b) {
    return a.divide_exact(b);
}

using TPoly = Poly<Gf>;

inline TPoly tpoly(const FieldCtx& ctx, std::initializer_list<std::int64_t> coeffs) {
    std::vector<Gf> c;
    for (auto v : coeffs) c.push_back(ctx.from_int(v));
    return TPoly(std::move(c), ctx.zero());
}

inline TPoly t_var(const FieldCtx& ctx) { return TPoly::var(ctx.zero()); }

template <class R>
Poly<R> pow(const Poly<R>& a, std::uint64_t k) {
    Poly<R> r = a.one_like();
    Poly<R> b = a;
    while (k) {
        if (k & 1) r = r * b;
        k >>= 1;
        if (k) b = b * b;
    }
    return r;
}

/// Scale so the leading coefficient is one (coefficients in a field).
template <class R>
Poly<R> monic(const Poly<R>& a) {
    if (a.is_zero()) return a;
    return a.scale(a.lc().inv());
}

/// Monic gcd over a field.
template <class R>
Poly<R> gcd(Poly<R> a, Poly<R> b) {
    while (!b.is_zero()) {
        Poly<R> r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

template <class R>
struct XgcdResult {
    Poly<R> g, s, t;  // g = s*a + t*b, g monic
};

template <class R>
XgcdResult<R> xgcd(const Poly<R>& a, const Poly<R>& b) {
    Poly<R> r0 = a, r1 = b;
    Poly<R> s0 = a.one_like(), s1 = a.zero_like();
    Poly<R> t0 = a.zero_like(), t1 = a.one_like();
    while (!r1.is_zero()) {
        auto [q, r] = r0.divmod(r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly<R> s2 = s0 - q * s1, t2 = t0 - q * t1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    const R li = r0.lc().inv();
    return {r0.scale(li), s0.scale(li), t0.scale(li)};
}

/// Inverse of a modulo m (a, m coprime).
template <class R>
Poly<R> inverse_mod(const Poly<R>& a, const Poly<R>& m) {
    auto x = xgcd(a % m, m);
    if (x.g.degree() != 0) throw std::domain_error("not invertible modulo polynomial");
    return x.s % m;
}

template <class R>
Poly<R> mulmod(const Poly<R>& a, const Poly<R>& b, const Poly<R>& m) {
    return (a * b) % m;
}

template <class R>
Poly<R> powmod(Poly<R> base, std::uint64_t k, const Poly<R>& m) {
    Poly<R> r = base.one_like() % m;
    base = base % m;
    while (k) {
        if (k & 1) r = mulmod(r, base, m);
        k >>= 1;
        if (k) base = mulmod(base, base, m);
    }
    return r;
}

/// Multiplicity of the nonconstant factor v in a (a nonzero).
template <class R>
std::uint32_t valuation(Poly<R> a, const Poly<R>& v) {
    if (a.is_zero()) throw std::domain_error("valuation of zero");
    std::uint32_t k = 0;
    while (true) {
        auto q = a.divide_exact(v);
        if (!q) return k;
        a = std::move(*q);
        ++k;
    }
}

// sigma on coefficients.
inline TPoly sigma(const TPoly& a) {
    return a.map([](const Gf& x) { return sigma(x); });
}

template <class R>
Poly<R> sigma(const Poly<R>& a) {
    return a.map([](const R& x) { return sigma(x); });
}

inline bool is_base_field(const TPoly& a) {
    for (const auto& c : a.coeffs())
        if (!is_base_field(c)) return false;
    return true;
}

// ---- printing ------------------------------------------------------------

inline std::string coeff_string(const Gf& c) {
    const auto& ctx = c.ctx();
    if (c.packed() < ctx.p() && ctx.p() > 2 && c.packed() > ctx.p() / 2)
        return "-" + std::to_string(ctx.p() - c.packed());
    return to_string(c);
}

template <class R>
std::string to_string(const Poly<R>& a, std::string_view var = "t");

template <class R>
std::string coeff_string(const Poly<R>& c) {
    return to_string(c, "t");
}

namespace detail {
inline bool is_compound(const std::string& s) {
    for (std::size_t i = 1; i < s.size(); ++i)
        if (s[i] == '+' || s[i] == '-') return true;
    return false;
}
}  // namespace detail

template <class R>
std::string to_string(const Poly<R>& a, std::string_view var) {
    if (a.is_zero()) return "0";
    std::string out;
    for (std::size_t i = a.size(); i-- > 0;) {
        const R& c = a[i];
        if (c.is_zero()) continue;
        std::string cs = coeff_string(c);
        bool neg = false;
        if (!detail::is_compound(cs) && cs.size() > 1 && cs[0] == '-') {
            neg = true;
            cs = cs.substr(1);
        }
        if (detail::is_compound(cs) && i > 0) cs = "(" + cs + ")";
        std::string mono;
        if (i > 0) {
            mono = std::string(var) + (i > 1 ? "^" + std::to_string(i) : "");
            if (cs == "1")
                cs = mono;
            else
                cs += "*" + mono;
        }
        if (out.empty())
            out = (neg ? "-" : "") + cs;
        else
            out += (neg ? " - " : " + ") + cs;
    }
    return out;
}

}  // namespace motivix
