#pragma once

// Finite fields F_p ⊂ F_q ⊂ L = F_{q^e}, presented as a single extension of F_p.
//
// An element is stored as its packed coefficient vector: the value
// sum c_i p^i for the ascending F_p-coordinates c_i with respect to the
// generator g (the class of x modulo the defining polynomial). Multiplication
// goes through discrete-log tables built once per context.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "motivix/error.hpp"

namespace motivix {

inline constexpr std::uint64_t kMaxFieldOrder = std::uint64_t{1} << 20;

namespace detail {

using FpPoly = std::vector<std::uint32_t>;

inline void fp_trim(FpPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint32_t fp_pow(std::uint64_t a, std::uint64_t k, std::uint32_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (k) {
        if (k & 1) r = r * a % p;
        a = a * a % p;
        k >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}

inline std::uint32_t fp_inv(std::uint32_t a, std::uint32_t p) { return fp_pow(a, p - 2, p); }

inline FpPoly fp_mod(FpPoly a, const FpPoly& m, std::uint32_t p) {
    fp_trim(a);
    const std::size_t dm = m.size() - 1;
    const std::uint32_t lead_inv = fp_inv(m.back(), p);
    while (a.size() > dm) {
        const std::size_t shift = a.size() - 1 - dm;
        const std::uint64_t c = std::uint64_t{a.back()} * lead_inv % p;
        for (std::size_t i = 0; i <= dm; ++i) {
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - c * m[i] % p) % p);
        }
        fp_trim(a);
    }
    return a;
}

inline FpPoly fp_mul(const FpPoly& a, const FpPoly& b, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    FpPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t{a[i]} * b[j]) % p);
        }
    }
    fp_trim(r);
    return r;
}

inline FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m, std::uint32_t p) {
    return fp_mod(fp_mul(a, b, p), m, p);
}

inline FpPoly fp_powmod(FpPoly base, std::uint64_t k, const FpPoly& m, std::uint32_t p) {
    FpPoly r{1};
    r = fp_mod(r, m, p);
    base = fp_mod(std::move(base), m, p);
    while (k) {
        if (k & 1) r = fp_mulmod(r, base, m, p);
        base = fp_mulmod(base, base, m, p);
        k >>= 1;
    }
    return r;
}

inline FpPoly fp_sub(FpPoly a, const FpPoly& b, std::uint32_t p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
    fp_trim(a);
    return a;
}

inline FpPoly fp_gcd(FpPoly a, FpPoly b, std::uint32_t p) {
    fp_trim(a);
    fp_trim(b);
    while (!b.empty()) {
        FpPoly r = fp_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        const std::uint64_t li = fp_inv(a.back(), p);
        for (auto& c : a) c = static_cast<std::uint32_t>(c * li % p);
    }
    return a;
}

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// x^(p^k) mod m by k successive p-th powers.
inline FpPoly fp_frobenius_x(std::uint32_t k, const FpPoly& m, std::uint32_t p) {
    FpPoly h = fp_mod(FpPoly{0, 1}, m, p);
    for (std::uint32_t i = 0; i < k; ++i) h = fp_powmod(h, p, m, p);
    return h;
}

/// Irreducibility over F_p: x^(p^N) = x mod m and gcd(m, x^(p^k) - x) = 1 for
/// every proper divisor k of N = deg m.
inline bool fp_is_irreducible(const FpPoly& m, std::uint32_t p) {
    if (m.size() < 2) return false;
    const auto deg = static_cast<std::uint32_t>(m.size() - 1);
    const FpPoly x = fp_mod(FpPoly{0, 1}, m, p);
    if (fp_sub(fp_frobenius_x(deg, m, p), x, p) != FpPoly{}) return false;
    for (std::uint32_t k = 1; k < deg; ++k) {
        if (deg % k) continue;
        const FpPoly g = fp_gcd(m, fp_sub(fp_frobenius_x(k, m, p), x, p), p);
        if (g.size() > 1) return false;
    }
    return true;
}

/// Lexicographically first monic irreducible of the given degree, ordering the
/// lower coefficients as a base-p number with the constant term least significant.
inline FpPoly fp_find_irreducible(std::uint32_t p, std::uint32_t degree) {
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < degree; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
        FpPoly m(degree + 1, 0);
        m[degree] = 1;
        std::uint64_t c = code;
        for (std::uint32_t i = 0; i < degree; ++i) {
            m[i] = static_cast<std::uint32_t>(c % p);
            c /= p;
        }
        if (fp_is_irreducible(m, p)) return m;
    }
    throw Error(Errc::NotIrreducible, "no irreducible polynomial found");
}

}  // namespace detail

class Gf;

/// Immutable description of L = F_{p^{n e}} with q = p^n. Contexts are interned:
/// make() returns a reference valid for the lifetime of the program, so
/// elements can carry a plain pointer to their context.
class FieldCtx {
public:
    static const FieldCtx& make(std::uint32_t p, std::uint32_t n, std::uint32_t e,
                                std::vector<std::uint32_t> modulus);

    /// Same as make() with the first irreducible modulus of degree n*e.
    static const FieldCtx& make_default(std::uint32_t p, std::uint32_t n, std::uint32_t e) {
        if (!detail::is_prime(p)) throw Error(Errc::NotPrime, std::to_string(p) + " is not prime");
        return make(p, n, e, detail::fp_find_irreducible(p, n * e));
    }

    FieldCtx(const FieldCtx&) = delete;
    FieldCtx& operator=(const FieldCtx&) = delete;

    std::uint32_t p() const noexcept { return p_; }
    std::uint32_t n() const noexcept { return n_; }
    std::uint32_t e() const noexcept { return e_; }
    /// [L : F_p]
    std::uint32_t degree() const noexcept { return n_ * e_; }
    /// #L
    std::uint64_t order() const noexcept { return s_; }
    /// #F_q
    std::uint64_t q() const noexcept { return q_; }
    const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }

    Gf zero() const;
    Gf one() const;
    Gf generator() const;
    Gf from_int(std::int64_t k) const;
    Gf from_packed(std::uint32_t v) const;
    /// Ascending F_p-coordinates; shorter vectors are zero-padded.
    Gf from_coeffs(std::span<const std::int64_t> c) const;
    /// Elements of F_q, sorted by packed value.
    const std::vector<Gf>& base_field() const noexcept { return base_field_; }
    /// A generator of the cyclic group L^*.
    Gf primitive() const;

    // Packed-value arithmetic.
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept {
        if (p_ == 2) return a ^ b;
        if (a == 0) return b;
        if (b == 0) return a;
        // Zech logarithm: a + b = a * (1 + b/a).
        std::uint64_t k = std::uint64_t{log_[b]} + (s_ - 1) - log_[a];
        if (k >= s_ - 1) k -= s_ - 1;
        const std::uint32_t z = zech_[k];
        if (z == kNoLog) return 0;
        std::uint64_t l = std::uint64_t{log_[a]} + z;
        if (l >= s_ - 1) l -= s_ - 1;
        return exp_[l];
    }
    std::uint32_t neg(std::uint32_t a) const noexcept {
        if (p_ == 2) return a;
        return mul(a, p_ - 1);
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const noexcept { return add(a, neg(b)); }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept {
        if (a == 0 || b == 0) return 0;
        std::uint64_t k = std::uint64_t{log_[a]} + log_[b];
        if (k >= s_ - 1) k -= s_ - 1;
        return exp_[k];
    }
    std::uint32_t inv(std::uint32_t a) const {
        if (a == 0) throw std::domain_error("inverse of zero in finite field");
        const std::uint32_t l = log_[a];
        return exp_[l == 0 ? 0 : (s_ - 1) - l];
    }
    std::uint32_t pow(std::uint32_t a, std::uint64_t k) const noexcept {
        if (k == 0) return 1;
        if (a == 0) return 0;
        const std::uint64_t l = (std::uint64_t{log_[a]} * (k % (s_ - 1))) % (s_ - 1);
        return exp_[l];
    }

    std::string describe() const {
        std::ostringstream os;
        os << "F_" << s_ << " (p=" << p_ << ", n=" << n_ << ", e=" << e_ << ")";
        return os.str();
    }

private:
    FieldCtx(std::uint32_t p, std::uint32_t n, std::uint32_t e, std::vector<std::uint32_t> modulus);
    void build_tables();
    void build_base_field();

    std::uint32_t p_, n_, e_, deg_;
    std::uint64_t s_, q_;
    std::vector<std::uint32_t> modulus_;
    std::vector<std::uint32_t> ppow_;
    static constexpr std::uint32_t kNoLog = 0xffffffffu;
    std::uint32_t add_digits(std::uint32_t a, std::uint32_t b) const noexcept {
        std::uint32_t r = 0;
        for (std::uint32_t i = 0; i < deg_; ++i) {
            r += ((a % p_ + b % p_) % p_) * ppow_[i];
            a /= p_;
            b /= p_;
        }
        return r;
    }

    std::vector<std::uint32_t> exp_, log_, zech_;
    std::uint32_t primitive_ = 1;
    std::vector<Gf> base_field_;
};

/// Element of L. Cheap to copy; carries a pointer to its interned context.
class Gf {
public:
    Gf() = default;
    Gf(const FieldCtx& ctx, std::uint32_t packed) : ctx_(&ctx), v_(packed) {}

    const FieldCtx& ctx() const noexcept { return *ctx_; }
    const FieldCtx* ctx_ptr() const noexcept { return ctx_; }
    std::uint32_t packed() const noexcept { return v_; }

    bool is_zero() const noexcept { return v_ == 0; }
    bool is_one() const noexcept { return v_ == 1; }
    Gf zero_like() const noexcept { return Gf(*ctx_, 0); }
    Gf one_like() const noexcept { return Gf(*ctx_, 1); }

    Gf operator+(const Gf& o) const noexcept { return Gf(*ctx_, ctx_->add(v_, o.v_)); }
    Gf operator-(const Gf& o) const noexcept { return Gf(*ctx_, ctx_->sub(v_, o.v_)); }
    Gf operator-() const noexcept { return Gf(*ctx_, ctx_->neg(v_)); }
    Gf operator*(const Gf& o) const noexcept { return Gf(*ctx_, ctx_->mul(v_, o.v_)); }
    Gf operator/(const Gf& o) const { return *this * o.inv(); }
    Gf& operator+=(const Gf& o) noexcept { return *this = *this + o; }
    Gf& operator-=(const Gf& o) noexcept { return *this = *this - o; }
    Gf& operator*=(const Gf& o) noexcept { return *this = *this * o; }

    Gf inv() const { return Gf(*ctx_, ctx_->inv(v_)); }
    Gf pow(std::uint64_t k) const noexcept { return Gf(*ctx_, ctx_->pow(v_, k)); }

    friend bool operator==(const Gf& a, const Gf& b) noexcept {
        return a.v_ == b.v_ && a.ctx_ == b.ctx_;
    }
    friend bool operator!=(const Gf& a, const Gf& b) noexcept { return !(a == b); }
    friend bool operator<(const Gf& a, const Gf& b) noexcept { return a.v_ < b.v_; }

    /// Ascending F_p-coordinates, always of length [L:F_p].
    std::vector<std::uint32_t> coeffs() const {
        std::vector<std::uint32_t> c(ctx_->degree());
        std::uint32_t v = v_;
        for (auto& d : c) {
            d = v % ctx_->p();
            v /= ctx_->p();
        }
        return c;
    }

    // Finite-field model used by the generic factorization routines.
    std::uint64_t field_order() const noexcept { return ctx_->order(); }
    std::uint32_t characteristic() const noexcept { return ctx_->p(); }
    template <class Rng>
    Gf random_like(Rng& rng) const {
        return Gf(*ctx_, static_cast<std::uint32_t>(rng() % ctx_->order()));
    }
    /// Unique p-th root (x^{#L/p}).
    Gf pth_root() const noexcept { return pow(ctx_->order() / ctx_->p()); }

private:
    const FieldCtx* ctx_ = nullptr;
    std::uint32_t v_ = 0;
};

/// The q-power Frobenius x -> x^q.
inline Gf sigma(const Gf& x) noexcept { return x.pow(x.ctx().q()); }

inline Gf sigma_pow(const Gf& x, std::uint32_t k) noexcept {
    Gf r = x;
    for (std::uint32_t i = 0; i < k % x.ctx().e(); ++i) r = sigma(r);
    return r;
}

inline bool is_base_field(const Gf& x) noexcept { return sigma(x) == x; }

inline std::string to_string(const Gf& x) {
    const auto& ctx = x.ctx();
    if (ctx.degree() == 1) {
        return std::to_string(x.packed());
    }
    const auto c = x.coeffs();
    std::string out;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (!c[i]) continue;
        std::string term;
        if (i == 0) {
            term = std::to_string(c[i]);
        } else {
            term = (c[i] == 1 ? std::string() : std::to_string(c[i]) + "*") + "g" +
                   (i > 1 ? "^" + std::to_string(i) : std::string());
        }
        out += (out.empty() ? "" : "+") + term;
    }
    if (out.empty()) return "0";
    return out.find('+') == std::string::npos ? out : "(" + out + ")";
}

// ---------------------------------------------------------------------------

inline FieldCtx::FieldCtx(std::uint32_t p, std::uint32_t n, std::uint32_t e,
                          std::vector<std::uint32_t> modulus)
    : p_(p), n_(n), e_(e), deg_(n * e), modulus_(std::move(modulus)) {
    s_ = 1;
    ppow_.resize(deg_);
    for (std::uint32_t i = 0; i < deg_; ++i) {
        ppow_[i] = static_cast<std::uint32_t>(s_);
        s_ *= p_;
    }
    q_ = 1;
    for (std::uint32_t i = 0; i < n_; ++i) q_ *= p_;
    build_tables();
    build_base_field();
}

inline void FieldCtx::build_tables() {
    auto unpack = [&](std::uint64_t v) {
        detail::FpPoly c(deg_, 0);
        for (auto& d : c) {
            d = static_cast<std::uint32_t>(v % p_);
            v /= p_;
        }
        detail::fp_trim(c);
        return c;
    };
    auto pack = [&](const detail::FpPoly& c) {
        std::uint32_t v = 0;
        for (std::size_t i = 0; i < c.size(); ++i) v += c[i] * ppow_[i];
        return v;
    };
    const std::uint64_t group = s_ - 1;
    const auto primes = detail::prime_factors(group);
    std::uint64_t cand = 1;
    if (group > 1) {
        for (cand = 2; cand < s_; ++cand) {
            const auto c = unpack(cand);
            bool ok = true;
            for (auto l : primes) {
                if (detail::fp_powmod(c, group / l, modulus_, p_) == detail::FpPoly{1}) {
                    ok = false;
                    break;
                }
            }
            if (ok) break;
        }
    }
    primitive_ = static_cast<std::uint32_t>(cand);
    exp_.assign(group, 0);
    log_.assign(s_, 0);
    detail::FpPoly cur{1};
    const auto gen = unpack(cand);
    for (std::uint64_t k = 0; k < group; ++k) {
        const std::uint32_t v = pack(cur);
        exp_[k] = v;
        log_[v] = static_cast<std::uint32_t>(k);
        cur = detail::fp_mulmod(cur, gen, modulus_, p_);
    }
    zech_.assign(group, kNoLog);
    for (std::uint64_t k = 0; k < group; ++k) {
        const std::uint32_t v = add_digits(1, exp_[k]);
        if (v) zech_[k] = log_[v];
    }
}

inline Gf FieldCtx::zero() const { return Gf(*this, 0); }
inline Gf FieldCtx::one() const { return Gf(*this, 1); }
inline Gf FieldCtx::primitive() const { return Gf(*this, primitive_); }

inline Gf FieldCtx::generator() const {
    if (deg_ == 1) return Gf(*this, (p_ - modulus_[0]) % p_);
    return Gf(*this, p_);
}

inline Gf FieldCtx::from_int(std::int64_t k) const {
    const std::int64_t r = ((k % static_cast<std::int64_t>(p_)) + p_) % p_;
    return Gf(*this, static_cast<std::uint32_t>(r));
}

inline Gf FieldCtx::from_packed(std::uint32_t v) const {
    if (v >= s_) throw std::out_of_range("packed field element out of range");
    return Gf(*this, v);
}

inline Gf FieldCtx::from_coeffs(std::span<const std::int64_t> c) const {
    if (c.size() > deg_) throw std::invalid_argument("too many coefficients for field element");
    std::uint32_t v = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const std::int64_t r = ((c[i] % static_cast<std::int64_t>(p_)) + p_) % p_;
        v += static_cast<std::uint32_t>(r) * ppow_[i];
    }
    return Gf(*this, v);
}

inline void FieldCtx::build_base_field() {
    // Elements of F_q: zero and the powers of primitive^((s-1)/(q-1)).
    base_field_.push_back(zero());
    const Gf z = primitive().pow((s_ - 1) / (q_ - 1));
    Gf cur = one();
    for (std::uint64_t i = 0; i + 1 < q_; ++i) {
        base_field_.push_back(cur);
        cur *= z;
    }
    std::sort(base_field_.begin(), base_field_.end());
}

inline const FieldCtx& FieldCtx::make(std::uint32_t p, std::uint32_t n, std::uint32_t e,
                                      std::vector<std::uint32_t> modulus) {
    if (!detail::is_prime(p)) throw Error(Errc::NotPrime, std::to_string(p) + " is not prime");
    if (n == 0 || e == 0) throw std::invalid_argument("field degrees must be positive");
    std::uint64_t s = 1;
    for (std::uint32_t i = 0; i < n * e; ++i) {
        s *= p;
        if (s > kMaxFieldOrder)
            throw Error(Errc::FieldTooLarge, "p^(n*e) exceeds " + std::to_string(kMaxFieldOrder));
    }
    for (auto& c : modulus) {
        if (c >= p) throw std::invalid_argument("modulus coefficient out of range");
    }
    if (modulus.size() != n * e + 1 || modulus.back() != 1)
        throw std::invalid_argument("modulus must be monic of degree n*e");
    if (!detail::fp_is_irreducible(modulus, p))
        throw Error(Errc::NotIrreducible, "field modulus is reducible over F_" + std::to_string(p));

    using Key = std::tuple<std::uint32_t, std::uint32_t, std::uint32_t, std::vector<std::uint32_t>>;
    static std::mutex mu;
    static std::map<Key, std::unique_ptr<FieldCtx>> registry;
    std::lock_guard<std::mutex> lock(mu);
    Key key{p, n, e, modulus};
    auto it = registry.find(key);
    if (it == registry.end()) {
        std::unique_ptr<FieldCtx> ctx(new FieldCtx(p, n, e, std::move(modulus)));
        it = registry.emplace(std::move(key), std::move(ctx)).first;
    }
    return *it->second;
}

/// The F_q-basis 1, g, ..., g^{e-1} of L for an element g generating L over
/// F_q, with coordinates from the inverse of the matrix (sigma^j(g)^k).
class FqBasis {
public:
    explicit FqBasis(const Gf& g) : e_(g.ctx().e()) {
        const Gf zero = g.zero_like(), one = g.one_like();
        for (std::uint32_t k = 0; k < e_; ++k) basis_.push_back(g.pow(k));
        std::vector<Gf> v(e_ * e_), inv(e_ * e_, zero);
        Gf conj = g;
        for (std::uint32_t j = 0; j < e_; ++j) {
            for (std::uint32_t k = 0; k < e_; ++k) v[j * e_ + k] = conj.pow(k);
            conj = sigma(conj);
        }
        for (std::uint32_t i = 0; i < e_; ++i) inv[i * e_ + i] = one;
        for (std::uint32_t col = 0; col < e_; ++col) {
            std::uint32_t piv = col;
            while (piv < e_ && v[piv * e_ + col].is_zero()) ++piv;
            if (piv == e_) throw std::invalid_argument("element does not generate L over F_q");
            for (std::uint32_t k = 0; k < e_; ++k) {
                std::swap(v[piv * e_ + k], v[col * e_ + k]);
                std::swap(inv[piv * e_ + k], inv[col * e_ + k]);
            }
            const Gf li = v[col * e_ + col].inv();
            for (std::uint32_t k = 0; k < e_; ++k) {
                v[col * e_ + k] *= li;
                inv[col * e_ + k] *= li;
            }
            for (std::uint32_t r = 0; r < e_; ++r) {
                if (r == col || v[r * e_ + col].is_zero()) continue;
                const Gf f = v[r * e_ + col];
                for (std::uint32_t k = 0; k < e_; ++k) {
                    v[r * e_ + k] -= f * v[col * e_ + k];
                    inv[r * e_ + k] -= f * inv[col * e_ + k];
                }
            }
        }
        inv_ = std::move(inv);
    }

    std::uint32_t size() const noexcept { return e_; }
    const Gf& operator[](std::uint32_t k) const { return basis_[k]; }

    /// Coordinates c_k in F_q with x = sum c_k g^k.
    std::vector<Gf> coords(const Gf& x) const {
        std::vector<Gf> conj(e_);
        Gf c = x;
        for (std::uint32_t j = 0; j < e_; ++j) {
            conj[j] = c;
            c = sigma(c);
        }
        std::vector<Gf> out(e_, x.zero_like());
        for (std::uint32_t k = 0; k < e_; ++k)
            for (std::uint32_t j = 0; j < e_; ++j) out[k] += inv_[k * e_ + j] * conj[j];
        return out;
    }

private:
    std::uint32_t e_;
    std::vector<Gf> basis_, inv_;
};

/// Monic minimal polynomial of x over F_q, ascending coefficients: the product
/// of (T - y) over the sigma-orbit of x.
inline std::vector<Gf> frobenius_orbit_minpoly(const Gf& x) {
    std::vector<Gf> orbit{x};
    for (Gf y = sigma(x); y != x; y = sigma(y)) orbit.push_back(y);
    std::vector<Gf> poly{x.one_like()};
    for (const Gf& root : orbit) {
        std::vector<Gf> next(poly.size() + 1, x.zero_like());
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i + 1] += poly[i];
            next[i] -= poly[i] * root;
        }
        poly = std::move(next);
    }
    return poly;
}

}  // namespace motivix
