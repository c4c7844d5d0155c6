#pragma once

// Truncated Laurent series sum_{i >= val} c_i w^i in a uniformizer w, known
// modulo w^prec. Exact values use prec = kExact.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "motivix/error.hpp"
#include "motivix/poly.hpp"

namespace motivix {

template <class K>
class LaurentSeries {
public:
    static constexpr std::int64_t kExact = std::int64_t{1} << 40;

    LaurentSeries() = default;
    /// Zero known modulo w^prec.
    LaurentSeries(const K& zero, std::int64_t prec) : zero_(zero.zero_like()), val_(prec), prec_(prec) {}
    LaurentSeries(std::vector<K> coeffs, std::int64_t val, std::int64_t prec, const K& zero)
        : zero_(zero.zero_like()), c_(std::move(coeffs)), val_(val), prec_(prec) {
        normalize();
    }

    std::int64_t valuation() const noexcept { return val_; }
    std::int64_t precision() const noexcept { return prec_; }
    bool exact() const noexcept { return prec_ >= kExact; }
    /// No nonzero coefficient is known.
    bool is_zero() const noexcept { return c_.empty(); }
    const std::vector<K>& coeffs() const noexcept { return c_; }
    K coeff(std::int64_t i) const {
        if (i >= prec_) throw Error(Errc::PrecisionExhausted, "coefficient beyond known precision");
        if (i < val_ || i - val_ >= static_cast<std::int64_t>(c_.size())) return zero_;
        return c_[static_cast<std::size_t>(i - val_)];
    }
    const K& zero_elem() const noexcept { return zero_; }

    LaurentSeries truncate(std::int64_t prec) const {
        if (prec >= prec_) return *this;
        std::vector<K> c;
        for (std::int64_t i = val_; i < prec && i - val_ < static_cast<std::int64_t>(c_.size()); ++i)
            c.push_back(c_[static_cast<std::size_t>(i - val_)]);
        return LaurentSeries(std::move(c), val_, prec, zero_);
    }

    LaurentSeries operator+(const LaurentSeries& o) const { return combine(o, false); }
    LaurentSeries operator-(const LaurentSeries& o) const { return combine(o, true); }
    LaurentSeries operator-() const {
        LaurentSeries r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    LaurentSeries operator*(const LaurentSeries& o) const {
        const std::int64_t v = val_ + o.val_;
        std::int64_t prec = std::min(sat_add(val_, o.prec_), sat_add(o.val_, prec_));
        if (is_zero() || o.is_zero()) return LaurentSeries(zero_, std::min(prec, kExact));
        prec = std::min(prec, kExact);
        const std::int64_t n = std::min<std::int64_t>(prec - v, static_cast<std::int64_t>(c_.size() + o.c_.size() - 1));
        std::vector<K> r(static_cast<std::size_t>(std::max<std::int64_t>(n, 0)), zero_);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < o.c_.size() && static_cast<std::int64_t>(i + j) < n; ++j)
                r[i + j] = r[i + j] + c_[i] * o.c_[j];
        }
        return LaurentSeries(std::move(r), v, prec, zero_);
    }
    LaurentSeries scale(const K& s) const {
        LaurentSeries r = *this;
        for (auto& x : r.c_) x = x * s;
        r.normalize();
        return r;
    }
    /// Multiply by w^k.
    LaurentSeries shift(std::int64_t k) const {
        LaurentSeries r = *this;
        r.val_ += k;
        if (!exact()) r.prec_ += k;
        return r;
    }

    /// Multiplicative inverse with relative precision rel (capped by our own).
    LaurentSeries inv(std::int64_t rel) const {
        if (is_zero()) throw Error(Errc::PrecisionExhausted, "inverse of a series with no known unit term");
        const std::int64_t own = exact() ? rel : prec_ - val_;
        const std::int64_t n = std::min(rel, own);
        const K u = c_[0].inv();
        std::vector<K> r(static_cast<std::size_t>(n), zero_);
        for (std::int64_t k = 0; k < n; ++k) {
            K s = k == 0 ? zero_.one_like() : zero_;
            for (std::int64_t j = 1; j <= k && j < static_cast<std::int64_t>(c_.size()); ++j)
                s = s - c_[static_cast<std::size_t>(j)] * r[static_cast<std::size_t>(k - j)];
            r[static_cast<std::size_t>(k)] = s * u;
        }
        return LaurentSeries(std::move(r), -val_, -val_ + n, zero_);
    }

    friend bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
        return a.val_ == b.val_ && a.prec_ == b.prec_ && a.c_ == b.c_;
    }

private:
    static std::int64_t sat_add(std::int64_t a, std::int64_t b) {
        if (a >= kExact || b >= kExact) return kExact;
        return a + b;
    }

    LaurentSeries combine(const LaurentSeries& o, bool negate) const {
        const std::int64_t prec = std::min(prec_, o.prec_);
        if (is_zero()) return (negate ? -o : o).truncate(prec);
        if (o.is_zero()) return truncate(prec);
        const std::int64_t lo = std::min(val_, o.val_);
        std::int64_t hi = std::max(val_ + static_cast<std::int64_t>(c_.size()),
                                   o.val_ + static_cast<std::int64_t>(o.c_.size()));
        hi = std::min(hi, prec);
        std::vector<K> r(static_cast<std::size_t>(std::max<std::int64_t>(hi - lo, 0)), zero_);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            const std::int64_t k = val_ + static_cast<std::int64_t>(i) - lo;
            if (k < static_cast<std::int64_t>(r.size())) r[static_cast<std::size_t>(k)] = c_[i];
        }
        for (std::size_t i = 0; i < o.c_.size(); ++i) {
            const std::int64_t k = o.val_ + static_cast<std::int64_t>(i) - lo;
            if (k < static_cast<std::int64_t>(r.size()))
                r[static_cast<std::size_t>(k)] =
                    negate ? r[static_cast<std::size_t>(k)] - o.c_[i] : r[static_cast<std::size_t>(k)] + o.c_[i];
        }
        return LaurentSeries(std::move(r), std::min(lo, prec), prec, zero_);
    }

    void normalize() {
        std::size_t lead = 0;
        while (lead < c_.size() && c_[lead].is_zero()) ++lead;
        if (lead) {
            c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
            val_ += static_cast<std::int64_t>(lead);
        }
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
        if (!exact()) {
            const std::int64_t known = prec_ - val_;
            if (known <= 0) {
                c_.clear();
                val_ = prec_;
            } else if (static_cast<std::int64_t>(c_.size()) > known) {
                c_.resize(static_cast<std::size_t>(known));
                while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
            }
        }
        if (c_.empty() && val_ > prec_) val_ = prec_;
    }

    K zero_{};
    std::vector<K> c_;
    std::int64_t val_ = 0;
    std::int64_t prec_ = kExact;
};

using FqSeries = LaurentSeries<Gf>;

/// Expansion of a in F_q[t] in the uniformizer 1/t.
inline FqSeries expand_at_infinity(const TPoly& a) {
    if (a.is_zero()) return FqSeries(a.zero_coeff(), FqSeries::kExact);
    std::vector<Gf> c(a.coeffs().rbegin(), a.coeffs().rend());
    return FqSeries(std::move(c), -a.degree(), FqSeries::kExact, a.zero_coeff());
}

/// Taylor expansion of a in (t - c).
inline FqSeries expand_at_point(const TPoly& a, const Gf& c) {
    std::vector<Gf> out;
    TPoly rem = a;
    const TPoly lin = TPoly(std::vector<Gf>{-c, c.one_like()}, c);
    while (!rem.is_zero()) {
        auto [q, r] = rem.divmod(lin);
        out.push_back(r.coeff(0));
        rem = std::move(q);
    }
    return FqSeries(std::move(out), 0, FqSeries::kExact, c.zero_like());
}

template <class K>
std::string to_string(const LaurentSeries<K>& s, std::string_view w = "w") {
    std::string out;
    for (std::size_t i = 0; i < s.coeffs().size(); ++i) {
        const K& c = s.coeffs()[i];
        if (c.is_zero()) continue;
        const std::int64_t k = s.valuation() + static_cast<std::int64_t>(i);
        std::string term = coeff_string(c);
        if (k != 0) term += "*" + std::string(w) + (k != 1 ? "^" + std::to_string(k) : "");
        out += (out.empty() ? "" : " + ") + term;
    }
    if (out.empty()) out = "0";
    if (!s.exact()) out += " + O(" + std::string(w) + "^" + std::to_string(s.precision()) + ")";
    return out;
}

}  // namespace motivix
