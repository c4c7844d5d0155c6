#pragma once

// Fractions of polynomials over a field, kept reduced with monic denominator.

#include <optional>
#include <string>

#include "motivix/poly.hpp"

namespace motivix {

template <class K>
class Frac {
public:
    using P = Poly<K>;

    Frac() = default;
    explicit Frac(P num) : num_(std::move(num)), den_(num_.one_like()) {}
    Frac(P num, P den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

    const P& num() const noexcept { return num_; }
    const P& den() const noexcept { return den_; }

    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }
    Frac zero_like() const { return Frac(num_.zero_like()); }
    Frac one_like() const { return Frac(num_.one_like()); }

    Frac operator+(const Frac& o) const {
        if (den_ == o.den_) return Frac(num_ + o.num_, den_);
        return Frac(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    Frac operator-(const Frac& o) const {
        if (den_ == o.den_) return Frac(num_ - o.num_, den_);
        return Frac(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }
    Frac operator-() const { return Frac(-num_, den_, raw_tag{}); }
    Frac operator*(const Frac& o) const {
        if (is_zero() || o.is_zero()) return zero_like();
        if (is_polynomial() && o.is_polynomial()) return Frac(num_ * o.num_);
        return Frac(num_ * o.num_, den_ * o.den_);
    }
    Frac inv() const {
        if (is_zero()) throw std::domain_error("inverse of zero rational function");
        return Frac(den_, num_);
    }
    Frac operator/(const Frac& o) const { return *this * o.inv(); }
    Frac& operator+=(const Frac& o) { return *this = *this + o; }
    Frac& operator-=(const Frac& o) { return *this = *this - o; }
    Frac& operator*=(const Frac& o) { return *this = *this * o; }

    friend bool operator==(const Frac& a, const Frac& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const Frac& a, const Frac& b) { return !(a == b); }

private:
    struct raw_tag {};
    Frac(P num, P den, raw_tag) : num_(std::move(num)), den_(std::move(den)) {}

    void normalize() {
        if (den_.is_zero()) throw std::domain_error("zero denominator");
        if (num_.is_zero()) {
            den_ = den_.one_like();
            return;
        }
        if (den_.degree() > 0) {
            P g = gcd(num_, den_);
            if (g.degree() > 0) {
                num_ = num_ / g;
                den_ = den_ / g;
            }
        }
        const K li = den_.lc().inv();
        if (!(li == li.one_like())) {
            num_ = num_.scale(li);
            den_ = den_.scale(li);
        }
    }

    P num_, den_;
};

template <class K>
std::optional<Frac<K>> exact_quotient(const Frac<K>& a, const Frac<K>& b) {
    if (b.is_zero()) return std::nullopt;
    return a / b;
}

template <class K>
Frac<K> sigma(const Frac<K>& a) {
    return Frac<K>(sigma(a.num()), sigma(a.den()));
}

template <class K>
std::string coeff_string(const Frac<K>& c) {
    if (c.is_polynomial()) return to_string(c.num(), "t");
    auto wrap = [](const std::string& s) { return detail::is_compound(s) ? "(" + s + ")" : s; };
    return wrap(to_string(c.num(), "t")) + "/" + wrap(to_string(c.den(), "t"));
}

template <class K>
std::string to_string(const Frac<K>& c) {
    return coeff_string(c);
}

using RatFunc = Frac<Gf>;
using XPoly = Poly<TPoly>;
using QxPoly = Poly<RatFunc>;

inline RatFunc to_ratfunc(const TPoly& a) { return RatFunc(a); }

inline QxPoly to_qx(const XPoly& f) {
    return f.map([](const TPoly& c) { return RatFunc(c); });
}

}  // namespace motivix
