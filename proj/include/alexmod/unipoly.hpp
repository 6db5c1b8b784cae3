#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace alexmod {

// Dense univariate polynomial over Q.
//
// Canonical form: no trailing zero coefficients, so the zero polynomial has
// an empty coefficient vector. degree() returns nullopt for it; that is the
// "minus infinity" marker, and no arithmetic is ever done on it.
class UniPoly {
  public:
    UniPoly() = default;
    explicit UniPoly(const Rat& c) {
        if (!alexmod::is_zero(c)) c_.push_back(c);
    }
    explicit UniPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

    static UniPoly one() { return UniPoly(Rat(1)); }
    static UniPoly x() { return monomial(Rat(1), 1); }
    static UniPoly monomial(const Rat& c, std::size_t e) {
        UniPoly p;
        if (!alexmod::is_zero(c)) {
            p.c_.assign(e + 1, Rat(0));
            p.c_[e] = c;
        }
        return p;
    }

    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    bool is_one() const { return c_.size() == 1 && alexmod::is_one(c_[0]); }

    std::optional<std::size_t> degree() const {
        if (c_.empty()) return std::nullopt;
        return c_.size() - 1;
    }

    // Valid only for nonzero polynomials.
    std::size_t deg() const { return c_.size() - 1; }

    Rat coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rat(0); }
    const std::vector<Rat>& coeffs() const { return c_; }

    Rat lead() const { return c_.empty() ? Rat(0) : c_.back(); }

    bool operator==(const UniPoly& o) const { return c_ == o.c_; }
    bool operator!=(const UniPoly& o) const { return !(*this == o); }

    UniPoly operator-() const {
        UniPoly r(*this);
        for (auto& c : r.c_) c = -c;
        return r;
    }

    UniPoly operator+(const UniPoly& o) const {
        std::vector<Rat> r(std::max(c_.size(), o.c_.size()), Rat(0));
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
        for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
        return UniPoly(std::move(r));
    }

    UniPoly operator-(const UniPoly& o) const { return *this + (-o); }

    UniPoly operator*(const UniPoly& o) const {
        if (is_zero() || o.is_zero()) return UniPoly();
        std::vector<Rat> r(c_.size() + o.c_.size() - 1, Rat(0));
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (alexmod::is_zero(c_[i])) continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
        }
        return UniPoly(std::move(r));
    }

    UniPoly operator*(const Rat& s) const {
        if (alexmod::is_zero(s)) return UniPoly();
        UniPoly r(*this);
        for (auto& c : r.c_) c *= s;
        return r;
    }

    UniPoly shifted(std::size_t e) const {  // multiply by x^e
        if (is_zero() || e == 0) return *this;
        UniPoly r;
        r.c_.assign(c_.size() + e, Rat(0));
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i + e] = c_[i];
        return r;
    }

    UniPoly monic() const {
        if (is_zero()) return *this;
        return *this * rat_inv(lead());
    }

    UniPoly derivative() const {
        if (c_.size() <= 1) return UniPoly();
        std::vector<Rat> r(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rat(static_cast<long>(i));
        return UniPoly(std::move(r));
    }

    Rat eval(const Rat& x) const {
        Rat acc(0);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

  private:
    void trim() {
        while (!c_.empty() && alexmod::is_zero(c_.back())) c_.pop_back();
    }

    std::vector<Rat> c_;  // c_[i] multiplies x^i
};

// Quotient and remainder with deg r < deg b. Throws on zero divisor.
inline std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) throw Error("polynomial division by zero");
    if (a.is_zero() || a.deg() < b.deg()) return {UniPoly(), a};
    std::vector<Rat> rem(a.coeffs());
    std::vector<Rat> quo(a.deg() - b.deg() + 1, Rat(0));
    const Rat lead_inv = rat_inv(b.lead());
    for (std::size_t i = rem.size(); i-- > b.deg();) {
        if (is_zero(rem[i])) continue;
        Rat f = rem[i] * lead_inv;
        quo[i - b.deg()] = f;
        for (std::size_t j = 0; j <= b.deg(); ++j) rem[i - b.deg() + j] -= f * b.coeff(j);
    }
    return {UniPoly(std::move(quo)), UniPoly(std::move(rem))};
}

inline bool divides(const UniPoly& b, const UniPoly& a) {
    if (b.is_zero()) return a.is_zero();
    return divmod(a, b).second.is_zero();
}

inline UniPoly exact_div(const UniPoly& a, const UniPoly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw Error("inexact polynomial division");
    return q;
}

// Monic gcd; gcd(0,0) = 0.
inline UniPoly poly_gcd(UniPoly a, UniPoly b) {
    while (!b.is_zero()) {
        UniPoly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

// g = gcd(a,b) together with u,v such that u*a + v*b = g.
inline std::tuple<UniPoly, UniPoly, UniPoly> poly_ext_gcd(const UniPoly& a, const UniPoly& b) {
    UniPoly r0 = a, r1 = b;
    UniPoly u0 = UniPoly::one(), u1;
    UniPoly v0, v1 = UniPoly::one();
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        UniPoly u2 = u0 - q * u1;
        u0 = std::move(u1);
        u1 = std::move(u2);
        UniPoly v2 = v0 - q * v1;
        v0 = std::move(v1);
        v1 = std::move(v2);
    }
    if (r0.is_zero()) return {r0, u0, v0};
    Rat s = rat_inv(r0.lead());
    return {r0 * s, u0 * s, v0 * s};
}

// Product of the distinct irreducible factors: p / gcd(p, p').
inline UniPoly squarefree_part(const UniPoly& p) {
    if (p.is_zero() || p.is_constant()) return p.is_zero() ? p : UniPoly::one();
    UniPoly g = poly_gcd(p, p.derivative());
    return exact_div(p, g).monic();
}

inline bool is_squarefree(const UniPoly& p) {
    if (p.is_zero()) return false;
    if (p.is_constant()) return true;
    return poly_gcd(p, p.derivative()).is_one();
}

inline UniPoly poly_mod(const UniPoly& a, const UniPoly& mod) { return divmod(a, mod).second; }

inline UniPoly mulmod(const UniPoly& a, const UniPoly& b, const UniPoly& mod) {
    return poly_mod(a * b, mod);
}

// p(q) reduced mod `mod`, by Horner on the coefficients of p.
inline UniPoly compose_mod(const UniPoly& p, const UniPoly& q, const UniPoly& mod) {
    UniPoly acc;
    if (p.is_zero()) return acc;
    for (std::size_t i = p.deg() + 1; i-- > 0;) {
        acc = mulmod(acc, q, mod) + UniPoly(p.coeff(i));
    }
    return poly_mod(acc, mod);
}

// Inverse of a mod `mod`; requires gcd(a, mod) = 1.
inline UniPoly invert_mod(const UniPoly& a, const UniPoly& mod) {
    auto [g, u, v] = poly_ext_gcd(poly_mod(a, mod), mod);
    (void)v;
    if (!g.is_one()) throw Error("element not invertible in the quotient ring");
    return poly_mod(u, mod);
}

inline UniPoly poly_pow(const UniPoly& base, std::size_t e) {
    UniPoly acc = UniPoly::one(), b = base;
    while (e) {
        if (e & 1u) acc = acc * b;
        b = b * b;
        e >>= 1;
    }
    return acc;
}

inline std::size_t euler_phi(std::size_t d) {
    std::size_t result = d;
    for (std::size_t p = 2; p * p <= d; ++p) {
        if (d % p == 0) {
            while (d % p == 0) d /= p;
            result -= result / p;
        }
    }
    if (d > 1) result -= result / d;
    return result;
}

// Phi_d, computed as (x^d - 1) / prod of Phi_e over proper divisors e of d.
inline UniPoly cyclotomic(std::size_t d) {
    std::vector<Rat> xd(d + 1, Rat(0));
    xd[0] = Rat(-1);
    xd[d] = Rat(1);
    UniPoly num(std::move(xd));
    for (std::size_t e = 1; e < d; ++e) {
        if (d % e == 0) num = exact_div(num, cyclotomic(e));
    }
    return num;
}

}  // namespace alexmod
