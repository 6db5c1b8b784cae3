#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "unipoly.hpp"

namespace alexmod {

// Element of R = Q[t, t^-1], stored as t^valuation * body where body is an
// ordinary polynomial with nonzero constant term. Zero has valuation 0 and
// an empty body. Units of R are exactly the elements with constant body.
class LaurentPoly {
  public:
    LaurentPoly() = default;
    explicit LaurentPoly(const Rat& c) : body_(c) {}
    LaurentPoly(long long valuation, UniPoly body) : val_(valuation), body_(std::move(body)) {
        canonicalize();
    }

    static LaurentPoly one() { return LaurentPoly(Rat(1)); }
    static LaurentPoly t() { return monomial(Rat(1), 1); }
    static LaurentPoly monomial(const Rat& c, long long e) {
        return LaurentPoly(e, UniPoly(c));
    }
    // Embeds an ordinary polynomial in t.
    static LaurentPoly from_poly(const UniPoly& p) { return LaurentPoly(0, p); }

    bool is_zero() const { return body_.is_zero(); }
    bool is_one() const { return val_ == 0 && body_.is_one(); }
    bool is_unit() const { return !body_.is_zero() && body_.is_constant(); }

    long long valuation() const { return val_; }
    const UniPoly& body() const { return body_; }
    // Highest exponent of t; valid only for nonzero elements.
    long long top_exponent() const { return val_ + static_cast<long long>(body_.deg()); }

    Rat coeff(long long e) const {
        if (body_.is_zero() || e < val_) return Rat(0);
        return body_.coeff(static_cast<std::size_t>(e - val_));
    }

    bool operator==(const LaurentPoly& o) const {
        if (body_.is_zero() || o.body_.is_zero()) return body_.is_zero() == o.body_.is_zero();
        return val_ == o.val_ && body_ == o.body_;
    }
    bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

    LaurentPoly operator-() const { return LaurentPoly(val_, -body_); }

    LaurentPoly operator+(const LaurentPoly& o) const {
        if (is_zero()) return o;
        if (o.is_zero()) return *this;
        long long v = std::min(val_, o.val_);
        UniPoly sum = body_.shifted(static_cast<std::size_t>(val_ - v)) +
                      o.body_.shifted(static_cast<std::size_t>(o.val_ - v));
        return LaurentPoly(v, std::move(sum));
    }

    LaurentPoly operator-(const LaurentPoly& o) const { return *this + (-o); }

    LaurentPoly operator*(const LaurentPoly& o) const {
        if (is_zero() || o.is_zero()) return LaurentPoly();
        return LaurentPoly(val_ + o.val_, body_ * o.body_);
    }

    LaurentPoly operator*(const Rat& s) const {
        if (alexmod::is_zero(s)) return LaurentPoly();
        return LaurentPoly(val_, body_ * s);
    }

    // The unit-normalized representative: monic with valuation 0. Every
    // nonzero element is a unit times exactly one such polynomial.
    LaurentPoly normalized() const {
        if (is_zero()) return *this;
        return LaurentPoly(0, body_.monic());
    }

    // Defined when the element has no negative powers of t.
    UniPoly as_poly() const {
        if (is_zero()) return UniPoly();
        if (val_ < 0) throw Error("Laurent element has negative powers of t");
        return body_.shifted(static_cast<std::size_t>(val_));
    }

    Rat eval(const Rat& x) const {
        if (is_zero()) return Rat(0);
        if (alexmod::is_zero(x) && val_ < 0) throw Error("evaluating t^-1 at t = 0");
        return body_.eval(x) * rat_pow(x, val_);
    }

  private:
    void canonicalize() {
        if (body_.is_zero()) {
            val_ = 0;
            return;
        }
        std::size_t drop = 0;
        while (alexmod::is_zero(body_.coeff(drop))) ++drop;
        if (drop > 0) {
            std::vector<Rat> c(body_.coeffs().begin() + static_cast<std::ptrdiff_t>(drop),
                               body_.coeffs().end());
            body_ = UniPoly(std::move(c));
            val_ += static_cast<long long>(drop);
        }
    }

    long long val_ = 0;
    UniPoly body_;
};

// b divides a in R. Powers of t are units, so this reduces to body
// divisibility over Q[t]; bodies have nonzero constant term, so no power of
// t interferes.
inline bool divides(const LaurentPoly& b, const LaurentPoly& a) {
    if (b.is_zero()) return a.is_zero();
    if (a.is_zero()) return true;
    return divides(b.body(), a.body());
}

inline LaurentPoly exact_div(const LaurentPoly& a, const LaurentPoly& b) {
    if (b.is_zero()) throw Error("division by zero in R");
    if (a.is_zero()) return LaurentPoly();
    return LaurentPoly(a.valuation() - b.valuation(), exact_div(a.body(), b.body()));
}

// a = q*b + r with r either zero or of body degree strictly below b's.
// The remainder is what survives of a after reducing by b; since powers of
// t are units, body degree is the right size measure for elimination.
inline std::pair<LaurentPoly, LaurentPoly> laurent_divmod(const LaurentPoly& a,
                                                          const LaurentPoly& b) {
    if (b.is_zero()) throw Error("division by zero in R");
    if (a.is_zero()) return {LaurentPoly(), LaurentPoly()};
    auto [q, r] = divmod(a.body(), b.body());
    return {LaurentPoly(a.valuation() - b.valuation(), std::move(q)),
            LaurentPoly(a.valuation(), std::move(r))};
}

// Monic, valuation-0 gcd; gcd(0,0) = 0.
inline LaurentPoly laurent_gcd(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero()) return b.normalized();
    if (b.is_zero()) return a.normalized();
    return LaurentPoly(0, poly_gcd(a.body(), b.body()));
}

inline LaurentPoly laurent_pow(const LaurentPoly& base, std::size_t e) {
    LaurentPoly acc = LaurentPoly::one(), b = base;
    while (e) {
        if (e & 1u) acc = acc * b;
        b = b * b;
        e >>= 1;
    }
    return acc;
}

namespace detail {

inline void skip_ws(const std::string& s, std::size_t& i) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\n' || s[i] == '\r')) ++i;
}

inline bool is_name_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
inline bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

inline BigInt parse_digits(const std::string& s, std::size_t& i, const char* what) {
    if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
        throw ParseError(i, std::string("expected ") + what);
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    return BigInt(s.substr(start, i - start));
}

// t, optionally followed by ^e with e a possibly negative integer.
inline long long parse_t_power(const std::string& s, std::size_t& i) {
    ++i;  // consume 't'
    skip_ws(s, i);
    if (i >= s.size() || s[i] != '^') return 1;
    ++i;
    skip_ws(s, i);
    bool neg = false;
    if (i < s.size() && s[i] == '-') {
        neg = true;
        ++i;
    }
    std::size_t at = i;
    BigInt e = parse_digits(s, i, "digits in exponent");
    if (e > 1000000) throw ParseError(at, "exponent out of range");
    long long v = e.convert_to<long long>();
    return neg ? -v : v;
}

}  // namespace detail

// Parses the additive grammar: signed sums of `c`, `c*t^e`, `t^e`, `t`,
// where c is an integer or p/q and e may be negative. Whitespace is free.
inline LaurentPoly parse_laurent(const std::string& s) {
    std::size_t i = 0;
    detail::skip_ws(s, i);
    if (i >= s.size()) throw ParseError(i, "empty polynomial");
    std::map<long long, Rat> acc;
    bool first = true;
    while (true) {
        int sign = 1;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            sign = (s[i] == '-') ? -1 : 1;
            ++i;
            detail::skip_ws(s, i);
        } else if (!first) {
            throw ParseError(i, "expected '+' or '-' between terms");
        }
        first = false;

        Rat c(1);
        long long e = 0;
        if (i < s.size() && s[i] == 't') {
            e = detail::parse_t_power(s, i);
        } else {
            BigInt num = detail::parse_digits(s, i, "a coefficient or 't'");
            BigInt den(1);
            detail::skip_ws(s, i);
            if (i < s.size() && s[i] == '/') {
                ++i;
                detail::skip_ws(s, i);
                std::size_t at = i;
                den = detail::parse_digits(s, i, "digits after '/'");
                if (den.is_zero()) throw ParseError(at, "zero denominator");
            }
            c = Rat(num, den);
            detail::skip_ws(s, i);
            if (i < s.size() && s[i] == '*') {
                ++i;
                detail::skip_ws(s, i);
                if (i >= s.size() || s[i] != 't') throw ParseError(i, "expected 't' after '*'");
                e = detail::parse_t_power(s, i);
            }
        }
        if (sign < 0) c = -c;
        acc[e] += c;

        detail::skip_ws(s, i);
        if (i >= s.size()) break;
        if (s[i] != '+' && s[i] != '-') throw ParseError(i, "expected '+' or '-'");
    }

    LaurentPoly result;
    for (const auto& [e, c] : acc) {
        if (!is_zero(c)) result = result + LaurentPoly::monomial(c, e);
    }
    return result;
}

// Canonical text form in the same grammar, highest exponent first, e.g.
// "t^2-2+3/2*t^-1". parse_laurent(laurent_str(p)) == p.
inline std::string laurent_str(const LaurentPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (long long e = p.top_exponent(); e >= p.valuation(); --e) {
        Rat c = p.coeff(e);
        if (is_zero(c)) continue;
        if (out.empty()) {
            if (c < 0) out += "-";
        } else {
            out += (c < 0) ? "-" : "+";
        }
        Rat a = rat_abs(c);
        if (e == 0) {
            out += rat_str(a);
        } else {
            if (!is_one(a)) out += rat_str(a) + "*";
            out += "t";
            if (e != 1) out += "^" + std::to_string(e);
        }
    }
    return out;
}

}  // namespace alexmod
