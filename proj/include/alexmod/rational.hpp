#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cstdint>
#include <string>

#include "errors.hpp"

namespace alexmod {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational number, always in lowest terms with positive denominator.
// cpp_rational maintains that canonical form on every operation.
using Rat = boost::multiprecision::cpp_rational;

inline BigInt rat_num(const Rat& q) { return numerator(q); }
inline BigInt rat_den(const Rat& q) { return denominator(q); }

inline bool is_zero(const Rat& q) { return q.is_zero(); }
inline bool is_one(const Rat& q) { return q == 1; }

inline int sign_of(const Rat& q) { return q.sign(); }

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

inline Rat rat_inv(const Rat& q) {
    if (q.is_zero()) throw Error("division by zero");
    return Rat(1) / q;
}

inline Rat rat_pow(const Rat& base, long long e) {
    if (e < 0) return rat_pow(rat_inv(base), -e);
    Rat acc(1), b = base;
    unsigned long long n = static_cast<unsigned long long>(e);
    while (n) {
        if (n & 1ull) acc *= b;
        b *= b;
        n >>= 1;
    }
    return acc;
}

// Canonical text form: "p" or "p/q" with q > 1.
inline std::string rat_str(const Rat& q) {
    std::string s = rat_num(q).str();
    if (rat_den(q) != 1) s += "/" + rat_den(q).str();
    return s;
}

// Strict parser for the canonical form: optional sign, digits, optional
// "/digits" with a positive denominator.
inline Rat parse_rat(const std::string& s) {
    std::size_t i = 0;
    const std::size_t n = s.size();
    bool neg = false;
    if (i < n && (s[i] == '+' || s[i] == '-')) {
        neg = (s[i] == '-');
        ++i;
    }
    if (i >= n || !std::isdigit(static_cast<unsigned char>(s[i])))
        throw ParseError(i, "expected digits in rational literal '" + s + "'");
    std::size_t start = i;
    while (i < n && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    BigInt num(s.substr(start, i - start));
    BigInt den(1);
    if (i < n && s[i] == '/') {
        ++i;
        if (i >= n || !std::isdigit(static_cast<unsigned char>(s[i])))
            throw ParseError(i, "expected digits after '/' in rational literal '" + s + "'");
        start = i;
        while (i < n && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        den = BigInt(s.substr(start, i - start));
        if (den.is_zero()) throw ParseError(start, "zero denominator in rational literal '" + s + "'");
    }
    if (i != n) throw ParseError(i, "trailing characters in rational literal '" + s + "'");
    Rat q(num, den);
    return neg ? Rat(-q) : q;
}

}  // namespace alexmod
