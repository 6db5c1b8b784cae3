#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "laurent.hpp"

namespace alexmod {

// Element of the truncated ring R_m = R/(t-1)^m, written in powers of
// s = t-1: coeffs[k] multiplies s^k, and s^m = 0. The order m is part of
// the value; mixing orders in arithmetic is a usage error.
class TruncElem {
  public:
    explicit TruncElem(std::size_t m) : c_(m, Rat(0)) {
        if (m == 0) throw Error("truncation order must be positive");
    }
    TruncElem(std::size_t m, std::vector<Rat> coeffs) : TruncElem(m) {
        for (std::size_t k = 0; k < std::min(m, coeffs.size()); ++k) c_[k] = std::move(coeffs[k]);
    }

    static TruncElem one(std::size_t m) {
        TruncElem e(m);
        e.c_[0] = Rat(1);
        return e;
    }
    static TruncElem s(std::size_t m) {
        TruncElem e(m);
        if (m >= 2) e.c_[1] = Rat(1);
        return e;
    }

    std::size_t order() const { return c_.size(); }
    Rat coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rat(0); }
    const std::vector<Rat>& coeffs() const { return c_; }

    bool is_zero() const {
        for (const auto& c : c_)
            if (!alexmod::is_zero(c)) return false;
        return true;
    }
    bool is_unit() const { return !alexmod::is_zero(c_[0]); }

    bool operator==(const TruncElem& o) const { return c_ == o.c_; }
    bool operator!=(const TruncElem& o) const { return !(*this == o); }

    TruncElem operator-() const {
        TruncElem r(*this);
        for (auto& c : r.c_) c = -c;
        return r;
    }

    TruncElem operator+(const TruncElem& o) const {
        check_same(o);
        TruncElem r(*this);
        for (std::size_t k = 0; k < c_.size(); ++k) r.c_[k] += o.c_[k];
        return r;
    }

    TruncElem operator-(const TruncElem& o) const { return *this + (-o); }

    TruncElem operator*(const TruncElem& o) const {
        check_same(o);
        TruncElem r(order());
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (alexmod::is_zero(c_[i])) continue;
            for (std::size_t j = 0; i + j < c_.size(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
        }
        return r;
    }

    TruncElem operator*(const Rat& x) const {
        TruncElem r(*this);
        for (auto& c : r.c_) c *= x;
        return r;
    }

    // Multiplicative inverse; exists iff the constant coefficient is
    // nonzero (s is the maximal ideal). Solved by back-substitution.
    TruncElem inverse() const {
        if (!is_unit()) throw Error("element of R_m is not a unit");
        TruncElem b(order());
        Rat a0_inv = rat_inv(c_[0]);
        b.c_[0] = a0_inv;
        for (std::size_t k = 1; k < c_.size(); ++k) {
            Rat acc(0);
            for (std::size_t i = 1; i <= k; ++i) acc += c_[i] * b.c_[k - i];
            b.c_[k] = -acc * a0_inv;
        }
        return b;
    }

    TruncElem pow(long long e) const {
        if (e < 0) return inverse().pow(-e);
        TruncElem acc = one(order()), b = *this;
        unsigned long long n = static_cast<unsigned long long>(e);
        while (n) {
            if (n & 1ull) acc = acc * b;
            b = b * b;
            n >>= 1;
        }
        return acc;
    }

  private:
    void check_same(const TruncElem& o) const {
        if (order() != o.order()) throw Error("mixed truncation orders");
    }

    std::vector<Rat> c_;
};

// Quotient map R -> R_m, t |-> 1+s. A ring morphism; negative powers of t
// land on the inverse of (1+s)^|e|, which exists since 1+s is a unit.
inline TruncElem truncate(const LaurentPoly& a, std::size_t m) {
    TruncElem result(m);
    if (a.is_zero()) return result;
    TruncElem t_img = TruncElem::one(m) + TruncElem::s(m);
    for (long long e = a.valuation(); e <= a.top_exponent(); ++e) {
        Rat c = a.coeff(e);
        if (is_zero(c)) continue;
        result = result + t_img.pow(e) * c;
    }
    return result;
}

// log t = log(1+s) = s - s^2/2 + s^3/3 - ... truncated to order m.
inline TruncElem log_series(std::size_t m) {
    TruncElem r(m);
    std::vector<Rat> c(m, Rat(0));
    for (std::size_t k = 1; k < m; ++k)
        c[k] = Rat((k % 2 == 1) ? 1 : -1) / Rat(static_cast<long>(k));
    return TruncElem(m, std::move(c));
}

inline std::string trunc_str(const TruncElem& a) {
    if (a.is_zero()) return "0";
    std::string out;
    for (std::size_t k = 0; k < a.order(); ++k) {
        Rat c = a.coeff(k);
        if (is_zero(c)) continue;
        if (out.empty()) {
            if (c < 0) out += "-";
        } else {
            out += (c < 0) ? "-" : "+";
        }
        Rat mag = rat_abs(c);
        if (k == 0) {
            out += rat_str(mag);
        } else {
            if (!is_one(mag)) out += rat_str(mag) + "*";
            out += "s";
            if (k != 1) out += "^" + std::to_string(k);
        }
    }
    return out;
}

}  // namespace alexmod
