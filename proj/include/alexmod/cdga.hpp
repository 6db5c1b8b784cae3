#pragma once

#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "laurent.hpp"
#include "rational.hpp"

namespace alexmod {

struct BasisElement {
    std::string name;
    std::size_t degree = 0;
};

// A graded-commutative associative Q-algebra with chosen basis and zero
// differential. Products are stored sparsely as structure-constant vectors;
// a missing pair multiplies to zero. All the algebra laws are verified at
// construction: degree additivity, b_i b_j = (-1)^{|i||j|} b_j b_i,
// associativity on every basis triple, and the unit acting as identity.
class CDGA {
  public:
    CDGA(std::vector<BasisElement> basis, std::size_t unit,
         std::map<std::pair<std::size_t, std::size_t>, std::vector<Rat>> products)
        : basis_(std::move(basis)), unit_(unit), products_(std::move(products)),
          zero_(basis_.size(), Rat(0)) {
        validate_structure();
        fill_unit_products();
        validate_laws();
    }

    std::size_t dim() const { return basis_.size(); }

    std::size_t dim_in_degree(std::size_t l) const {
        std::size_t n = 0;
        for (const auto& b : basis_)
            if (b.degree == l) ++n;
        return n;
    }

    std::size_t top_degree() const {
        std::size_t top = 0;
        for (const auto& b : basis_)
            if (b.degree > top) top = b.degree;
        return top;
    }

    const BasisElement& element(std::size_t i) const { return basis_.at(i); }
    std::size_t unit_index() const { return unit_; }

    std::optional<std::size_t> index_of(const std::string& name) const {
        for (std::size_t i = 0; i < basis_.size(); ++i)
            if (basis_[i].name == name) return i;
        return std::nullopt;
    }

    // Basis indices of the given degree, in basis order.
    std::vector<std::size_t> degree_indices(std::size_t l) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < basis_.size(); ++i)
            if (basis_[i].degree == l) out.push_back(i);
        return out;
    }

    const std::vector<Rat>& product(std::size_t i, std::size_t j) const {
        auto it = products_.find({i, j});
        return it == products_.end() ? zero_ : it->second;
    }

    // Bilinear extension to arbitrary coefficient vectors over the basis.
    std::vector<Rat> multiply(const std::vector<Rat>& a, const std::vector<Rat>& b) const {
        if (a.size() != dim() || b.size() != dim()) throw Error("coefficient vector length");
        std::vector<Rat> out(dim(), Rat(0));
        for (std::size_t i = 0; i < dim(); ++i) {
            if (is_zero(a[i])) continue;
            for (std::size_t j = 0; j < dim(); ++j) {
                if (is_zero(b[j])) continue;
                const std::vector<Rat>& c = product(i, j);
                const Rat f = a[i] * b[j];
                for (std::size_t l = 0; l < dim(); ++l)
                    if (!is_zero(c[l])) out[l] += f * c[l];
            }
        }
        return out;
    }

  private:
    void validate_structure() {
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            if (basis_[i].name.empty()) throw InvalidInput("basis element with empty name");
            for (std::size_t j = i + 1; j < basis_.size(); ++j)
                if (basis_[i].name == basis_[j].name)
                    throw InvalidInput("duplicate basis name '" + basis_[i].name + "'");
        }
        if (unit_ >= basis_.size()) throw InvalidInput("unit index out of range");
        if (basis_[unit_].degree != 0) throw InvalidInput("unit must have degree 0");
        for (const auto& [key, value] : products_) {
            if (key.first >= basis_.size() || key.second >= basis_.size())
                throw InvalidInput("product index out of range");
            if (value.size() != basis_.size())
                throw InvalidInput("product value has wrong length");
        }
    }

    void fill_unit_products() {
        for (std::size_t j = 0; j < basis_.size(); ++j) {
            std::vector<Rat> delta(basis_.size(), Rat(0));
            delta[j] = Rat(1);
            for (auto key : {std::make_pair(unit_, j), std::make_pair(j, unit_)}) {
                auto it = products_.find(key);
                if (it == products_.end())
                    products_.emplace(key, delta);
                else if (it->second != delta)
                    throw NotAComplex("unit does not act as identity on '" + basis_[j].name +
                                      "'");
            }
        }
    }

    void validate_laws() {
        const std::size_t n = basis_.size();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const std::vector<Rat>& c = product(i, j);
                const std::size_t target = basis_[i].degree + basis_[j].degree;
                for (std::size_t l = 0; l < n; ++l)
                    if (!is_zero(c[l]) && basis_[l].degree != target)
                        throw NotAComplex("product " + basis_[i].name + "*" + basis_[j].name +
                                          " does not respect degree");
                const bool odd = basis_[i].degree % 2 == 1 && basis_[j].degree % 2 == 1;
                const std::vector<Rat>& rev = product(j, i);
                for (std::size_t l = 0; l < n; ++l)
                    if (c[l] != (odd ? -rev[l] : rev[l]))
                        throw NotAComplex("products " + basis_[i].name + "*" + basis_[j].name +
                                          " and the reverse are not graded-commutative");
            }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k) {
                    std::vector<Rat> left(n, Rat(0)), right(n, Rat(0));
                    const std::vector<Rat>& ij = product(i, j);
                    for (std::size_t l = 0; l < n; ++l) {
                        if (is_zero(ij[l])) continue;
                        const std::vector<Rat>& lk = product(l, k);
                        for (std::size_t m = 0; m < n; ++m) left[m] += ij[l] * lk[m];
                    }
                    const std::vector<Rat>& jk = product(j, k);
                    for (std::size_t l = 0; l < n; ++l) {
                        if (is_zero(jk[l])) continue;
                        const std::vector<Rat>& il = product(i, l);
                        for (std::size_t m = 0; m < n; ++m) right[m] += jk[l] * il[m];
                    }
                    if (left != right)
                        throw NotAComplex("associativity fails on (" + basis_[i].name + ", " +
                                          basis_[j].name + ", " + basis_[k].name + ")");
                }
    }

    std::vector<BasisElement> basis_;
    std::size_t unit_;
    std::map<std::pair<std::size_t, std::size_t>, std::vector<Rat>> products_;
    std::vector<Rat> zero_;
};

// A degree-1 class, stored over the degree-1 part of the basis in basis
// order. Automatically closed: the differential is zero.
struct EtaClass {
    std::vector<Rat> coefficients;

    // Expand to a coefficient vector over the whole basis.
    std::vector<Rat> full_vector(const CDGA& k) const {
        std::vector<std::size_t> deg1 = k.degree_indices(1);
        if (coefficients.size() != deg1.size())
            throw InvalidInput("class has " + std::to_string(coefficients.size()) +
                               " coefficients but the degree-1 space has dimension " +
                               std::to_string(deg1.size()));
        std::vector<Rat> out(k.dim(), Rat(0));
        for (std::size_t i = 0; i < deg1.size(); ++i) out[deg1[i]] = coefficients[i];
        return out;
    }
};

// Parses "3/2*e1 - e2 + u" into a coefficient vector over the basis of k.
// Each term is an optional rational coefficient (with '*') and a basis name;
// the single token "0" denotes zero.
inline std::vector<Rat> parse_combination(const std::string& text, const CDGA& k) {
    std::vector<Rat> out(k.dim(), Rat(0));
    std::size_t i = 0;
    detail::skip_ws(text, i);
    if (i < text.size() && text[i] == '0') {
        std::size_t after = i + 1;
        detail::skip_ws(text, after);
        if (after == text.size()) return out;
    }
    bool first = true;
    while (true) {
        detail::skip_ws(text, i);
        if (i == text.size()) {
            if (first) throw ParseError(i, "empty linear combination");
            break;
        }
        Rat sign(1);
        if (text[i] == '+' || text[i] == '-') {
            if (text[i] == '-') sign = Rat(-1);
            ++i;
            detail::skip_ws(text, i);
        } else if (!first) {
            throw ParseError(i, "expected + or - between terms");
        }
        Rat coeff(1);
        if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            BigInt num = detail::parse_digits(text, i, "digits in coefficient");
            BigInt den(1);
            detail::skip_ws(text, i);
            if (i < text.size() && text[i] == '/') {
                ++i;
                detail::skip_ws(text, i);
                den = detail::parse_digits(text, i, "digits in denominator");
                if (den == 0) throw ParseError(i, "zero denominator");
            }
            coeff = Rat(num, den);
            detail::skip_ws(text, i);
            if (i >= text.size() || text[i] != '*')
                throw ParseError(i, "expected * between coefficient and name");
            ++i;
            detail::skip_ws(text, i);
        }
        if (i >= text.size() || !detail::is_name_start(text[i]))
            throw ParseError(i, "expected a basis name");
        const std::size_t start = i;
        std::string name;
        while (i < text.size() && detail::is_name_char(text[i])) name.push_back(text[i++]);
        std::optional<std::size_t> idx = k.index_of(name);
        if (!idx) throw ParseError(start, "unknown basis name '" + name + "'");
        out[*idx] += sign * coeff;
        first = false;
    }
    return out;
}

// Parses a combination supported on degree 1 and packs it as a class.
inline EtaClass parse_eta(const std::string& text, const CDGA& k) {
    std::vector<Rat> full = parse_combination(text, k);
    for (std::size_t i = 0; i < k.dim(); ++i)
        if (!is_zero(full[i]) && k.element(i).degree != 1)
            throw InvalidInput("'" + k.element(i).name + "' does not have degree 1");
    EtaClass eta;
    for (std::size_t i : k.degree_indices(1)) eta.coefficients.push_back(full[i]);
    return eta;
}

}  // namespace alexmod
