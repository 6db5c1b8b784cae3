#pragma once

#include <cctype>
#include <cstddef>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "chain.hpp"
#include "errors.hpp"
#include "laurent.hpp"

namespace alexmod {

// One letter of a group word: a generator index and a nonzero exponent.
struct Letter {
    std::size_t gen = 0;
    long long exp = 0;
};

// Words are whitespace-separated tokens, each `name` or `name^k` with k a
// possibly negative integer: "a b^-1 a^2". Exponent zero is legal and the
// letter is simply dropped.
inline std::vector<Letter> parse_word(const std::string& text,
                                      const std::vector<std::string>& generators) {
    std::vector<Letter> letters;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        if (!detail::is_name_start(text[i]))
            throw ParseError(start, "expected a generator name");
        std::string name;
        while (i < n && detail::is_name_char(text[i])) name.push_back(text[i++]);

        std::size_t gen = generators.size();
        for (std::size_t g = 0; g < generators.size(); ++g)
            if (generators[g] == name) {
                gen = g;
                break;
            }
        if (gen == generators.size())
            throw ParseError(start, "unknown generator '" + name + "'");

        long long exp = 1;
        if (i < n && text[i] == '^') {
            ++i;
            const std::size_t exp_start = i;
            bool negative = false;
            if (i < n && (text[i] == '-' || text[i] == '+')) {
                negative = text[i] == '-';
                ++i;
            }
            if (i >= n || !std::isdigit(static_cast<unsigned char>(text[i])))
                throw ParseError(exp_start, "expected an integer exponent after '^'");
            long long mag = 0;
            while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
                mag = mag * 10 + (text[i] - '0');
                if (mag > 1000000) throw ParseError(exp_start, "exponent too large");
                ++i;
            }
            exp = negative ? -mag : mag;
        }
        if (i < n && !std::isspace(static_cast<unsigned char>(text[i])))
            throw ParseError(i, "unexpected character in word");
        if (exp != 0) letters.push_back(Letter{gen, exp});
    }
    return letters;
}

// A finite presentation together with a weight epsilon on the generators,
// inducing the ring map g -> t^epsilon(g). Construction validates that the
// weights kill every relator and generate all of Z.
class GroupPresentation {
  public:
    GroupPresentation(std::vector<std::string> generators, std::vector<std::string> relators,
                      const std::map<std::string, long long>& epsilon)
        : generators_(std::move(generators)), relator_words_(std::move(relators)) {
        for (std::size_t g = 0; g < generators_.size(); ++g) {
            const std::string& name = generators_[g];
            bool ok = !name.empty() && detail::is_name_start(name[0]);
            for (char c : name) ok = ok && detail::is_name_char(c);
            if (!ok) throw InvalidInput("invalid generator name '" + name + "'");
            for (std::size_t h = g + 1; h < generators_.size(); ++h)
                if (name == generators_[h])
                    throw InvalidInput("duplicate generator '" + name + "'");
        }
        for (const auto& [name, w] : epsilon) {
            bool known = false;
            for (const auto& g : generators_) known = known || g == name;
            if (!known) throw InvalidInput("epsilon given for unknown generator '" + name + "'");
            (void)w;
        }
        epsilon_.reserve(generators_.size());
        for (const auto& g : generators_) {
            auto it = epsilon.find(g);
            if (it == epsilon.end())
                throw InvalidInput("epsilon missing for generator '" + g + "'");
            epsilon_.push_back(it->second);
        }

        long long d = 0;
        for (long long w : epsilon_) d = std::gcd(d, w);
        if (d != 1) throw EpsilonNotSurjective("generator weights have gcd " + std::to_string(d) +
                                               "; they must generate all of Z");

        for (const auto& word : relator_words_) {
            letters_.push_back(parse_word(word, generators_));
            long long total = 0;
            for (const Letter& l : letters_.back()) total += l.exp * epsilon_[l.gen];
            if (total != 0)
                throw EpsilonNotConsistent("relator '" + word + "' has weight " +
                                           std::to_string(total) + ", expected 0");
        }
    }

    const std::vector<std::string>& generators() const { return generators_; }
    std::size_t generator_count() const { return generators_.size(); }
    std::size_t relator_count() const { return relator_words_.size(); }
    const std::string& relator_word(std::size_t k) const { return relator_words_.at(k); }
    const std::vector<Letter>& relator_letters(std::size_t k) const { return letters_.at(k); }
    long long weight(std::size_t gen) const { return epsilon_.at(gen); }

  private:
    std::vector<std::string> generators_;
    std::vector<std::string> relator_words_;
    std::vector<std::vector<Letter>> letters_;
    std::vector<long long> epsilon_;
};

// Image in R of the free derivative of relator k with respect to a generator,
// computed by walking the word letter by letter. The walk keeps the weight s
// of the prefix read so far: a positive occurrence of x contributes t^s before
// s advances, a negative one contributes -t^s after s steps back.
inline LaurentPoly fox_derivative(const GroupPresentation& p, std::size_t relator,
                                  std::size_t gen) {
    LaurentPoly out;
    long long s = 0;
    for (const Letter& l : p.relator_letters(relator)) {
        const long long steps = l.exp > 0 ? l.exp : -l.exp;
        for (long long i = 0; i < steps; ++i) {
            if (l.exp > 0) {
                if (l.gen == gen) out = out + LaurentPoly::monomial(Rat(1), s);
                s += p.weight(l.gen);
            } else {
                s -= p.weight(l.gen);
                if (l.gen == gen) out = out - LaurentPoly::monomial(Rat(1), s);
            }
        }
    }
    return out;
}

// Three-term complex R^{relators} -> R^{generators} -> R. The outer map sends
// the basis vector of generator x to t^{weight(x)} - 1; the inner one is the
// matrix of free derivatives. Its composite vanishing is rechecked on
// construction.
inline FreeRChainComplex fox_complex(const GroupPresentation& p) {
    const std::size_t n = p.generator_count();
    const std::size_t m = p.relator_count();
    RMatrix d1(1, n);
    for (std::size_t g = 0; g < n; ++g)
        d1.at(0, g) = LaurentPoly::monomial(Rat(1), p.weight(g)) - LaurentPoly::one();
    RMatrix d2(n, m);
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t k = 0; k < m; ++k) d2.at(g, k) = fox_derivative(p, k, g);

    std::map<std::size_t, std::size_t> ranks{{0, 1}, {1, n}, {2, m}};
    std::map<std::size_t, RMatrix> boundaries{{1, std::move(d1)}, {2, std::move(d2)}};
    return FreeRChainComplex(std::move(ranks), std::move(boundaries));
}

}  // namespace alexmod
