#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "chain.hpp"
#include "errors.hpp"
#include "modules.hpp"
#include "qlinalg.hpp"
#include "rmatrix.hpp"
#include "unipoly.hpp"

namespace alexmod {

// Where to evaluate t: a primitive d-th root of unity, a nonzero rational
// number, or a transcendental (the fraction field Q(t) itself).
struct SpecializationPoint {
    enum class Kind { RootOfUnity, Rational, Generic };

    Kind kind = Kind::Generic;
    std::size_t order = 0;
    Rat value;

    static SpecializationPoint root_of_unity(std::size_t d) {
        if (d == 0) throw InvalidInput("root-of-unity order must be positive");
        SpecializationPoint p;
        p.kind = Kind::RootOfUnity;
        p.order = d;
        return p;
    }

    static SpecializationPoint rational(Rat v) {
        if (is_zero(v)) throw DegenerateInput("cannot specialize t to 0: t is a unit");
        SpecializationPoint p;
        p.kind = Kind::Rational;
        p.value = std::move(v);
        return p;
    }

    static SpecializationPoint generic() { return SpecializationPoint{}; }

    // Accepts "root-of-unity:<d>", "rational:<p/q>", "generic".
    static SpecializationPoint parse(const std::string& text) {
        const std::string ru = "root-of-unity:";
        const std::string ra = "rational:";
        if (text == "generic") return generic();
        if (text.rfind(ru, 0) == 0) {
            const std::string rest = text.substr(ru.size());
            if (rest.empty()) throw ParseError(ru.size(), "missing root-of-unity order");
            std::size_t d = 0;
            for (char c : rest) {
                if (c < '0' || c > '9')
                    throw ParseError(ru.size(), "root-of-unity order must be a positive integer");
                d = d * 10 + static_cast<std::size_t>(c - '0');
                if (d > 1000000) throw ParseError(ru.size(), "root-of-unity order too large");
            }
            return root_of_unity(d);
        }
        if (text.rfind(ra, 0) == 0) {
            Rat v;
            try {
                v = parse_rat(text.substr(ra.size()));
            } catch (const ParseError& e) {
                throw ParseError(ra.size(), std::string("bad rational value: ") + e.what());
            }
            return rational(v);
        }
        throw ParseError(0, "expected root-of-unity:<d>, rational:<p/q>, or generic");
    }

    std::string str() const {
        switch (kind) {
            case Kind::RootOfUnity: return "root-of-unity:" + std::to_string(order);
            case Kind::Rational: return "rational:" + rat_str(value);
            default: return "generic";
        }
    }
};

namespace detail {

// t^e at a primitive d-th root of unity is x^{e mod d} in Q[x]/Phi_d.
inline UniPoly eval_at_unit_root(const LaurentPoly& a, std::size_t d, const UniPoly& phi) {
    UniPoly acc;
    const std::vector<Rat>& cs = a.body().coeffs();
    for (std::size_t i = 0; i < cs.size(); ++i) {
        if (is_zero(cs[i])) continue;
        const long long e = a.valuation() + static_cast<long long>(i);
        const long long dd = static_cast<long long>(d);
        const long long k = ((e % dd) + dd) % dd;
        acc = acc + UniPoly::monomial(cs[i], static_cast<std::size_t>(k));
    }
    return poly_mod(acc, phi);
}

// Gaussian elimination in the field Q[x]/Phi_d; entries arrive reduced.
inline std::size_t rank_mod_cyclotomic(std::vector<std::vector<UniPoly>> m, const UniPoly& phi,
                                       const CancelToken* cancel) {
    const std::size_t rows = m.size();
    const std::size_t cols = rows == 0 ? 0 : m[0].size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        check_cancel(cancel);
        std::size_t piv = rows;
        for (std::size_t i = rank; i < rows; ++i)
            if (!m[i][col].is_zero()) {
                piv = i;
                break;
            }
        if (piv == rows) continue;
        std::swap(m[rank], m[piv]);
        const UniPoly inv = invert_mod(m[rank][col], phi);
        for (std::size_t j = col; j < cols; ++j) m[rank][j] = mulmod(m[rank][j], inv, phi);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            if (m[i][col].is_zero()) continue;
            const UniPoly f = m[i][col];
            for (std::size_t j = col; j < cols; ++j)
                m[i][j] = m[i][j] - mulmod(f, m[rank][j], phi);
        }
        ++rank;
    }
    return rank;
}

inline std::size_t boundary_rank_at(const FreeRChainComplex& c, std::size_t j,
                                    const SpecializationPoint& p, const CancelToken* cancel) {
    const RMatrix d = c.boundary(j);
    switch (p.kind) {
        case SpecializationPoint::Kind::Generic:
            return rank_over_fraction_field(d, cancel);
        case SpecializationPoint::Kind::Rational: {
            QMat q(d.rows(), d.cols());
            for (std::size_t i = 0; i < d.rows(); ++i)
                for (std::size_t k = 0; k < d.cols(); ++k) q.at(i, k) = d.at(i, k).eval(p.value);
            return rank(q);
        }
        default: {
            const UniPoly phi = cyclotomic(p.order);
            std::vector<std::vector<UniPoly>> m(d.rows(), std::vector<UniPoly>(d.cols()));
            for (std::size_t i = 0; i < d.rows(); ++i)
                for (std::size_t k = 0; k < d.cols(); ++k)
                    m[i][k] = eval_at_unit_root(d.at(i, k), p.order, phi);
            return rank_mod_cyclotomic(std::move(m), phi, cancel);
        }
    }
}

}  // namespace detail

// Dimension of degree-j homology of the complex evaluated at the point, over
// the residue field there. Both boundary ranks drop out of the count:
// dim = rank_j - rank d_j - rank d_{j+1}.
inline std::size_t specialized_dimension(const FreeRChainComplex& c, const SpecializationPoint& p,
                                         std::size_t j, const CancelToken* cancel = nullptr) {
    check_cancel(cancel);
    const std::size_t r1 = detail::boundary_rank_at(c, j, p, cancel);
    const std::size_t r2 = detail::boundary_rank_at(c, j + 1, p, cancel);
    return c.rank(j) - r1 - r2;
}

// The two sides of the universal-coefficient comparison at t = 1:
//   dim H_j(C at t=1)  vs  dim coker(t-1 | H_j) + dim ker(t-1 | H_{j-1}).
struct MilnorCheck {
    std::size_t dim_at_one = 0;
    std::size_t coker_dim = 0;
    std::size_t ker_dim = 0;
    bool consistent = false;
};

namespace detail {

// coker and ker of (t-1) acting on a decomposed module, as Q-dimensions.
inline std::pair<std::size_t, std::size_t> unit_fixed_dims(const FreeRChainComplex& c,
                                                           std::size_t j,
                                                           const CancelToken* cancel) {
    const auto [free_rank, torsion] = decompose(homology(c, j, cancel), cancel);
    const std::size_t n = torsion.qdim;
    const std::size_t r = n == 0 ? 0 : rank(torsion.t_matrix - QMat::identity(n));
    // multiplication by (t-1) on R is injective with one-dimensional cokernel
    return {free_rank + (n - r), n - r};
}

}  // namespace detail

inline MilnorCheck milnor_consistency(const FreeRChainComplex& c, std::size_t j,
                                      const CancelToken* cancel = nullptr) {
    MilnorCheck out;
    out.dim_at_one = specialized_dimension(c, SpecializationPoint::rational(Rat(1)), j, cancel);
    out.coker_dim = detail::unit_fixed_dims(c, j, cancel).first;
    out.ker_dim = j == 0 ? 0 : detail::unit_fixed_dims(c, j - 1, cancel).second;
    out.consistent = out.dim_at_one == out.coker_dim + out.ker_dim;
    return out;
}

// Alternating sum sum_{l<=j} (-1)^{l+j} (b_l - r_l): the dimension the
// unit-eigenvalue part of degree-j cohomology must have when every lower
// degree contributes fully. Both lists must reach index j.
inline std::size_t eigen1_dimension_formula(const std::vector<long long>& b,
                                            const std::vector<long long>& r, std::size_t j) {
    if (b.size() <= j || r.size() <= j)
        throw InvalidInput("need betti and correction numbers for every degree up to " +
                           std::to_string(j));
    long long sum = 0;
    for (std::size_t l = 0; l <= j; ++l) {
        const long long term = b[l] - r[l];
        sum += ((j - l) % 2 == 0) ? term : -term;
    }
    if (sum < 0) throw InvalidInput("alternating dimension sum is negative");
    return static_cast<std::size_t>(sum);
}

}  // namespace alexmod
