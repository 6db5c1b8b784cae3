#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cdga.hpp"
#include "errors.hpp"
#include "qlinalg.hpp"
#include "trunc.hpp"

namespace alexmod {

// The complex K ⊗ R_m for a zero-differential algebra K, with differential
// w ⊗ p  ->  (eta ^ w) ⊗ s·p. Each degree-j piece is Q-linear of dimension
// dim K^j · m, with basis b ⊗ s^k ordered by basis position then power of s.
struct ThickenedComplex {
    std::size_t m = 1;
    CDGA underlying;
    EtaClass eta;
    std::map<std::size_t, QMat> differentials;  // degree j -> matrix into degree j+1

    std::size_t space_dim(std::size_t j) const { return underlying.dim_in_degree(j) * m; }
};

namespace detail {

// Index of b ⊗ s^k within degree j, for b at position pos among the degree-j
// basis elements.
inline std::size_t thick_index(std::size_t pos, std::size_t k, std::size_t m) {
    return pos * m + k;
}

}  // namespace detail

inline ThickenedComplex thicken(const CDGA& k, const EtaClass& eta, std::size_t m,
                                const CancelToken* cancel = nullptr) {
    if (m == 0) throw InvalidInput("thickening order must be positive");
    if (m > dim_cap() / (k.dim() == 0 ? 1 : k.dim()))
        throw DimensionCapExceeded("thickening of total dimension " + std::to_string(m) + "*" +
                                   std::to_string(k.dim()) + " exceeds the cap");
    ThickenedComplex t{m, k, eta, {}};
    const std::vector<Rat> eta_full = eta.full_vector(k);

    const std::size_t top = k.top_degree();
    for (std::size_t j = 0; j <= top + 1; ++j) {
        check_cancel(cancel);
        const std::vector<std::size_t> src = k.degree_indices(j);
        const std::vector<std::size_t> dst = k.degree_indices(j + 1);
        QMat d(dst.size() * m, src.size() * m);
        for (std::size_t p = 0; p < src.size(); ++p) {
            std::vector<Rat> unit(k.dim(), Rat(0));
            unit[src[p]] = Rat(1);
            const std::vector<Rat> wedge = k.multiply(eta_full, unit);
            for (std::size_t q = 0; q < dst.size(); ++q) {
                if (is_zero(wedge[dst[q]])) continue;
                for (std::size_t kk = 0; kk + 1 < m; ++kk)
                    d.at(detail::thick_index(q, kk + 1, m), detail::thick_index(p, kk, m)) =
                        wedge[dst[q]];
            }
        }
        t.differentials.emplace(j, std::move(d));
    }
    for (std::size_t j = 0; j <= top; ++j)
        if (!(t.differentials.at(j + 1) * t.differentials.at(j)).is_zero())
            throw Error("thickened differential does not square to zero");
    return t;
}

namespace detail {

// Multiplication by s on the degree-j piece: b ⊗ s^k -> b ⊗ s^{k+1}.
inline QMat s_matrix(const ThickenedComplex& t, std::size_t j) {
    const std::size_t basis = t.underlying.dim_in_degree(j);
    QMat s(basis * t.m, basis * t.m);
    for (std::size_t p = 0; p < basis; ++p)
        for (std::size_t k = 0; k + 1 < t.m; ++k)
            s.at(thick_index(p, k + 1, t.m), thick_index(p, k, t.m)) = Rat(1);
    return s;
}

struct CohomologySpace {
    QuotientSpace space;
    QMat s_action;  // induced multiplication by s on the quotient
};

inline CohomologySpace cohomology_space(const ThickenedComplex& t, std::size_t j) {
    const QMat out = t.differentials.count(j) ? t.differentials.at(j)
                                              : QMat(0, t.space_dim(j));
    QMat z = kernel_basis(out);
    QMat b = j == 0 || !t.differentials.count(j - 1) ? QMat(t.space_dim(j), 0)
                                                     : t.differentials.at(j - 1);
    QuotientSpace h(z, b);
    QMat s = QuotientSpace::induced(s_matrix(t, j), h, h);
    return CohomologySpace{std::move(h), std::move(s)};
}

}  // namespace detail

struct ThickenedCohomology {
    std::size_t qdim = 0;
    std::vector<std::size_t> s_profile;  // Jordan block sizes of s, descending
};

inline ThickenedCohomology thickened_cohomology(const ThickenedComplex& t, std::size_t j) {
    detail::CohomologySpace h = detail::cohomology_space(t, j);
    ThickenedCohomology out;
    out.qdim = h.space.dim();
    if (out.qdim > 0) out.s_profile = nilpotent_block_sizes(h.s_action);
    return out;
}

namespace detail {

// Ambient matrix of w ⊗ p -> w ⊗ u·lift(p) from order m_from into the order
// of u. Well defined because u has valuation >= m_to - m_from.
inline QMat lift_multiply_matrix(const ThickenedComplex& from, const ThickenedComplex& to,
                                 std::size_t j, const TruncElem& u) {
    const std::size_t basis = from.underlying.dim_in_degree(j);
    QMat f(basis * to.m, basis * from.m);
    for (std::size_t k = 0; k < from.m; ++k) {
        const TruncElem img = u * TruncElem::s(to.m).pow(static_cast<long long>(k));
        for (std::size_t kk = 0; kk < to.m; ++kk) {
            if (is_zero(img.coeff(kk))) continue;
            for (std::size_t p = 0; p < basis; ++p)
                f.at(thick_index(p, kk, to.m), thick_index(p, k, from.m)) = img.coeff(kk);
        }
    }
    return f;
}

inline void require_same_base(const ThickenedComplex& a, const ThickenedComplex& b) {
    bool same = a.underlying.dim() == b.underlying.dim() &&
                a.eta.coefficients == b.eta.coefficients;
    for (std::size_t i = 0; same && i < a.underlying.dim(); ++i)
        same = a.underlying.element(i).name == b.underlying.element(i).name &&
               a.underlying.element(i).degree == b.underlying.element(i).degree;
    if (!same) throw InvalidInput("thickenings have different underlying data");
}

}  // namespace detail

// Dimension of the kernel of H^j(K(eta,m)) -> H^j(K(eta,2m)) under
// w ⊗ p -> w ⊗ s^m p. The same kernel must arise from multiplying by
// log(1+s)^m instead; both are computed and compared exactly.
inline std::size_t eigen1(const CDGA& k, const EtaClass& eta, std::size_t j, std::size_t m,
                          const CancelToken* cancel = nullptr) {
    if (m == 0) throw InvalidInput("thickening order must be positive");
    const ThickenedComplex t1 = thicken(k, eta, m, cancel);
    const ThickenedComplex t2 = thicken(k, eta, 2 * m, cancel);
    const detail::CohomologySpace h1 = detail::cohomology_space(t1, j);
    const detail::CohomologySpace h2 = detail::cohomology_space(t2, j);

    const TruncElem s_m = TruncElem::s(2 * m).pow(static_cast<long long>(m));
    const TruncElem log_m = log_series(2 * m).pow(static_cast<long long>(m));
    const QMat by_s = QuotientSpace::induced(detail::lift_multiply_matrix(t1, t2, j, s_m),
                                             h1.space, h2.space);
    const QMat by_log = QuotientSpace::induced(detail::lift_multiply_matrix(t1, t2, j, log_m),
                                               h1.space, h2.space);
    const QMat ker_s = kernel_basis(by_s);
    const QMat ker_log = kernel_basis(by_log);
    if (!same_subspace(ker_s, ker_log))
        throw Error("kernels via s^m and via log(1+s)^m disagree");
    return ker_s.cols();
}

struct Eigen1Auto {
    std::size_t value = 0;
    std::size_t m = 1;  // smallest order at which the value has stabilized
};

// Increases m until two consecutive values agree; by nilpotency this happens
// no later than m = dim K^j + 1.
inline Eigen1Auto eigen1_auto(const CDGA& k, const EtaClass& eta, std::size_t j,
                              const CancelToken* cancel = nullptr) {
    const std::size_t cap = k.dim_in_degree(j) + 1;
    std::size_t prev = eigen1(k, eta, j, 1, cancel);
    for (std::size_t m = 1; m <= cap; ++m) {
        const std::size_t next = eigen1(k, eta, j, m + 1, cancel);
        if (next == prev) return Eigen1Auto{prev, m};
        prev = next;
    }
    throw NoStabilization("eigenvalue-1 dimension did not stabilize by order " +
                          std::to_string(cap));
}

// Projection K(eta, m+m') -> K(eta, m): drop the s-coefficients past the
// target order. Degree by degree.
inline std::map<std::size_t, QMat> phi_map(const ThickenedComplex& from,
                                           const ThickenedComplex& to) {
    detail::require_same_base(from, to);
    if (from.m < to.m) throw IncompatibleOrders("projection requires source order >= target");
    std::map<std::size_t, QMat> out;
    for (std::size_t j = 0; j <= from.underlying.top_degree(); ++j) {
        const std::size_t basis = from.underlying.dim_in_degree(j);
        QMat f(basis * to.m, basis * from.m);
        for (std::size_t p = 0; p < basis; ++p)
            for (std::size_t k = 0; k < to.m; ++k)
                f.at(detail::thick_index(p, k, to.m), detail::thick_index(p, k, from.m)) =
                    Rat(1);
        out.emplace(j, std::move(f));
    }
    return out;
}

// Multiplication by log(1+s)^{m'} into the larger order, K(eta, m) ->
// K(eta, m+m').
inline std::map<std::size_t, QMat> psi_map(const ThickenedComplex& from,
                                           const ThickenedComplex& to) {
    detail::require_same_base(from, to);
    if (from.m > to.m)
        throw IncompatibleOrders("log multiplication requires source order <= target");
    const TruncElem u = log_series(to.m).pow(static_cast<long long>(to.m - from.m));
    std::map<std::size_t, QMat> out;
    for (std::size_t j = 0; j <= from.underlying.top_degree(); ++j)
        out.emplace(j, detail::lift_multiply_matrix(from, to, j, u));
    return out;
}

// Matrix of w ⊗ p -> w ⊗ u·p on each degree of a single thickening.
inline std::map<std::size_t, QMat> multiplication_map(const ThickenedComplex& t,
                                                      const TruncElem& u) {
    if (u.order() != t.m) throw IncompatibleOrders("multiplier lives in a different order");
    std::map<std::size_t, QMat> out;
    for (std::size_t j = 0; j <= t.underlying.top_degree(); ++j)
        out.emplace(j, detail::lift_multiply_matrix(t, t, j, u));
    return out;
}

}  // namespace alexmod
