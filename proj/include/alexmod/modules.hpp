#pragma once

#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

#include "qlinalg.hpp"
#include "rmatrix.hpp"

namespace alexmod {

// A finitely generated R-module R^generators / (column span of relations).
struct PresentedRModule {
    std::size_t generators = 0;
    RMatrix relations;  // one column per relator

    PresentedRModule(std::size_t gens, RMatrix rels)
        : generators(gens), relations(std::move(rels)) {
        if (relations.rows() != generators)
            throw InvalidInput("relation matrix must have one row per generator");
    }
};

// The torsion part, concretely: a divisibility chain of invariant factors
// d_1 | d_2 | ... and the action of t on ⊕ R/(d_i) in the basis
// 1, t, ..., t^{deg-1} of each summand.
struct TorsionModule {
    std::vector<LaurentPoly> invariant_factors;
    std::size_t qdim = 0;
    QMat t_matrix;
};

inline QMat companion_matrix(const UniPoly& p) {
    if (p.is_zero() || !is_one(p.lead())) throw Error("companion matrix needs a monic polynomial");
    std::size_t d = p.deg();
    QMat m(d, d);
    for (std::size_t i = 0; i + 1 < d; ++i) m.at(i + 1, i) = Rat(1);
    for (std::size_t i = 0; i < d; ++i) m.at(i, d - 1) = -p.coeff(i);
    return m;
}

inline TorsionModule torsion_from_factors(const std::vector<LaurentPoly>& factors) {
    TorsionModule t;
    std::size_t qdim = 0;
    for (const auto& f : factors) {
        if (f.is_zero() || f.is_unit()) throw Error("invariant factors must be nonzero nonunits");
        if (f != f.normalized()) throw Error("invariant factors must be normalized");
        qdim += f.body().deg();
    }
    t.invariant_factors = factors;
    t.qdim = qdim;
    t.t_matrix = QMat(qdim, qdim);
    std::size_t off = 0;
    for (const auto& f : factors) {
        QMat block = companion_matrix(f.body());
        for (std::size_t i = 0; i < block.rows(); ++i)
            for (std::size_t j = 0; j < block.cols(); ++j)
                t.t_matrix.at(off + i, off + j) = block.at(i, j);
        off += block.rows();
    }
    return t;
}

// Product of the invariant factors as a monic polynomial in t; equals the
// characteristic polynomial of t_matrix.
inline UniPoly torsion_order_poly(const TorsionModule& t) {
    UniPoly p = UniPoly::one();
    for (const auto& f : t.invariant_factors) p = p * f.body();
    return p;
}

// Splits a presented module into its free rank and torsion part.
inline std::pair<std::size_t, TorsionModule> decompose(const PresentedRModule& m,
                                                       const CancelToken* cancel = nullptr,
                                                       std::size_t cap = dim_cap()) {
    SNFResult snf = smith_normal_form(m.relations, cancel);
    std::size_t free_rank = m.generators - snf.rank;
    std::vector<LaurentPoly> factors;
    std::size_t qdim = 0;
    for (const auto& d : snf.diag) {
        if (d.is_zero() || d.is_one()) continue;
        factors.push_back(d);
        qdim += d.body().deg();
    }
    if (qdim > cap)
        throw DimensionCapExceeded("torsion dimension " + std::to_string(qdim) +
                                   " exceeds the cap of " + std::to_string(cap));
    return {free_rank, torsion_from_factors(factors)};
}

// Least N for which (t^N - 1) acts nilpotently. All distinct eigenvalues of
// t must be roots of unity, i.e. every irreducible factor of the order
// polynomial must be cyclotomic; N is the lcm of their orders. Instead of
// factoring, the squarefree part is reduced by every candidate Φ_d; any
// cyclotomic divisor of a degree-B polynomial has φ(d) ≤ B, which bounds
// d ≤ 2B², and a nonconstant leftover witnesses a non-cyclotomic factor.
inline std::size_t find_N(const TorsionModule& t) {
    if (t.qdim == 0) return 1;
    UniPoly rem = squarefree_part(torsion_order_poly(t));
    std::size_t result = 1;
    std::size_t bound = 2 * rem.deg() * rem.deg() + 1;
    for (std::size_t d = 1; d <= bound && !rem.is_constant(); ++d) {
        if (euler_phi(d) > rem.deg()) continue;
        UniPoly phi = cyclotomic(d);
        if (!divides(phi, rem)) continue;
        rem = exact_div(rem, phi);
        result = std::lcm(result, d);
    }
    if (!rem.is_constant())
        throw NotQuasiUnipotent(laurent_str(LaurentPoly::from_poly(rem)));
    return result;
}

// The nilpotent operator log(t^N) = Σ_{k≥1} (-1)^{k+1} (t^N - 1)^k / k,
// which the annihilation hypothesis cuts off at k = m-1.
inline QMat log_tN_action(const TorsionModule& t, std::size_t N, std::size_t m) {
    if (N == 0 || m == 0) throw Error("log needs positive N and m");
    QMat b = t.t_matrix.pow(N) - QMat::identity(t.qdim);
    if (!b.pow(m).is_zero())
        throw NotAnnihilated("(t^" + std::to_string(N) + " - 1)^" + std::to_string(m) +
                             " does not annihilate the module");
    QMat acc(t.qdim, t.qdim);
    QMat power = QMat::identity(t.qdim);
    for (std::size_t k = 1; k < m; ++k) {
        power = power * b;
        Rat c = Rat((k % 2 == 1) ? 1 : -1) / Rat(static_cast<long>(k));
        acc = acc + power * c;
    }
    return acc;
}

struct JCDecomp {
    QMat t_ss;  // semisimple: annihilated by a squarefree polynomial
    QMat t_u;   // unipotent: t_u - id nilpotent; t_ss * t_u = t
};

// Multiplicative Jordan-Chevalley decomposition of the t-action. The
// semisimple part is a polynomial q in t, found by Newton iteration on the
// squarefree part p_red of the minimal polynomial p: starting from q = x,
//   q ← q - p_red(q) / p_red'(q)  (mod p)
// doubles the precision each round, so p_red(q) ≡ 0 (mod p) after
// log₂(multiplicity) steps. Over Q the iteration never stalls: q stays
// ≡ x mod p_red, so p_red'(q) stays coprime to p and invertible.
inline JCDecomp jordan_chevalley(const TorsionModule& t) {
    JCDecomp jc;
    if (t.qdim == 0) {
        jc.t_ss = QMat(0, 0);
        jc.t_u = QMat(0, 0);
        return jc;
    }
    UniPoly p = minimal_polynomial(t.t_matrix);
    UniPoly p_red = squarefree_part(p);
    if (p == p_red) {
        jc.t_ss = t.t_matrix;
        jc.t_u = QMat::identity(t.qdim);
        return jc;
    }
    UniPoly dp = p_red.derivative();
    UniPoly q = poly_mod(UniPoly::x(), p);
    for (std::size_t round = 0; round <= t.qdim; ++round) {
        UniPoly val = compose_mod(p_red, q, p);
        if (val.is_zero()) break;
        UniPoly deriv_inv = invert_mod(compose_mod(dp, q, p), p);
        q = poly_mod(q - mulmod(val, deriv_inv, p), p);
    }
    if (!compose_mod(p_red, q, p).is_zero()) throw Error("semisimple-part iteration failed");
    jc.t_ss = poly_of_matrix(q, t.t_matrix);
    jc.t_u = inverse(jc.t_ss) * t.t_matrix;
    return jc;
}

struct EigenComponent {
    std::size_t d = 1;  // the component for the cyclotomic polynomial Φ_d
    UniPoly g;
    QMat basis;  // columns span ker g(t_ss); empty when the component vanishes
};

struct EigenDecomposition {
    std::vector<EigenComponent> components;  // ordered by increasing d

    std::size_t total_dim() const {
        std::size_t s = 0;
        for (const auto& c : components) s += c.basis.cols();
        return s;
    }
};

// Generalized eigenspace decomposition over the cyclotomic factors of
// x^N - 1: one component per divisor d of N, including vanishing ones.
// Each cyclotomic is irreducible over Q, so its kernel is nonzero exactly
// when it divides the minimal polynomial of the semisimple part; that test
// costs a division and saves evaluating large cyclotomics on the matrix.
inline EigenDecomposition eigenspace_decomposition(const TorsionModule& t, const JCDecomp& jc,
                                                   std::size_t N) {
    if (N == 0) throw Error("N must be positive");
    if (jc.t_ss.rows() != t.qdim) throw Error("decomposition shape mismatch");
    const UniPoly mu =
        t.qdim == 0 ? UniPoly(Rat(1)) : minimal_polynomial(jc.t_ss);
    EigenDecomposition dec;
    for (std::size_t d = 1; d <= N; ++d) {
        if (N % d != 0) continue;
        EigenComponent comp;
        comp.d = d;
        comp.g = cyclotomic(d);
        if (divides(comp.g, mu))
            comp.basis = kernel_basis(poly_of_matrix(comp.g, jc.t_ss));
        else
            comp.basis = QMat(t.qdim, 0);
        dec.components.push_back(std::move(comp));
    }
    return dec;
}

inline bool is_semisimple(const TorsionModule& t) {
    if (t.qdim == 0) return true;
    return is_squarefree(minimal_polynomial(t.t_matrix));
}

// Semisimplicity of the g-primary component: the restriction of t to
// ker g(t_ss) must have squarefree minimal polynomial.
inline bool is_semisimple_on(const TorsionModule& t, const JCDecomp& jc, const UniPoly& g) {
    QMat basis = kernel_basis(poly_of_matrix(g, jc.t_ss));
    if (basis.cols() == 0) return true;
    QMat restricted = restrict_to_invariant(t.t_matrix, basis);
    return is_squarefree(minimal_polynomial(restricted));
}

inline bool is_semisimple_on(const TorsionModule& t, const UniPoly& g) {
    return is_semisimple_on(t, jordan_chevalley(t), g);
}

}  // namespace alexmod
