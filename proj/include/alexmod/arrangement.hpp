#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cdga.hpp"
#include "errors.hpp"
#include "qlinalg.hpp"
#include "specialize.hpp"
#include "thicken.hpp"

namespace alexmod {

// The hyperplane {x : <normal, x> = offset}, weighted by the multiplicity of
// its defining form in the product being studied.
struct Hyperplane {
    QVec normal;
    Rat offset;
    long long multiplicity = 1;
};

struct Arrangement {
    std::size_t ambient_dim = 0;
    std::vector<Hyperplane> hyperplanes;
};

namespace detail {

// First-nonzero-normalized copy of (normal, offset), for proportionality
// tests.
inline QVec canonical_functional(const Hyperplane& h) {
    QVec v = h.normal;
    v.push_back(h.offset);
    for (const Rat& c : v)
        if (!is_zero(c)) {
            const Rat inv = rat_inv(c);
            for (Rat& x : v) x *= inv;
            break;
        }
    return v;
}

}  // namespace detail

inline void validate_arrangement(const Arrangement& a) {
    if (a.ambient_dim == 0) throw InvalidInput("ambient dimension must be positive");
    for (const Hyperplane& h : a.hyperplanes) {
        if (h.normal.size() != a.ambient_dim)
            throw InvalidInput("normal vector length does not match the ambient dimension");
        bool nonzero = false;
        for (const Rat& c : h.normal) nonzero = nonzero || !is_zero(c);
        if (!nonzero) throw DegenerateInput("hyperplane with zero normal vector");
    }
    for (std::size_t i = 0; i < a.hyperplanes.size(); ++i)
        for (std::size_t j = i + 1; j < a.hyperplanes.size(); ++j)
            if (detail::canonical_functional(a.hyperplanes[i]) ==
                detail::canonical_functional(a.hyperplanes[j]))
                throw DegenerateInput("hyperplanes " + std::to_string(i + 1) + " and " +
                                      std::to_string(j + 1) + " coincide");
}

namespace detail {

// Calls fn on every size-k subset of {0..n-1}, in lexicographic order.
template <typename F>
inline void for_each_subset(std::size_t n, std::size_t k, F&& fn) {
    if (k > n) return;
    std::vector<std::size_t> pick(k);
    for (std::size_t i = 0; i < k; ++i) pick[i] = i;
    while (true) {
        fn(pick);
        std::size_t i = k;
        while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t l = i; l < k; ++l) pick[l] = pick[l - 1] + 1;
    }
}

// Sign of sorting the concatenation of two sorted disjoint index sets.
inline Rat merge_sign(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    std::size_t inv = 0;
    for (std::size_t x : a)
        for (std::size_t y : b)
            if (x > y) ++inv;
    return inv % 2 == 1 ? Rat(-1) : Rat(1);
}

struct ConeData {
    std::vector<QVec> vectors;  // index 0 is the direction at infinity, then input order
    std::size_t cone_rank = 0;
    std::vector<std::vector<std::size_t>> circuits;         // of the coned vectors
    std::vector<std::vector<std::size_t>> broken_circuits;  // circuits minus their least element
};

inline std::size_t vec_rank(const std::vector<QVec>& vectors,
                            const std::vector<std::size_t>& pick) {
    if (pick.empty()) return 0;
    QMat m(pick.size(), vectors[pick[0]].size());
    for (std::size_t i = 0; i < pick.size(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = vectors[pick[i]][j];
    return rank(m);
}

inline ConeData cone_data(const Arrangement& a, const CancelToken* cancel) {
    ConeData c;
    const std::size_t n = a.ambient_dim;
    QVec infinity(n + 1, Rat(0));
    infinity[n] = Rat(1);
    c.vectors.push_back(infinity);
    for (const Hyperplane& h : a.hyperplanes) {
        QVec v = h.normal;
        v.push_back(-h.offset);
        c.vectors.push_back(v);
    }
    std::vector<std::size_t> all(c.vectors.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    c.cone_rank = vec_rank(c.vectors, all);

    for (std::size_t size = 2; size <= c.cone_rank + 1; ++size) {
        check_cancel(cancel);
        for_each_subset(c.vectors.size(), size, [&](const std::vector<std::size_t>& s) {
            if (vec_rank(c.vectors, s) == s.size()) return;
            for (std::size_t drop = 0; drop < s.size(); ++drop) {
                std::vector<std::size_t> sub;
                for (std::size_t i = 0; i < s.size(); ++i)
                    if (i != drop) sub.push_back(s[i]);
                if (vec_rank(c.vectors, sub) < sub.size()) return;  // not minimal
            }
            c.circuits.push_back(s);
            c.broken_circuits.emplace_back(s.begin() + 1, s.end());
        });
    }
    return c;
}

inline bool subset_intersects(const Arrangement& a, const std::vector<std::size_t>& pick) {
    QMat m(pick.size(), a.ambient_dim);
    QVec b(pick.size());
    for (std::size_t i = 0; i < pick.size(); ++i) {
        for (std::size_t j = 0; j < a.ambient_dim; ++j)
            m.at(i, j) = a.hyperplanes[pick[i]].normal[j];
        b[i] = a.hyperplanes[pick[i]].offset;
    }
    return solve(m, b).has_value();
}

inline std::size_t normal_rank(const Arrangement& a, const std::vector<std::size_t>& pick) {
    QMat m(pick.size(), a.ambient_dim);
    for (std::size_t i = 0; i < pick.size(); ++i)
        for (std::size_t j = 0; j < a.ambient_dim; ++j)
            m.at(i, j) = a.hyperplanes[pick[i]].normal[j];
    return rank(m);
}

}  // namespace detail

// The cohomology algebra of the complement, presented on one generator per
// hyperplane with the no-broken-circuit monomials as the chosen basis. Basis
// names: "u" in degree 0, "e3" in degree 1, "e1_3" and so on above.
struct OSAlgebra {
    CDGA algebra;
    std::vector<std::vector<std::vector<std::size_t>>> nbc;  // per degree, 0-based index sets
    std::size_t rank = 0;
    std::vector<long long> multiplicities;

    std::vector<long long> betti() const {
        std::vector<long long> b;
        for (const auto& level : nbc) b.push_back(static_cast<long long>(level.size()));
        return b;
    }
};

namespace detail {

inline std::string monomial_name(const std::vector<std::size_t>& s) {
    if (s.empty()) return "u";
    std::string name = "e";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i > 0) name += "_";
        name += std::to_string(s[i] + 1);
    }
    return name;
}

// Per-degree reduction table: for each monomial, its class written in the
// nbc basis of that degree.
struct DegreeTable {
    std::vector<std::vector<std::size_t>> monomials;
    std::map<std::vector<std::size_t>, std::size_t> position;
    std::vector<QVec> reduced;  // per monomial, coordinates over the degree's nbc sets
};

}  // namespace detail

inline OSAlgebra build_os_algebra(const Arrangement& a, const CancelToken* cancel = nullptr) {
    validate_arrangement(a);
    const std::size_t d = a.hyperplanes.size();
    const detail::ConeData cone = detail::cone_data(a, cancel);
    const std::size_t r = cone.cone_rank - 1;

    // no-broken-circuit sets of each size, over the hyperplanes alone
    std::vector<std::vector<std::vector<std::size_t>>> nbc(std::min(r, d) + 1);
    for (std::size_t l = 0; l <= std::min(r, d); ++l)
        detail::for_each_subset(d, l, [&](const std::vector<std::size_t>& s) {
            std::vector<std::size_t> shifted(s.size());
            for (std::size_t i = 0; i < s.size(); ++i) shifted[i] = s[i] + 1;
            if (detail::vec_rank(cone.vectors, shifted) < s.size()) return;
            for (const auto& bc : cone.broken_circuits)
                if (std::includes(shifted.begin(), shifted.end(), bc.begin(), bc.end()))
                    return;
            nbc[l].push_back(s);
        });
    while (nbc.size() > 1 && nbc.back().empty()) nbc.pop_back();

    std::size_t total_monomials = 0;
    const std::size_t top = std::min(2 * r, d);
    for (std::size_t l = 0; l <= top; ++l) {
        std::size_t binom = 1;
        for (std::size_t i = 0; i < l; ++i) binom = binom * (d - i) / (i + 1);
        total_monomials += binom;
    }
    if (total_monomials > dim_cap())
        throw DimensionCapExceeded("arrangement needs " + std::to_string(total_monomials) +
                                   " exterior monomials, above the cap");

    // generators of the defining ideal: minimal empty-intersection sets and
    // minimal dependent sets with nonempty intersection
    std::vector<std::vector<std::size_t>> min_empty, circuits;
    for (std::size_t size = 1; size <= std::min(r + 1, d); ++size) {
        check_cancel(cancel);
        detail::for_each_subset(d, size, [&](const std::vector<std::size_t>& s) {
            const bool meets = detail::subset_intersects(a, s);
            if (!meets) {
                for (std::size_t drop = 0; drop < s.size(); ++drop) {
                    std::vector<std::size_t> sub;
                    for (std::size_t i = 0; i < s.size(); ++i)
                        if (i != drop) sub.push_back(s[i]);
                    if (!detail::subset_intersects(a, sub)) return;
                }
                min_empty.push_back(s);
                return;
            }
            if (detail::normal_rank(a, s) == s.size()) return;
            for (std::size_t drop = 0; drop < s.size(); ++drop) {
                std::vector<std::size_t> sub;
                for (std::size_t i = 0; i < s.size(); ++i)
                    if (i != drop) sub.push_back(s[i]);
                if (detail::normal_rank(a, sub) < sub.size()) return;
            }
            circuits.push_back(s);
        });
    }

    // reduce every monomial of every reachable degree to the nbc basis
    std::vector<detail::DegreeTable> tables(top + 1);
    for (std::size_t l = 0; l <= top; ++l) {
        check_cancel(cancel);
        detail::DegreeTable& table = tables[l];
        detail::for_each_subset(d, l, [&](const std::vector<std::size_t>& s) {
            table.position.emplace(s, table.monomials.size());
            table.monomials.push_back(s);
        });
        const std::size_t nmono = table.monomials.size();
        const std::vector<std::vector<std::size_t>>& basis_l =
            l < nbc.size() ? nbc[l] : std::vector<std::vector<std::size_t>>{};

        std::vector<QVec> ideal;
        for (std::size_t mi = 0; mi < nmono; ++mi)
            if (!detail::subset_intersects(a, table.monomials[mi])) {
                QVec v(nmono, Rat(0));
                v[mi] = Rat(1);
                ideal.push_back(v);
            }
        for (const auto& c : circuits) {
            if (c.size() > l + 1) continue;
            // multiply the boundary of the circuit by every monomial of the
            // complementary degree; terms sharing an index die in the wedge
            detail::for_each_subset(d, l + 1 - c.size(),
                                    [&](const std::vector<std::size_t>& t) {
                QVec v(nmono, Rat(0));
                bool any = false;
                for (std::size_t k = 0; k < c.size(); ++k) {
                    std::vector<std::size_t> cpart;
                    for (std::size_t i = 0; i < c.size(); ++i)
                        if (i != k) cpart.push_back(c[i]);
                    std::vector<std::size_t> mono(t.size() + cpart.size());
                    std::merge(t.begin(), t.end(), cpart.begin(), cpart.end(),
                               mono.begin());
                    if (std::adjacent_find(mono.begin(), mono.end()) != mono.end())
                        continue;
                    const Rat sign = (k % 2 == 0 ? Rat(1) : Rat(-1)) *
                                     detail::merge_sign(t, cpart);
                    v[table.position.at(mono)] += sign;
                    any = true;
                }
                if (any) ideal.push_back(std::move(v));
            });
        }

        QMat solver(nmono, ideal.size() + basis_l.size());
        for (std::size_t k = 0; k < ideal.size(); ++k)
            for (std::size_t i = 0; i < nmono; ++i) solver.at(i, k) = ideal[k][i];
        for (std::size_t k = 0; k < basis_l.size(); ++k)
            solver.at(table.position.at(basis_l[k]), ideal.size() + k) = Rat(1);

        const std::size_t ideal_rank =
            ideal.empty() ? 0 : rank(QMat::from_cols(nmono, ideal));
        if (ideal_rank + basis_l.size() != nmono || rank(solver) != nmono)
            throw Error("chosen monomials do not complement the ideal in degree " +
                        std::to_string(l));

        table.reduced.resize(nmono);
        for (std::size_t mi = 0; mi < nmono; ++mi) {
            QVec target(nmono, Rat(0));
            target[mi] = Rat(1);
            auto x = solve(solver, target);
            if (!x) throw Error("monomial reduction failed in degree " + std::to_string(l));
            table.reduced[mi] = QVec(x->begin() + static_cast<std::ptrdiff_t>(ideal.size()),
                                     x->end());
        }
    }

    // assemble the algebra on the nbc basis
    std::vector<BasisElement> basis;
    std::vector<std::vector<std::size_t>> flat;  // global index -> subset
    std::map<std::vector<std::size_t>, std::size_t> flat_pos;
    for (std::size_t l = 0; l < nbc.size(); ++l)
        for (const auto& s : nbc[l]) {
            flat_pos.emplace(s, basis.size());
            basis.push_back(BasisElement{detail::monomial_name(s), l});
            flat.push_back(s);
        }
    const std::size_t dim = basis.size();

    std::map<std::pair<std::size_t, std::size_t>, std::vector<Rat>> products;
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            const auto& s = flat[i];
            const auto& t = flat[j];
            std::vector<std::size_t> merged(s.size() + t.size());
            std::merge(s.begin(), s.end(), t.begin(), t.end(), merged.begin());
            if (std::adjacent_find(merged.begin(), merged.end()) != merged.end()) continue;
            const std::size_t l = merged.size();
            const Rat sign = detail::merge_sign(s, t);
            const detail::DegreeTable& table = tables.at(l);
            const QVec& red = table.reduced[table.position.at(merged)];
            std::vector<Rat> value(dim, Rat(0));
            bool any = false;
            for (std::size_t k = 0; k < red.size(); ++k) {
                if (is_zero(red[k])) continue;
                value[flat_pos.at(nbc[l][k])] = sign * red[k];
                any = true;
            }
            if (any) products.emplace(std::make_pair(i, j), std::move(value));
        }

    std::vector<long long> mults;
    for (const Hyperplane& h : a.hyperplanes) mults.push_back(h.multiplicity);
    CDGA algebra(std::move(basis), 0, std::move(products));
    return OSAlgebra{std::move(algebra), std::move(nbc), r, std::move(mults)};
}

// The degree-1 class Σ ε_i e_i picked out by the hyperplane multiplicities.
inline EtaClass eta_from_multiplicities(const OSAlgebra& os) {
    EtaClass eta;
    for (long long m : os.multiplicities) eta.coefficients.push_back(Rat(m));
    return eta;
}

namespace detail {

inline QVec canonical_pair(QVec normal, Rat offset) {
    normal.push_back(offset);
    for (const Rat& c : normal)
        if (!is_zero(c)) {
            const Rat inv = rat_inv(c);
            for (Rat& x : normal) x *= inv;
            break;
        }
    return normal;
}

inline std::vector<long long> poincare_rec(const std::vector<std::pair<QVec, Rat>>& planes,
                                           std::size_t n) {
    if (planes.empty()) return {1};
    std::vector<std::pair<QVec, Rat>> deleted(planes.begin(), planes.end() - 1);
    const QVec& h_normal = planes.back().first;
    const Rat& h_offset = planes.back().second;

    std::vector<long long> pi = poincare_rec(deleted, n);

    // restrict the others to the last hyperplane: parametrize it by a point
    // plus a basis of its direction space
    QMat hmat(1, n);
    for (std::size_t j = 0; j < n; ++j) hmat.at(0, j) = h_normal[j];
    auto p0 = solve(hmat, {h_offset});
    if (!p0) throw Error("hyperplane without points");
    QMat dir = kernel_basis(hmat);  // n x (n-1)

    std::vector<std::pair<QVec, Rat>> restricted;
    std::vector<QVec> seen;
    for (const auto& [k_normal, k_offset] : deleted) {
        QVec nn(dir.cols(), Rat(0));
        bool nonzero = false;
        for (std::size_t jj = 0; jj < dir.cols(); ++jj) {
            for (std::size_t ii = 0; ii < n; ++ii) nn[jj] += k_normal[ii] * dir.at(ii, jj);
            nonzero = nonzero || !is_zero(nn[jj]);
        }
        if (!nonzero) continue;  // parallel to the last hyperplane
        Rat cc = k_offset;
        for (std::size_t ii = 0; ii < n; ++ii) cc -= k_normal[ii] * (*p0)[ii];
        QVec canon = canonical_pair(nn, cc);
        if (std::find(seen.begin(), seen.end(), canon) != seen.end()) continue;
        seen.push_back(canon);
        restricted.emplace_back(nn, cc);
    }

    std::vector<long long> pi_restr = poincare_rec(restricted, n - 1);
    if (pi.size() < pi_restr.size() + 1) pi.resize(pi_restr.size() + 1, 0);
    for (std::size_t l = 0; l < pi_restr.size(); ++l) pi[l + 1] += pi_restr[l];
    return pi;
}

}  // namespace detail

// Poincaré polynomial coefficients by deletion and restriction, an
// independent combinatorial route to the nbc dimensions.
inline std::vector<long long> poincare_by_deletion(const Arrangement& a) {
    validate_arrangement(a);
    std::vector<std::pair<QVec, Rat>> planes;
    for (const Hyperplane& h : a.hyperplanes) planes.emplace_back(h.normal, h.offset);
    return detail::poincare_rec(planes, a.ambient_dim);
}

struct ArrangementDegreeReport {
    std::size_t j = 0;        // homological degree on the module side
    std::size_t eigen1_dim = 0;
    std::size_t stabilized_m = 1;
    std::size_t formula_dim = 0;
    bool agree = false;
    std::string purity_label;
};

struct ArrangementReport {
    std::size_t rank = 0;
    std::vector<long long> betti;
    std::vector<ArrangementDegreeReport> degrees;
};

// The full pipeline: hypotheses, algebra, thickening kernel dimensions per
// degree, and the combinatorial count they must match.
inline ArrangementReport arrangement_report(const Arrangement& a, std::size_t max_j,
                                            const CancelToken* cancel = nullptr) {
    long long g = 0;
    for (const Hyperplane& h : a.hyperplanes) {
        if (h.multiplicity < 1)
            throw HypothesesNotMet("multiplicity " + std::to_string(h.multiplicity) +
                                   " is not >= 1");
        g = std::gcd(g, h.multiplicity);
    }
    if (g != 1)
        throw HypothesesNotMet("multiplicities have gcd " + std::to_string(g) +
                               ", expected 1");
    OSAlgebra os = build_os_algebra(a, cancel);
    if (os.rank == 0 || max_j > os.rank - 1)
        throw HypothesesNotMet("degree " + std::to_string(max_j) +
                               " is outside the formality range 0.." +
                               std::to_string(os.rank == 0 ? 0 : os.rank - 1));

    ArrangementReport report;
    report.rank = os.rank;
    report.betti = os.betti();
    const EtaClass eta = eta_from_multiplicities(os);
    const std::vector<long long> zeros(max_j + 1, 0);
    for (std::size_t j = 0; j <= max_j; ++j) {
        check_cancel(cancel);
        ArrangementDegreeReport row;
        row.j = j;
        const Eigen1Auto e = eigen1_auto(os.algebra, eta, j + 1, cancel);
        row.eigen1_dim = e.value;
        row.stabilized_m = e.m;
        row.formula_dim = eigen1_dimension_formula(report.betti, zeros, j);
        row.agree = row.eigen1_dim == row.formula_dim;
        row.purity_label = "pure of type (" + std::to_string(j) + "," + std::to_string(j) +
                           "): Q^" + std::to_string(row.eigen1_dim) +
                           " with trivial t-action";
        report.degrees.push_back(row);
    }
    return report;
}

}  // namespace alexmod
