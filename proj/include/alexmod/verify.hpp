#pragma once

#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "arrangement.hpp"
#include "chain.hpp"
#include "errors.hpp"
#include "fox.hpp"
#include "modules.hpp"
#include "report.hpp"
#include "specialize.hpp"
#include "thicken.hpp"

namespace alexmod {

struct PropertyResult {
    std::string name;
    bool pass = true;
    std::string detail;
};

struct VerifyRun {
    std::string suite;
    std::uint64_t seed = 0;
    std::vector<PropertyResult> results;

    bool all_pass() const {
        for (const PropertyResult& r : results)
            if (!r.pass) return false;
        return true;
    }
};

namespace detail {

// Thin wrapper so the random streams are reproducible from the recorded seed
// alone (uniform_int_distribution is not portable across standard libraries).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : g_(seed) {}

    long long range(long long lo, long long hi) {
        return lo + static_cast<long long>(g_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    Rat rat(long long max_num, long long max_den) {
        return Rat(range(-max_num, max_num), range(1, max_den));
    }

    Rat nonzero_rat(long long max_num, long long max_den) {
        long long n = range(-max_num, max_num);
        if (n == 0) n = 1;
        return Rat(n, range(1, max_den));
    }

  private:
    std::mt19937_64 g_;
};

inline LaurentPoly rand_laurent(Rng& r) {
    LaurentPoly p;
    const long long val = r.range(-2, 2);
    const long long deg = r.range(0, 3);
    for (long long e = 0; e <= deg; ++e) {
        const long long num = r.range(-5, 5);
        if (num == 0) continue;
        p = p + LaurentPoly::monomial(Rat(num, r.range(1, 3)), val + e);
    }
    return p;
}

inline LaurentPoly rand_laurent_nonzero(Rng& r) {
    for (int tries = 0; tries < 16; ++tries) {
        LaurentPoly p = rand_laurent(r);
        if (!p.is_zero()) return p;
    }
    return LaurentPoly::monomial(Rat(1), r.range(-2, 2));
}

inline LaurentPoly L_t_minus_1() {
    return LaurentPoly::t() + LaurentPoly(Rat(-1));
}

inline RMatrix rand_rmatrix(Rng& r, std::size_t max_side, long long max_deg = 3) {
    const std::size_t rows = static_cast<std::size_t>(r.range(1, max_side));
    const std::size_t cols = static_cast<std::size_t>(r.range(1, max_side));
    RMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            if (r.range(0, 2) == 0) continue;
            LaurentPoly p;
            const long long val = r.range(-1, 1);
            const long long deg = r.range(0, max_deg);
            for (long long e = 0; e <= deg; ++e) {
                const long long num = r.range(-5, 5);
                if (num == 0) continue;
                p = p + LaurentPoly::monomial(Rat(num, r.range(1, 3)), val + e);
            }
            m.at(i, j) = p;
        }
    return m;
}

// Builds an invariant-factor chain out of cyclotomic pieces: each order that
// participates enters at some chain position and stays, so consecutive
// factors divide each other. qdim is kept at 24 or below.
inline TorsionModule rand_torsion_module(Rng& r) {
    static const std::size_t pool[] = {1, 2, 3, 4, 5, 6, 8, 9, 10, 12};
    const std::size_t chain_len = static_cast<std::size_t>(r.range(1, 3));
    std::vector<UniPoly> factors(chain_len, UniPoly(Rat(1)));
    std::size_t qdim = 0;
    const std::size_t picks = static_cast<std::size_t>(r.range(1, 3));
    for (std::size_t pick = 0; pick < picks; ++pick) {
        const std::size_t d = pool[r.range(0, 9)];
        const std::size_t start = static_cast<std::size_t>(r.range(0, chain_len - 1));
        const std::size_t extra = static_cast<std::size_t>(r.range(0, 1));
        const UniPoly phi = cyclotomic(d);
        std::size_t cost = 0;
        for (std::size_t i = start; i < chain_len; ++i)
            cost += phi.deg() * (1 + (i + 1 == chain_len ? extra : 0));
        if (qdim + cost > 24) continue;
        qdim += cost;
        for (std::size_t i = start; i < chain_len; ++i) {
            factors[i] = factors[i] * phi;
            if (i + 1 == chain_len && extra) factors[i] = factors[i] * phi;
        }
    }
    std::vector<LaurentPoly> chain;
    for (const UniPoly& f : factors)
        if (!f.is_constant()) chain.push_back(LaurentPoly::from_poly(f));
    if (chain.empty()) chain.push_back(L_t_minus_1());
    TorsionModule t = torsion_from_factors(chain);

    // Conjugate away from the companion normal form. Transvections keep the
    // change of basis and its inverse integral, so the conjugated matrix
    // stays integer and the downstream arithmetic stays small.
    const std::size_t n = t.qdim;
    if (n > 1) {
        QMat p = QMat::identity(n);
        const long long ops = static_cast<long long>(n) + 8;
        for (long long k = 0; k < ops; ++k) {
            const std::size_t i = static_cast<std::size_t>(r.range(0, n - 1));
            std::size_t j = static_cast<std::size_t>(r.range(0, n - 2));
            if (j >= i) ++j;
            const Rat c(r.range(0, 1) ? 1 : -1);
            for (std::size_t col = 0; col < n; ++col)
                p.at(j, col) += c * p.at(i, col);
        }
        t.t_matrix = p * t.t_matrix * inverse(p);
    }
    return t;
}

// Stabilized kernel of the power chain of b: ker b, ker b^2, ... agrees with
// ker b^dim once two consecutive steps match.
inline QMat stabilized_kernel(const QMat& b) {
    QMat acc = b;
    QMat ker = kernel_basis(acc);
    while (true) {
        acc = acc * b;
        QMat next = kernel_basis(acc);
        if (next.cols() == ker.cols()) return ker;
        ker = next;
    }
}

struct NamedComplex {
    std::string name;
    FreeRChainComplex complex;
};

inline std::vector<NamedComplex> fixture_complexes() {
    std::vector<NamedComplex> out;
    for (std::size_t d = 3; d <= 6; ++d) {
        std::vector<std::string> gens;
        std::map<std::string, long long> eps;
        for (std::size_t i = 0; i < d; ++i) {
            gens.push_back("g" + std::to_string(i + 1));
            eps[gens.back()] = 1;
        }
        out.push_back({"punctured-line-" + std::to_string(d),
                       fox_complex(GroupPresentation(gens, {}, eps))});
    }
    out.push_back({"trefoil", fox_complex(GroupPresentation(
                                  {"a", "b"}, {"a b a b^-1 a^-1 b^-1"},
                                  {{"a", 1}, {"b", 1}}))});
    out.push_back({"concurrent-lines",
                   fox_complex(GroupPresentation(
                       {"a", "b", "c"},
                       {"a b c a c^-1 b^-1 a^-1 a^-1", "a b c b c^-1 b^-1 a^-1 b^-1"},
                       {{"a", 1}, {"b", 1}, {"c", 1}}))});
    out.push_back({"torus",
                   FreeRChainComplex(
                       {{0, 1}, {1, 2}, {2, 1}},
                       {{1, RMatrix::from_rows({{L_t_minus_1(), LaurentPoly()}})},
                        {2, RMatrix::from_rows({{LaurentPoly()}, {L_t_minus_1()}})}})});
    out.push_back({"double-point",
                   FreeRChainComplex({{0, 1}, {1, 1}},
                                     {{1, RMatrix::from_rows(
                                              {{L_t_minus_1() * L_t_minus_1()}})}})});
    return out;
}

struct NamedAlgebra {
    std::string name;
    OSAlgebra os;
    EtaClass eta;
};

inline Arrangement points_on_line(std::size_t d) {
    Arrangement a;
    a.ambient_dim = 1;
    for (std::size_t i = 0; i < d; ++i)
        a.hyperplanes.push_back({{Rat(1)}, Rat(static_cast<long long>(i)), 1});
    return a;
}

inline Arrangement concurrent3(long long m1 = 1, long long m2 = 1, long long m3 = 1) {
    Arrangement a;
    a.ambient_dim = 2;
    a.hyperplanes = {{{Rat(1), Rat(0)}, Rat(0), m1},
                     {{Rat(0), Rat(1)}, Rat(0), m2},
                     {{Rat(1), Rat(-1)}, Rat(0), m3}};
    return a;
}

inline Arrangement triangle3() {
    Arrangement a;
    a.ambient_dim = 2;
    a.hyperplanes = {{{Rat(1), Rat(0)}, Rat(0), 1},
                     {{Rat(0), Rat(1)}, Rat(0), 1},
                     {{Rat(1), Rat(1)}, Rat(1), 1}};
    return a;
}

inline Arrangement pencil_plus() {
    Arrangement a;
    a.ambient_dim = 2;
    a.hyperplanes = {{{Rat(1), Rat(0)}, Rat(0), 1},
                     {{Rat(1), Rat(0)}, Rat(1), 1},
                     {{Rat(0), Rat(1)}, Rat(0), 1}};
    return a;
}

inline std::vector<NamedAlgebra> fixture_algebras(const CancelToken* cancel) {
    std::vector<NamedAlgebra> out;
    auto add = [&](const std::string& name, const Arrangement& a) {
        OSAlgebra os = build_os_algebra(a, cancel);
        EtaClass eta = eta_from_multiplicities(os);
        out.push_back({name, std::move(os), std::move(eta)});
    };
    add("points-3", points_on_line(3));
    add("points-5", points_on_line(5));
    add("concurrent-lines", concurrent3());
    add("weighted-pencil", concurrent3(2, 1, 1));
    add("triangle", triangle3());
    add("parallel-pair", pencil_plus());
    return out;
}

inline void record(std::vector<PropertyResult>& out, const std::string& name, bool pass,
                   const std::string& detail) {
    out.push_back({name, pass, detail});
}

// ---- suite: algebra ----

inline void suite_algebra(Rng& rng, std::vector<PropertyResult>& out,
                          const CancelToken* cancel) {
    {
        bool ok = true;
        std::string why;
        for (int i = 0; i < 200 && ok; ++i) {
            check_cancel(cancel);
            const LaurentPoly a = rand_laurent(rng);
            const LaurentPoly b = rand_laurent(rng);
            const LaurentPoly c = rand_laurent(rng);
            if ((a + b) * c != a * c + b * c || a * b != b * a ||
                parse_laurent(laurent_str(a)) != a) {
                ok = false;
                why = "failed at sample " + std::to_string(i) + " on " + laurent_str(a);
            }
        }
        record(out, "laurent ring identities and print/parse round-trip", ok,
               ok ? "200 random triples" : why);
    }
    {
        bool ok = true;
        std::string why;
        for (int i = 0; i < 200 && ok; ++i) {
            check_cancel(cancel);
            const LaurentPoly a = rand_laurent(rng);
            const LaurentPoly b = rand_laurent_nonzero(rng);
            const auto [q, r] = laurent_divmod(a, b);
            const LaurentPoly g = laurent_gcd(a, b);
            if (a != q * b + r || (!g.is_zero() && (!divides(g, a) || !divides(g, b)))) {
                ok = false;
                why = "failed at sample " + std::to_string(i);
            }
        }
        record(out, "division identity and gcd divisibility", ok,
               ok ? "200 random pairs" : why);
    }
    {
        bool ok = true;
        std::string why;
        for (int i = 0; i < 1000 && ok; ++i) {
            check_cancel(cancel);
            const LaurentPoly a = rand_laurent(rng);
            const LaurentPoly b = rand_laurent(rng);
            const std::size_t m = static_cast<std::size_t>(rng.range(1, 5));
            if (truncate(a + b, m) != truncate(a, m) + truncate(b, m) ||
                truncate(a * b, m) != truncate(a, m) * truncate(b, m)) {
                ok = false;
                why = "failed at sample " + std::to_string(i) + ", order " +
                      std::to_string(m);
            }
        }
        record(out, "truncation at t=1+s is a ring map", ok,
               ok ? "1000 random pairs" : why);
    }
    {
        bool ok = true;
        std::string why;
        for (std::size_t n = 1; n <= 12 && ok; ++n) {
            UniPoly prod(Rat(1));
            for (std::size_t d = 1; d <= n; ++d)
                if (n % d == 0) prod = prod * cyclotomic(d);
            UniPoly target = UniPoly::monomial(Rat(1), n) - UniPoly(Rat(1));
            if (prod != target) {
                ok = false;
                why = "n = " + std::to_string(n);
            }
        }
        record(out, "cyclotomic factors multiply to t^n - 1 (n <= 12)", ok, ok ? "" : why);
    }
    {
        bool ok = true;
        std::string why;
        for (std::size_t m = 1; m <= 6 && ok; ++m) {
            const TruncElem longer = log_series(7);
            const TruncElem shorter = log_series(m);
            for (std::size_t k = 0; k < m; ++k)
                if (longer.coeff(k) != shorter.coeff(k)) {
                    ok = false;
                    why = "order " + std::to_string(m) + ", coefficient " +
                          std::to_string(k);
                }
        }
        record(out, "log-series coefficients stable under truncation", ok, ok ? "" : why);
    }
    {
        bool ok = true;
        std::string why;
        for (int i = 0; i < 120 && ok; ++i) {
            check_cancel(cancel);
            const RMatrix a = rand_rmatrix(rng, 4, 2);
            const SNFResult snf = smith_normal_form(a, cancel);
            const RMatrix d = diagonal_matrix(a.rows(), a.cols(), snf.diag);
            if (snf.left * a * snf.right != d || !has_unit_determinant(snf.left) ||
                !has_unit_determinant(snf.right) ||
                snf.rank != rank_over_fraction_field(a, cancel)) {
                ok = false;
                why = "failed at sample " + std::to_string(i);
            }
            for (std::size_t k = 0; ok && k + 1 < snf.rank; ++k)
                if (!divides(snf.diag[k], snf.diag[k + 1])) {
                    ok = false;
                    why = "divisibility broken at sample " + std::to_string(i);
                }
        }
        record(out, "smith form: transforms, units, divisibility, rank", ok,
               ok ? "120 random matrices" : why);
    }
}

// ---- suite: modules ----

inline void suite_modules(Rng& rng, std::vector<PropertyResult>& out,
                          const CancelToken* cancel) {
    bool jc_ok = true, n_ok = true, eig_ok = true, ss_ok = true;
    std::string jc_why, n_why, eig_why, ss_why;
    std::size_t factor_checks = 0, ss_checks = 0;
    for (int i = 0; i < 200; ++i) {
        check_cancel(cancel);
        const TorsionModule t = rand_torsion_module(rng);
        const std::string tag = "module " + std::to_string(i) + " (qdim " +
                                std::to_string(t.qdim) + ")";
        const JCDecomp jc = jordan_chevalley(t);
        const QMat id = QMat::identity(t.qdim);
        if (jc_ok) {
            const bool commute = jc.t_ss * jc.t_u == t.t_matrix &&
                                 jc.t_u * jc.t_ss == t.t_matrix;
            const bool unip =
                stabilized_kernel(jc.t_u + id * Rat(-1)).cols() == t.qdim;
            if (!commute || !unip) {
                jc_ok = false;
                jc_why = tag;
            }
        }
        const std::size_t N = find_N(t);
        if (n_ok) {
            const QMat tn = t.t_matrix.pow(N) + id * Rat(-1);
            if (stabilized_kernel(tn).cols() != t.qdim) {
                n_ok = false;
                n_why = tag + ": t^N - 1 is not nilpotent";
            }
            for (std::size_t p = 2; n_ok && p <= N; ++p) {
                if (N % p != 0) continue;
                bool prime = true;
                for (std::size_t q = 2; q * q <= p; ++q)
                    if (p % q == 0) prime = false;
                if (!prime) continue;
                const QMat smaller = t.t_matrix.pow(N / p) + id * Rat(-1);
                if (stabilized_kernel(smaller).cols() == t.qdim) {
                    n_ok = false;
                    n_why = tag + ": N/" + std::to_string(p) + " already works";
                }
            }
        }
        if (eig_ok) {
            // Totality across the pairwise-coprime cyclotomic kernels also
            // certifies that the squarefree product of the participating
            // cyclotomics annihilates t_ss, i.e. the semisimple part earns
            // its name.
            const EigenDecomposition dec = eigenspace_decomposition(t, jc, N);
            std::size_t total = 0;
            for (const EigenComponent& comp : dec.components) {
                total += comp.basis.cols();
                // Vanishing components need no second route: distinct
                // cyclotomics have independent generalized eigenspaces, so
                // once the nonzero ones fill qdim nothing is left over.
                if (comp.basis.cols() == 0) continue;
                const QMat via_t = stabilized_kernel(poly_of_matrix(comp.g, t.t_matrix));
                ++factor_checks;
                if (!same_subspace(comp.basis, via_t)) {
                    eig_ok = false;
                    eig_why = tag + ": component " + std::to_string(comp.d);
                }
            }
            if (eig_ok && total != t.qdim) {
                eig_ok = false;
                eig_why = tag + ": components sum to " + std::to_string(total);
            }
        }
        // The matrix-side semisimplicity test is priced by a Krylov minimal
        // polynomial, so sample it rather than running it on all 200.
        if (ss_ok && i % 4 == 0) {
            ++ss_checks;
            bool factors_squarefree = true;
            for (const LaurentPoly& f : t.invariant_factors)
                factors_squarefree = factors_squarefree && is_squarefree(f.body());
            if (is_semisimple(t) != factors_squarefree) {
                ss_ok = false;
                ss_why = tag;
            }
        }
    }
    record(out, "multiplicative jordan decomposition identities", jc_ok,
           jc_ok ? "200 random modules" : jc_why);
    record(out, "quasi-unipotence order is correct and minimal", n_ok,
           n_ok ? "200 random modules" : n_why);
    record(out, "generalized eigenspaces via t_ss match iterated kernels and fill qdim",
           eig_ok,
           eig_ok ? "200 random modules, " + std::to_string(factor_checks) +
                        " component checks"
                  : eig_why);
    record(out, "semisimplicity flag matches the invariant-factor squarefree test",
           ss_ok, ss_ok ? std::to_string(ss_checks) + " sampled modules" : ss_why);

    {
        bool ok = true;
        std::string why;
        std::size_t rows = 0;
        for (const NamedComplex& f : fixture_complexes()) {
            for (std::size_t j = 0; j <= f.complex.max_degree() && ok; ++j) {
                check_cancel(cancel);
                ++rows;
                if (!milnor_consistency(f.complex, j, cancel).consistent) {
                    ok = false;
                    why = f.name + " degree " + std::to_string(j);
                }
            }
        }
        record(out, "t=1 dimension splits as cokernel plus lower kernel", ok,
               ok ? std::to_string(rows) + " fixture degrees" : why);
    }
    {
        bool ok = true;
        std::string why;
        std::size_t points = 0;
        for (const NamedComplex& f : fixture_complexes()) {
            std::size_t N = 1;
            for (std::size_t j = 0; j <= f.complex.max_degree(); ++j)
                N = std::lcm(N, find_N(decompose(homology(f.complex, j, cancel),
                                                 cancel).second));
            std::vector<SpecializationPoint> candidates;
            for (int k = 0; k < 10; ++k)
                candidates.push_back(
                    SpecializationPoint::rational(rng.nonzero_rat(9, 9)));
            for (std::size_t d = 1; d <= N; ++d)
                candidates.push_back(SpecializationPoint::root_of_unity(d));
            for (std::size_t j = 0; j <= f.complex.max_degree() && ok; ++j) {
                const std::size_t generic = specialized_dimension(
                    f.complex, SpecializationPoint::generic(), j, cancel);
                std::size_t least = static_cast<std::size_t>(-1);
                for (const SpecializationPoint& p : candidates) {
                    check_cancel(cancel);
                    ++points;
                    const std::size_t dim =
                        specialized_dimension(f.complex, p, j, cancel);
                    least = std::min(least, dim);
                    if (dim < generic) {
                        ok = false;
                        why = f.name + " degree " + std::to_string(j) + " at " + p.str();
                    }
                }
                if (ok && least != generic) {
                    ok = false;
                    why = f.name + " degree " + std::to_string(j) +
                          ": minimum never reaches the generic value";
                }
            }
        }
        record(out, "generic dimension is the minimum over specializations", ok,
               ok ? std::to_string(points) + " evaluation points" : why);
    }
}

// ---- suite: thickening ----

inline void suite_thickening(Rng& rng, std::vector<PropertyResult>& out,
                             const CancelToken* cancel) {
    const std::vector<NamedAlgebra> fixtures = fixture_algebras(cancel);
    {
        bool ok = true;
        std::string why;
        for (const NamedAlgebra& f : fixtures) {
            long long chi = 0;
            for (std::size_t l = 0; l <= f.os.algebra.top_degree(); ++l)
                chi += (l % 2 ? -1 : 1) *
                       static_cast<long long>(f.os.algebra.dim_in_degree(l));
            for (std::size_t m = 1; m <= 5 && ok; ++m) {
                check_cancel(cancel);
                const ThickenedComplex t = thicken(f.os.algebra, f.eta, m, cancel);
                long long thick_chi = 0;
                for (std::size_t j = 0; j <= f.os.algebra.top_degree(); ++j)
                    thick_chi += (j % 2 ? -1 : 1) *
                                 static_cast<long long>(
                                     thickened_cohomology(t, j).qdim);
                if (thick_chi != static_cast<long long>(m) * chi) {
                    ok = false;
                    why = f.name + " at order " + std::to_string(m);
                }
            }
        }
        record(out, "euler characteristic scales linearly with the order (m <= 5)", ok,
               ok ? std::to_string(fixtures.size()) + " fixtures" : why);
    }
    {
        bool ok = true;
        std::string why;
        std::size_t checks = 0;
        for (const NamedAlgebra& f : fixtures) {
            for (int k = 0; k < 5 && ok; ++k) {
                const Rat c = rng.nonzero_rat(20, 7);
                EtaClass scaled = f.eta;
                for (Rat& x : scaled.coefficients) x = x * c;
                for (std::size_t j = 1; j <= f.os.algebra.top_degree() && ok; ++j) {
                    check_cancel(cancel);
                    ++checks;
                    if (eigen1(f.os.algebra, f.eta, j, 2, cancel) !=
                        eigen1(f.os.algebra, scaled, j, 2, cancel)) {
                        ok = false;
                        why = f.name + " degree " + std::to_string(j) + " scaled by " +
                              rat_str(c);
                    }
                }
            }
        }
        record(out, "eigenvalue-1 dimension is invariant under rescaling the class", ok,
               ok ? std::to_string(checks) + " scaled comparisons" : why);
    }
    {
        bool ok = true;
        std::string why;
        for (const NamedAlgebra& f : fixtures) {
            for (std::size_t j = 0; j <= f.os.algebra.top_degree() && ok; ++j) {
                check_cancel(cancel);
                const Eigen1Auto a = eigen1_auto(f.os.algebra, f.eta, j, cancel);
                if (eigen1(f.os.algebra, f.eta, j, a.m + 3, cancel) != a.value) {
                    ok = false;
                    why = f.name + " degree " + std::to_string(j);
                }
            }
        }
        record(out, "auto-selected order is stable three steps further", ok,
               ok ? std::to_string(fixtures.size()) + " fixtures" : why);
    }
    {
        // eigen1 computes the kernel both through s^m and through log(1+s)^m
        // and refuses to answer when they differ, so completing is the check.
        bool ok = true;
        std::string why;
        std::size_t checks = 0;
        for (const NamedAlgebra& f : fixtures) {
            for (std::size_t m = 1; m <= 3 && ok; ++m)
                for (std::size_t j = 0; j <= f.os.algebra.top_degree() && ok; ++j) {
                    check_cancel(cancel);
                    ++checks;
                    try {
                        eigen1(f.os.algebra, f.eta, j, m, cancel);
                    } catch (const Error& e) {
                        ok = false;
                        why = f.name + " degree " + std::to_string(j) + " order " +
                              std::to_string(m) + ": " + e.what();
                    }
                }
        }
        record(out, "kernels via s^m and via log(1+s)^m coincide", ok,
               ok ? std::to_string(checks) + " kernel pairs" : why);
    }
    {
        bool ok = true;
        std::string why;
        for (const NamedAlgebra& f : fixtures) {
            for (const auto& [small_m, big_m] :
                 std::vector<std::pair<std::size_t, std::size_t>>{{1, 2}, {2, 3}, {1, 3}}) {
                if (!ok) break;
                check_cancel(cancel);
                const ThickenedComplex ts = thicken(f.os.algebra, f.eta, small_m, cancel);
                const ThickenedComplex tb = thicken(f.os.algebra, f.eta, big_m, cancel);
                const auto down = phi_map(tb, ts);
                const auto up = psi_map(ts, tb);
                const long long gap = static_cast<long long>(big_m - small_m);
                const auto log_small =
                    multiplication_map(ts, log_series(small_m).pow(gap));
                const auto log_big = multiplication_map(tb, log_series(big_m).pow(gap));
                for (std::size_t j = 0; j <= f.os.algebra.top_degree() && ok; ++j) {
                    if (down.at(j) * up.at(j) != log_small.at(j) ||
                        up.at(j) * down.at(j) != log_big.at(j)) {
                        ok = false;
                        why = f.name + " orders " + std::to_string(small_m) + "->" +
                              std::to_string(big_m) + " degree " + std::to_string(j);
                    }
                }
                for (std::size_t j = 0; ok && j < f.os.algebra.top_degree(); ++j) {
                    if (tb.differentials.at(j) * up.at(j) !=
                            up.at(j + 1) * ts.differentials.at(j) ||
                        ts.differentials.at(j) * down.at(j) !=
                            down.at(j + 1) * tb.differentials.at(j)) {
                        ok = false;
                        why = f.name + " chain-map failure at degree " + std::to_string(j);
                    }
                }
            }
        }
        record(out, "projection/log-inclusion compose to log multiplication", ok,
               ok ? std::to_string(fixtures.size()) + " fixtures, 3 order pairs" : why);
    }
    {
        bool ok = true;
        std::string why;
        std::size_t built = 0;
        for (const NamedAlgebra& f : fixtures)
            for (std::size_t m = 1; m <= 4 && ok; ++m) {
                check_cancel(cancel);
                try {
                    thicken(f.os.algebra, f.eta, m, cancel);
                    ++built;
                } catch (const Error& e) {
                    ok = false;
                    why = f.name + " order " + std::to_string(m) + ": " + e.what();
                }
            }
        record(out, "thickened differential squares to zero on construction", ok,
               ok ? std::to_string(built) + " thickenings" : why);
    }
}

// ---- suite: cross ----

inline void suite_cross(std::vector<PropertyResult>& out, const CancelToken* cancel) {
    {
        bool ok = true;
        std::string why;
        for (std::size_t d = 3; d <= 6 && ok; ++d) {
            check_cancel(cancel);
            std::vector<std::string> gens;
            std::map<std::string, long long> eps;
            for (std::size_t i = 0; i < d; ++i) {
                gens.push_back("g" + std::to_string(i + 1));
                eps[gens.back()] = 1;
            }
            const AnalysisReport mod = analyze_complex(
                fox_complex(GroupPresentation(gens, {}, eps)), 1, "", "fox", cancel);
            const ArrangementReport arr =
                arrangement_report(points_on_line(d), 0, cancel);
            const bool chain_side = mod.degrees[0].free_rank == 0 &&
                                    mod.degrees[0].invariant_factors ==
                                        std::vector<std::string>{"t-1"} &&
                                    mod.degrees[0].eigen1_dim == 1 &&
                                    mod.degrees[1].free_rank == d - 1 &&
                                    mod.degrees[1].torsion_qdim == 0;
            const bool arr_side = arr.degrees.size() == 1 && arr.degrees[0].agree &&
                                  arr.degrees[0].eigen1_dim == 1 &&
                                  arr.degrees[0].formula_dim == 1;
            const bool duality =
                arr.degrees[0].eigen1_dim == mod.degrees[0].eigen1_dim;
            if (!chain_side || !arr_side || !duality) {
                ok = false;
                why = "d = " + std::to_string(d);
            }
        }
        record(out, "punctured-line family: chain, thickening, and formula agree", ok,
               ok ? "d = 3..6" : why);
    }
    {
        check_cancel(cancel);
        const AnalysisReport mod = analyze_complex(
            fox_complex(GroupPresentation(
                {"a", "b", "c"},
                {"a b c a c^-1 b^-1 a^-1 a^-1", "a b c b c^-1 b^-1 a^-1 b^-1"},
                {{"a", 1}, {"b", 1}, {"c", 1}})),
            1, "", "fox", cancel);
        const ArrangementReport arr = arrangement_report(concurrent3(), 1, cancel);
        bool ok = mod.degrees[1].torsion_qdim == 4 && mod.degrees[1].N == 3 &&
                  mod.degrees[1].char_poly ==
                      laurent_str(parse_laurent("t^4-t^3-t+1")) &&
                  mod.degrees[1].eigen1_dim == 2 && mod.degrees[0].eigen1_dim == 1;
        for (std::size_t j = 0; j < 2 && ok; ++j)
            ok = arr.degrees[j].agree &&
                 arr.degrees[j].eigen1_dim == mod.degrees[j].eigen1_dim &&
                 arr.degrees[j].formula_dim == mod.degrees[j].eigen1_dim;
        record(out, "concurrent lines: torsion unit-eigenspace matches both routes", ok,
               ok ? "degrees 0 and 1" : "disagreement in the three-route comparison");
    }
    {
        bool ok = true;
        std::string why;
        std::vector<std::pair<std::string, Arrangement>> arrangements;
        for (std::size_t d = 3; d <= 6; ++d)
            arrangements.emplace_back("points-" + std::to_string(d), points_on_line(d));
        arrangements.emplace_back("concurrent-lines", concurrent3());
        arrangements.emplace_back("triangle", triangle3());
        arrangements.emplace_back("parallel-pair", pencil_plus());
        for (const auto& [name, a] : arrangements) {
            check_cancel(cancel);
            const OSAlgebra os = build_os_algebra(a, cancel);
            if (poincare_by_deletion(a) != os.betti()) {
                ok = false;
                why = name;
                break;
            }
        }
        record(out, "deletion-restriction recursion reproduces the graded dimensions",
               ok, ok ? std::to_string(arrangements.size()) + " arrangements" : why);
    }
    {
        bool ok = true;
        std::string why;
        for (const NamedAlgebra& f : fixture_algebras(cancel)) {
            check_cancel(cancel);
            long long alt = 0;
            const std::vector<long long> betti = f.os.betti();
            for (std::size_t l = 0; l < betti.size(); ++l)
                alt += (l % 2 ? -1 : 1) * betti[l];
            const ThickenedComplex t = thicken(f.os.algebra, f.eta, 1, cancel);
            long long chi = 0;
            for (std::size_t j = 0; j <= f.os.algebra.top_degree(); ++j)
                chi += (j % 2 ? -1 : 1) *
                       static_cast<long long>(thickened_cohomology(t, j).qdim);
            if (chi != alt) {
                ok = false;
                why = f.name;
            }
        }
        record(out, "alternating betti sum equals the order-1 thickening euler number",
               ok, ok ? "" : why);
    }
}

}  // namespace detail

inline const std::vector<std::string>& verify_suites() {
    static const std::vector<std::string> names = {"algebra", "modules", "thickening",
                                                   "cross"};
    return names;
}

inline VerifyRun run_suite(const std::string& suite, std::uint64_t seed,
                           const CancelToken* cancel = nullptr) {
    VerifyRun run;
    run.suite = suite;
    run.seed = seed;
    detail::Rng rng(seed);
    if (suite == "algebra")
        detail::suite_algebra(rng, run.results, cancel);
    else if (suite == "modules")
        detail::suite_modules(rng, run.results, cancel);
    else if (suite == "thickening")
        detail::suite_thickening(rng, run.results, cancel);
    else if (suite == "cross")
        detail::suite_cross(run.results, cancel);
    else
        throw InvalidInput("unknown suite '" + suite +
                           "', expected algebra, modules, thickening, or cross");
    return run;
}

inline nlohmann::ordered_json to_json(const VerifyRun& r) {
    nlohmann::ordered_json out;
    out["tool"] = "verify";
    out["suite"] = r.suite;
    out["seed"] = r.seed;
    out["all_pass"] = r.all_pass();
    out["properties"] = nlohmann::ordered_json::array();
    for (const PropertyResult& p : r.results) {
        nlohmann::ordered_json e;
        e["name"] = p.name;
        e["pass"] = p.pass;
        e["detail"] = p.detail;
        out["properties"].push_back(std::move(e));
    }
    return out;
}

inline std::string render_text(const VerifyRun& r) {
    std::ostringstream o;
    o << "verify suite '" << r.suite << "', seed " << r.seed << "\n";
    for (const PropertyResult& p : r.results) {
        o << (p.pass ? "  [pass] " : "  [FAIL] ") << p.name;
        if (!p.detail.empty()) o << " (" << p.detail << ")";
        o << "\n";
    }
    o << (r.all_pass() ? "all properties hold\n" : "SOME PROPERTIES FAILED\n");
    return o.str();
}

}  // namespace alexmod
