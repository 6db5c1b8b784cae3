#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "alexmod/modules.hpp"

using namespace alexmod;

namespace {

LaurentPoly L(const std::string& s) { return parse_laurent(s); }

TorsionModule T(const std::vector<std::string>& factors) {
    std::vector<LaurentPoly> fs;
    for (const auto& f : factors) fs.push_back(L(f));
    return torsion_from_factors(fs);
}

QMat random_invertible(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<int> num(-3, 3);
    while (true) {
        QMat m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m.at(i, j) = Rat(num(rng));
        if (rank(m) == n) return m;
    }
}

}  // namespace

TEST_CASE("companion matrix convention") {
    QMat c = companion_matrix(UniPoly({Rat(1), Rat(-2), Rat(1)}));  // (x-1)^2
    QMat expected = QMat::from_rows({{Rat(0), Rat(-1)}, {Rat(1), Rat(2)}});
    REQUIRE(c == expected);
    REQUIRE(char_poly(c) == UniPoly({Rat(1), Rat(-2), Rat(1)}));
}

TEST_CASE("decompose a single torsion relation") {
    PresentedRModule m(1, RMatrix::from_rows({{L("t-1")}}));
    auto [free_rank, torsion] = decompose(m);
    REQUIRE(free_rank == 0);
    REQUIRE(torsion.invariant_factors == std::vector<LaurentPoly>{L("t-1")});
    REQUIRE(torsion.qdim == 1);
    REQUIRE(torsion.t_matrix == QMat::identity(1));
}

TEST_CASE("decompose with no relations is free") {
    PresentedRModule m(2, RMatrix(2, 0));
    auto [free_rank, torsion] = decompose(m);
    REQUIRE(free_rank == 2);
    REQUIRE(torsion.qdim == 0);
    REQUIRE(torsion.invariant_factors.empty());
}

TEST_CASE("decompose merges coprime diagonal relations") {
    PresentedRModule m(2, RMatrix::from_rows({{L("t-1"), LaurentPoly()},
                                              {LaurentPoly(), L("t^2+t+1")}}));
    auto [free_rank, torsion] = decompose(m);
    REQUIRE(free_rank == 0);
    REQUIRE(torsion.invariant_factors == std::vector<LaurentPoly>{L("t^3-1")});
    REQUIRE(torsion.qdim == 3);
    REQUIRE(char_poly(torsion.t_matrix) == L("t^3-1").as_poly());
}

TEST_CASE("decompose rejects oversized torsion") {
    PresentedRModule m(1, RMatrix::from_rows({{L("t^5-1")}}));
    REQUIRE_THROWS_AS(decompose(m, nullptr, 4), DimensionCapExceeded);
}

TEST_CASE("presentation shape is validated") {
    REQUIRE_THROWS_AS(PresentedRModule(3, RMatrix(2, 2)), InvalidInput);
}

TEST_CASE("torsion module construction checks its inputs") {
    REQUIRE_THROWS_AS(torsion_from_factors({LaurentPoly()}), Error);
    REQUIRE_THROWS_AS(torsion_from_factors({L("2")}), Error);
    REQUIRE_THROWS_AS(torsion_from_factors({L("2*t-2")}), Error);  // not normalized
    TorsionModule t = T({"t-1", "t^2-1"});
    REQUIRE(t.qdim == 3);
    REQUIRE(torsion_order_poly(t) == L("t-1").as_poly() * L("t^2-1").as_poly());
}

TEST_CASE("find_N on unipotent and cyclotomic modules") {
    REQUIRE(find_N(T({"t^2-2*t+1"})) == 1);  // (t-1)^2
    REQUIRE(find_N(T({"t^2+t+1"})) == 3);
    REQUIRE(find_N(T({"t^3-1"})) == 3);
    REQUIRE(find_N(T({"t-1", "t^2-1"})) == 2);
    REQUIRE(find_N(T({})) == 1);
}

TEST_CASE("find_N rejects non-cyclotomic eigenvalues") {
    try {
        find_N(T({"t^2-2"}));
        FAIL("expected NotQuasiUnipotent");
    } catch (const NotQuasiUnipotent& e) {
        REQUIRE(e.offending_factor == "t^2-2");
    }
    // A mixed module fails too, and the witness is only the bad part.
    try {
        find_N(T({"t^3-t^2-2*t+2"}));  // (t-1)(t^2-2)
        FAIL("expected NotQuasiUnipotent");
    } catch (const NotQuasiUnipotent& e) {
        REQUIRE(e.offending_factor == "t^2-2");
    }
}

TEST_CASE("find_N returns the least annihilating order") {
    // Brute force: for each smaller n, (t^n - 1) must not be nilpotent.
    for (const auto& t : {T({"t^2-1"}), T({"t^4-1"}), T({"t^2+1", "t^4-1"}),
                          T({"t^2+t+1"}), T({"t^4+t^3+t^2+t+1"}), T({"t^6-1"}),
                          T({"t^4-t^2+1"})}) {
        std::size_t n = find_N(t);
        REQUIRE((t.t_matrix.pow(n) - QMat::identity(t.qdim)).pow(t.qdim + 1).is_zero());
        for (std::size_t smaller = 1; smaller < n; ++smaller) {
            QMat b = t.t_matrix.pow(smaller) - QMat::identity(t.qdim);
            REQUIRE_FALSE(b.pow(t.qdim + 1).is_zero());
        }
    }
}

TEST_CASE("log of the twisted action") {
    TorsionModule t1 = T({"t-1"});
    REQUIRE(log_tN_action(t1, 1, 1) == QMat(1, 1));

    TorsionModule t2 = T({"t^2-2*t+1"});
    QMat lg = log_tN_action(t2, 1, 2);
    REQUIRE(lg == t2.t_matrix - QMat::identity(2));
    REQUIRE(lg.pow(2).is_zero());

    TorsionModule t3 = T({"t^2+t+1"});
    REQUIRE(log_tN_action(t3, 3, 1) == QMat(2, 2));

    REQUIRE_THROWS_AS(log_tN_action(t2, 1, 1), NotAnnihilated);
    REQUIRE_THROWS_AS(log_tN_action(t3, 1, 5), NotAnnihilated);
}

TEST_CASE("log commutes with t and is nilpotent") {
    for (const auto& t : {T({"t^2-2*t+1", "t^4-2*t^3+2*t^2-2*t+1"}), T({"t^3-1"}),
                          T({"t^6-2*t^3+1"})}) {
        std::size_t n = find_N(t);
        QMat lg = log_tN_action(t, n, t.qdim + 1);
        REQUIRE(lg.pow(t.qdim + 1).is_zero());
        REQUIRE(lg * t.t_matrix == t.t_matrix * lg);
    }
}

TEST_CASE("jordan-chevalley of a semisimple module is trivial") {
    TorsionModule t = T({"t^3-1"});
    JCDecomp jc = jordan_chevalley(t);
    REQUIRE(jc.t_ss == t.t_matrix);
    REQUIRE(jc.t_u == QMat::identity(3));
}

TEST_CASE("jordan-chevalley of a unipotent block") {
    TorsionModule t = T({"t^2-2*t+1"});
    JCDecomp jc = jordan_chevalley(t);
    REQUIRE(jc.t_ss == QMat::identity(2));
    REQUIRE(jc.t_u == t.t_matrix);
}

TEST_CASE("jordan-chevalley of a squared cyclotomic block") {
    // (t^2+t+1)^2 = t^4+2t^3+3t^2+2t+1
    TorsionModule t = T({"t^4+2*t^3+3*t^2+2*t+1"});
    JCDecomp jc = jordan_chevalley(t);
    QMat ss = jc.t_ss;
    REQUIRE((ss * ss + ss + QMat::identity(4)).is_zero());
    REQUIRE(jc.t_u == inverse(jc.t_ss) * t.t_matrix);
    REQUIRE((jc.t_u - QMat::identity(4)).pow(2).is_zero());
}

TEST_CASE("jordan-chevalley invariants on mixed modules") {
    for (const auto& t : {T({"t^2-2*t+1"}), T({"t^5-t^4-t+1"}), T({"t^4+2*t^3+3*t^2+2*t+1"}),
                          T({"t-1", "t^3-t^2-t+1", "t^3-t^2-t+1"})}) {
        JCDecomp jc = jordan_chevalley(t);
        REQUIRE(jc.t_ss * jc.t_u == t.t_matrix);
        REQUIRE(jc.t_u * jc.t_ss == t.t_matrix);
        REQUIRE(is_squarefree(minimal_polynomial(jc.t_ss)));
        REQUIRE((jc.t_u - QMat::identity(t.qdim)).pow(t.qdim).is_zero());
    }
}

TEST_CASE("eigenspace decomposition of a cyclic order-3 module") {
    TorsionModule t = T({"t^3-1"});
    JCDecomp jc = jordan_chevalley(t);
    EigenDecomposition dec = eigenspace_decomposition(t, jc, find_N(t));
    REQUIRE(dec.components.size() == 2);
    REQUIRE(dec.components[0].d == 1);
    REQUIRE(dec.components[0].basis.cols() == 1);
    REQUIRE(dec.components[1].d == 3);
    REQUIRE(dec.components[1].basis.cols() == 2);
    REQUIRE(dec.total_dim() == 3);
}

TEST_CASE("eigenspace decomposition of a unipotent module") {
    TorsionModule t = T({"t^2-2*t+1"});
    EigenDecomposition dec = eigenspace_decomposition(t, jordan_chevalley(t), find_N(t));
    REQUIRE(dec.components.size() == 1);
    REQUIRE(dec.components[0].d == 1);
    REQUIRE(dec.components[0].basis.cols() == 2);
}

TEST_CASE("eigenspace decomposition of the trivial module") {
    TorsionModule t = T({});
    EigenDecomposition dec = eigenspace_decomposition(t, jordan_chevalley(t), 1);
    REQUIRE(dec.components.size() == 1);
    REQUIRE(dec.components[0].basis.cols() == 0);
}

TEST_CASE("eigenspaces are independent t-invariant and exhaustive") {
    for (const auto& t : {T({"t^3-1", "t^6-2*t^3+1"}), T({"t^4-1"}), T({"t^2-2*t+1"})}) {
        JCDecomp jc = jordan_chevalley(t);
        std::size_t n = find_N(t);
        EigenDecomposition dec = eigenspace_decomposition(t, jc, n);
        REQUIRE(dec.total_dim() == t.qdim);
        std::vector<QVec> all;
        for (const auto& comp : dec.components) {
            REQUIRE(comp.g == cyclotomic(comp.d));
            REQUIRE(n % comp.d == 0);
            for (std::size_t j = 0; j < comp.basis.cols(); ++j) all.push_back(comp.basis.col(j));
            if (comp.basis.cols() > 0) {
                // t-invariance of the component.
                QMat restricted = restrict_to_invariant(t.t_matrix, comp.basis);
                REQUIRE(restricted.rows() == comp.basis.cols());
            }
        }
        QMat joint = QMat::from_cols(t.qdim, all);
        REQUIRE(rank(joint) == t.qdim);
    }
}

TEST_CASE("generalized eigenspaces match high kernel powers") {
    // ker g(t_ss) = ker g(t)^qdim, exactly.
    for (const auto& t : {T({"t^6-2*t^3+1"}), T({"t^2-2*t+1", "t^4-2*t^2+1"})}) {
        JCDecomp jc = jordan_chevalley(t);
        EigenDecomposition dec = eigenspace_decomposition(t, jc, find_N(t));
        for (const auto& comp : dec.components) {
            QMat high = kernel_basis(poly_of_matrix(comp.g, t.t_matrix).pow(t.qdim));
            REQUIRE(same_subspace(comp.basis, high));
        }
    }
}

TEST_CASE("semisimplicity detection") {
    REQUIRE(is_semisimple(T({"t^3-1"})));
    REQUIRE_FALSE(is_semisimple(T({"t^2-2*t+1"})));
    REQUIRE(is_semisimple(T({})));

    TorsionModule t = T({"t^2-2*t+1"});
    JCDecomp jc = jordan_chevalley(t);
    REQUIRE_FALSE(is_semisimple_on(t, jc, cyclotomic(1)));

    // (t-1)^2 (t^2+t+1): bad at 1, clean at the primitive cube roots.
    TorsionModule mixed = T({"t^4-t^3-t+1"});
    REQUIRE(is_semisimple_on(mixed, cyclotomic(3)));
    REQUIRE_FALSE(is_semisimple_on(mixed, cyclotomic(1)));
    // A factor not dividing the order polynomial has empty component.
    REQUIRE(is_semisimple_on(mixed, cyclotomic(5)));
}

TEST_CASE("reported data is conjugation invariant") {
    std::mt19937_64 rng(5);
    TorsionModule t = T({"t-1", "t^4-t^3-t+1"});
    std::size_t n0 = find_N(t);
    EigenDecomposition d0 = eigenspace_decomposition(t, jordan_chevalley(t), n0);
    for (int trial = 0; trial < 5; ++trial) {
        QMat g = random_invertible(rng, t.qdim);
        TorsionModule conj = t;
        conj.t_matrix = inverse(g) * t.t_matrix * g;
        REQUIRE(find_N(conj) == n0);
        REQUIRE(is_semisimple(conj) == is_semisimple(t));
        EigenDecomposition d1 = eigenspace_decomposition(conj, jordan_chevalley(conj), n0);
        for (std::size_t i = 0; i < d0.components.size(); ++i)
            REQUIRE(d0.components[i].basis.cols() == d1.components[i].basis.cols());
    }
}
