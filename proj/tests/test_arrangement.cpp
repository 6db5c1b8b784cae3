#include <catch2/catch_amalgamated.hpp>

#include "alexmod/arrangement.hpp"

using namespace alexmod;

namespace {

Hyperplane H(const std::vector<long long>& n, Rat off, long long mult = 1) {
    Hyperplane h;
    for (long long x : n) h.normal.push_back(Rat(x));
    h.offset = std::move(off);
    h.multiplicity = mult;
    return h;
}

Arrangement points_on_line(const std::vector<Rat>& offsets) {
    Arrangement a;
    a.ambient_dim = 1;
    for (const Rat& c : offsets) a.hyperplanes.push_back(H({1}, c));
    return a;
}

// x = 0, y = 0, x = y: three lines through the origin
Arrangement concurrent3(long long m1 = 1, long long m2 = 1, long long m3 = 1) {
    Arrangement a;
    a.ambient_dim = 2;
    a.hyperplanes = {H({1, 0}, Rat(0), m1), H({0, 1}, Rat(0), m2),
                     H({1, -1}, Rat(0), m3)};
    return a;
}

// x = 0, y = 0, x + y = 1: a triangle, no common point
Arrangement triangle3() {
    Arrangement a;
    a.ambient_dim = 2;
    a.hyperplanes = {H({1, 0}, Rat(0)), H({0, 1}, Rat(0)), H({1, 1}, Rat(1))};
    return a;
}

// x = 0, x = 1, y = 0: a parallel pair plus a transversal
Arrangement pencil_plus() {
    Arrangement a;
    a.ambient_dim = 2;
    a.hyperplanes = {H({1, 0}, Rat(0)), H({1, 0}, Rat(1)), H({0, 1}, Rat(0))};
    return a;
}

std::vector<long long> betti_of(const Arrangement& a) {
    return build_os_algebra(a).betti();
}

}  // namespace

TEST_CASE("arrangement validation") {
    Arrangement a;
    a.ambient_dim = 0;
    CHECK_THROWS_AS(validate_arrangement(a), InvalidInput);

    a.ambient_dim = 2;
    a.hyperplanes = {H({1, 0, 0}, Rat(0))};
    CHECK_THROWS_AS(validate_arrangement(a), InvalidInput);

    a.hyperplanes = {H({0, 0}, Rat(1))};
    CHECK_THROWS_AS(validate_arrangement(a), DegenerateInput);

    // x = 0 twice, once rescaled
    a.hyperplanes = {H({1, 0}, Rat(0)), H({2, 0}, Rat(0))};
    CHECK_THROWS_AS(validate_arrangement(a), DegenerateInput);
    // but x = 0 and 2x = 1 are genuinely different
    a.hyperplanes = {H({1, 0}, Rat(0)), H({2, 0}, Rat(1))};
    validate_arrangement(a);
}

TEST_CASE("points on a line") {
    Arrangement a = points_on_line({Rat(0), Rat(1, 2), Rat(2)});
    OSAlgebra os = build_os_algebra(a);
    REQUIRE(os.rank == 1);
    REQUIRE(os.betti() == std::vector<long long>{1, 3});
    REQUIRE(os.nbc[1] ==
            std::vector<std::vector<std::size_t>>{{0}, {1}, {2}});
    REQUIRE(os.algebra.dim() == 4);
    // distinct points never meet, so generator products all vanish
    std::vector<Rat> e1(4, Rat(0)), e2(4, Rat(0));
    e1[1] = Rat(1);
    e2[2] = Rat(1);
    REQUIRE(os.algebra.multiply(e1, e2) == std::vector<Rat>(4, Rat(0)));
}

TEST_CASE("three concurrent lines") {
    OSAlgebra os = build_os_algebra(concurrent3());
    REQUIRE(os.rank == 2);
    REQUIRE(os.betti() == std::vector<long long>{1, 3, 2});
    REQUIRE(os.nbc[2] == std::vector<std::vector<std::size_t>>{{0, 1}, {0, 2}});

    const CDGA& k = os.algebra;
    REQUIRE(k.element(4).name == "e1_2");
    REQUIRE(k.element(5).name == "e1_3");
    // e2 e3 rewrites to e1_3 - e1_2 through the dependency of the three lines
    std::vector<Rat> expect(6, Rat(0));
    expect[4] = Rat(-1);
    expect[5] = Rat(1);
    REQUIRE(k.product(2, 3) == expect);
    expect[4] = Rat(1);
    expect[5] = Rat(-1);
    REQUIRE(k.product(3, 2) == expect);
    std::vector<Rat> b1(6, Rat(0));
    b1[4] = Rat(1);
    REQUIRE(k.product(1, 2) == b1);
}

TEST_CASE("generic triangle keeps all pair products") {
    OSAlgebra os = build_os_algebra(triangle3());
    REQUIRE(os.rank == 2);
    REQUIRE(os.betti() == std::vector<long long>{1, 3, 3});
    REQUIRE(os.nbc[2] ==
            std::vector<std::vector<std::size_t>>{{0, 1}, {0, 2}, {1, 2}});
    const CDGA& k = os.algebra;
    std::vector<Rat> b23(7, Rat(0));
    b23[*k.index_of("e2_3")] = Rat(1);
    REQUIRE(k.product(2, 3) == b23);
    // degree 3 dies: the three sides have no common point
    REQUIRE(k.product(1, *k.index_of("e2_3")) == std::vector<Rat>(7, Rat(0)));
}

TEST_CASE("parallel pair with a transversal") {
    OSAlgebra os = build_os_algebra(pencil_plus());
    REQUIRE(os.rank == 2);
    REQUIRE(os.betti() == std::vector<long long>{1, 3, 2});
    REQUIRE(os.nbc[2] == std::vector<std::vector<std::size_t>>{{0, 2}, {1, 2}});
    // the parallel pair multiplies to zero
    REQUIRE(os.algebra.product(1, 2) == std::vector<Rat>(6, Rat(0)));
}

TEST_CASE("three parallel lines") {
    Arrangement a;
    a.ambient_dim = 2;
    a.hyperplanes = {H({1, 0}, Rat(0)), H({1, 0}, Rat(1)), H({1, 0}, Rat(2))};
    OSAlgebra os = build_os_algebra(a);
    REQUIRE(os.rank == 1);
    REQUIRE(os.betti() == std::vector<long long>{1, 3});
}

TEST_CASE("ambient dimension above the rank") {
    Arrangement a;
    a.ambient_dim = 3;
    a.hyperplanes = {H({1, 0, 0}, Rat(0)), H({0, 1, 0}, Rat(0)),
                     H({1, -1, 0}, Rat(0))};
    OSAlgebra os = build_os_algebra(a);
    REQUIRE(os.rank == 2);
    REQUIRE(os.betti() == std::vector<long long>{1, 3, 2});
}

TEST_CASE("input order does not change the dimensions") {
    Arrangement a;
    a.ambient_dim = 2;
    a.hyperplanes = {H({0, 1}, Rat(0)), H({1, -1}, Rat(0)), H({1, 0}, Rat(0))};
    REQUIRE(betti_of(a) == betti_of(concurrent3()));
    ArrangementReport r1 = arrangement_report(a, 1);
    ArrangementReport r2 = arrangement_report(concurrent3(), 1);
    for (std::size_t j = 0; j <= 1; ++j) {
        REQUIRE(r1.degrees[j].eigen1_dim == r2.degrees[j].eigen1_dim);
        REQUIRE(r1.degrees[j].formula_dim == r2.degrees[j].formula_dim);
    }
}

TEST_CASE("empty arrangement") {
    Arrangement a;
    a.ambient_dim = 2;
    OSAlgebra os = build_os_algebra(a);
    REQUIRE(os.rank == 0);
    REQUIRE(os.betti() == std::vector<long long>{1});
    CHECK_THROWS_AS(arrangement_report(a, 0), HypothesesNotMet);
}

TEST_CASE("counting route matches the recursive one") {
    std::vector<Arrangement> fixtures = {concurrent3(), triangle3(), pencil_plus()};
    for (long long d = 4; d <= 6; ++d) {
        std::vector<Rat> offs;
        for (long long i = 0; i < d; ++i) offs.push_back(Rat(i));
        fixtures.push_back(points_on_line(offs));
    }
    {
        // four lines in general position
        Arrangement a;
        a.ambient_dim = 2;
        a.hyperplanes = {H({1, 0}, Rat(0)), H({0, 1}, Rat(0)), H({1, 1}, Rat(1)),
                         H({1, -1}, Rat(3))};
        fixtures.push_back(a);
        REQUIRE(betti_of(a) == std::vector<long long>{1, 4, 6});
    }
    {
        // concurrent triple plus a line parallel to one of them
        Arrangement a;
        a.ambient_dim = 2;
        a.hyperplanes = {H({1, 0}, Rat(0)), H({0, 1}, Rat(0)), H({1, -1}, Rat(0)),
                         H({1, 0}, Rat(1))};
        fixtures.push_back(a);
        REQUIRE(betti_of(a) == std::vector<long long>{1, 4, 4});
    }
    for (const Arrangement& a : fixtures)
        REQUIRE(poincare_by_deletion(a) == betti_of(a));
}

TEST_CASE("report for three points") {
    ArrangementReport r = arrangement_report(points_on_line({Rat(0), Rat(1), Rat(2)}), 0);
    REQUIRE(r.rank == 1);
    REQUIRE(r.betti == std::vector<long long>{1, 3});
    REQUIRE(r.degrees.size() == 1);
    REQUIRE(r.degrees[0].eigen1_dim == 1);
    REQUIRE(r.degrees[0].formula_dim == 1);
    REQUIRE(r.degrees[0].agree);
    REQUIRE(r.degrees[0].purity_label ==
            "pure of type (0,0): Q^1 with trivial t-action");
}

TEST_CASE("report for three concurrent lines") {
    ArrangementReport r = arrangement_report(concurrent3(), 1);
    REQUIRE(r.rank == 2);
    REQUIRE(r.degrees.size() == 2);
    REQUIRE(r.degrees[0].eigen1_dim == 1);
    REQUIRE(r.degrees[0].formula_dim == 1);
    REQUIRE(r.degrees[0].agree);
    REQUIRE(r.degrees[1].eigen1_dim == 2);
    REQUIRE(r.degrees[1].formula_dim == 2);
    REQUIRE(r.degrees[1].agree);
    REQUIRE(r.degrees[1].purity_label ==
            "pure of type (1,1): Q^2 with trivial t-action");
}

TEST_CASE("report for the other plane fixtures") {
    {
        ArrangementReport r = arrangement_report(triangle3(), 1);
        REQUIRE(r.degrees[0].eigen1_dim == 1);
        REQUIRE(r.degrees[1].eigen1_dim == 2);
        REQUIRE(r.degrees[0].agree);
        REQUIRE(r.degrees[1].agree);
    }
    {
        ArrangementReport r = arrangement_report(pencil_plus(), 1);
        REQUIRE(r.degrees[0].eigen1_dim == 1);
        REQUIRE(r.degrees[1].eigen1_dim == 2);
        REQUIRE(r.degrees[1].formula_dim == 2);
        REQUIRE(r.degrees[0].agree);
        REQUIRE(r.degrees[1].agree);
    }
    {
        Arrangement a;
        a.ambient_dim = 2;
        a.hyperplanes = {H({1, 0}, Rat(0)), H({0, 1}, Rat(0)), H({1, -1}, Rat(0)),
                         H({1, 0}, Rat(1))};
        ArrangementReport r = arrangement_report(a, 1);
        REQUIRE(r.degrees[0].eigen1_dim == 1);
        REQUIRE(r.degrees[1].eigen1_dim == 3);
        REQUIRE(r.degrees[1].formula_dim == 3);
        REQUIRE(r.degrees[0].agree);
        REQUIRE(r.degrees[1].agree);
    }
}

TEST_CASE("report hypotheses") {
    CHECK_THROWS_AS(arrangement_report(concurrent3(2, 2, 2), 1), HypothesesNotMet);
    CHECK_THROWS_AS(arrangement_report(concurrent3(0, 1, 1), 1), HypothesesNotMet);
    CHECK_THROWS_AS(arrangement_report(concurrent3(-1, 1, 1), 1), HypothesesNotMet);
    CHECK_THROWS_AS(arrangement_report(concurrent3(), 2), HypothesesNotMet);

    // unequal weights with trivial gcd are allowed and still match the count
    OSAlgebra os = build_os_algebra(concurrent3(2, 1, 1));
    REQUIRE(eta_from_multiplicities(os).coefficients ==
            std::vector<Rat>{Rat(2), Rat(1), Rat(1)});
    ArrangementReport r = arrangement_report(concurrent3(2, 1, 1), 1);
    REQUIRE(r.degrees[0].eigen1_dim == 1);
    REQUIRE(r.degrees[1].eigen1_dim == 2);
    REQUIRE(r.degrees[0].agree);
    REQUIRE(r.degrees[1].agree);
}

TEST_CASE("monomial cap") {
    std::vector<Rat> offs;
    for (long long i = 0; i < 91; ++i) offs.push_back(Rat(i));
    CHECK_THROWS_AS(build_os_algebra(points_on_line(offs)), DimensionCapExceeded);
}
