#include <catch2/catch_amalgamated.hpp>

#include "alexmod/cdga.hpp"
#include "alexmod/thicken.hpp"

using namespace alexmod;

namespace {

// One degree-0 unit, three degree-1 generators, every product of generators
// zero. Models three points on a line.
CDGA three_points() {
    return CDGA({{"u", 0}, {"e1", 1}, {"e2", 1}, {"e3", 1}}, 0, {});
}

std::vector<Rat> unit_vec(std::size_t n, std::size_t i, Rat c = Rat(1)) {
    std::vector<Rat> v(n, Rat(0));
    v[i] = c;
    return v;
}

// u, e1, e2, e3, b1, b2 with e1 e2 = b1, e1 e3 = b2, e2 e3 = b2 - b1.
// Models three concurrent lines in the plane.
CDGA concurrent_lines() {
    std::vector<BasisElement> basis = {{"u", 0},    {"e1", 1},   {"e2", 1},
                                       {"e3", 1},   {"e1_2", 2}, {"e1_3", 2}};
    std::map<std::pair<std::size_t, std::size_t>, std::vector<Rat>> prod;
    auto set = [&](std::size_t i, std::size_t j, std::vector<Rat> v) {
        std::vector<Rat> neg(v.size());
        for (std::size_t l = 0; l < v.size(); ++l) neg[l] = -v[l];
        prod[{i, j}] = std::move(v);
        prod[{j, i}] = std::move(neg);
    };
    set(1, 2, unit_vec(6, 4));
    set(1, 3, unit_vec(6, 5));
    std::vector<Rat> e23(6, Rat(0));
    e23[4] = Rat(-1);
    e23[5] = Rat(1);
    set(2, 3, e23);
    return CDGA(std::move(basis), 0, std::move(prod));
}

EtaClass eta111() { return EtaClass{{Rat(1), Rat(1), Rat(1)}}; }

long long euler_from_cohomology(const ThickenedComplex& t) {
    long long chi = 0;
    for (std::size_t j = 0; j <= t.underlying.top_degree(); ++j) {
        const long long q = static_cast<long long>(thickened_cohomology(t, j).qdim);
        chi += j % 2 == 0 ? q : -q;
    }
    return chi;
}

long long euler_from_spaces(const ThickenedComplex& t) {
    long long chi = 0;
    for (std::size_t j = 0; j <= t.underlying.top_degree(); ++j) {
        const long long q = static_cast<long long>(t.space_dim(j));
        chi += j % 2 == 0 ? q : -q;
    }
    return chi;
}

}  // namespace

TEST_CASE("algebra structure validation") {
    CHECK_THROWS_AS(CDGA({{"u", 0}, {"u", 1}}, 0, {}), InvalidInput);
    CHECK_THROWS_AS(CDGA({{"", 0}}, 0, {}), InvalidInput);
    CHECK_THROWS_AS(CDGA({{"u", 0}}, 3, {}), InvalidInput);
    CHECK_THROWS_AS(CDGA({{"u", 1}}, 0, {}), InvalidInput);
    {
        std::map<std::pair<std::size_t, std::size_t>, std::vector<Rat>> prod;
        prod[{0, 5}] = {Rat(0)};
        CHECK_THROWS_AS(CDGA({{"u", 0}}, 0, std::move(prod)), InvalidInput);
    }
    {
        std::map<std::pair<std::size_t, std::size_t>, std::vector<Rat>> prod;
        prod[{0, 0}] = {Rat(1), Rat(0), Rat(0)};  // wrong length for a 2-dim algebra
        CHECK_THROWS_AS(CDGA({{"u", 0}, {"a", 1}}, 0, std::move(prod)), InvalidInput);
    }
}

TEST_CASE("algebra law validation") {
    // a*b lands in degree 1 instead of 2
    {
        std::map<std::pair<std::size_t, std::size_t>, std::vector<Rat>> prod;
        prod[{1, 2}] = unit_vec(3, 1);
        CHECK_THROWS_AS(CDGA({{"u", 0}, {"a", 1}, {"b", 1}}, 0, std::move(prod)),
                        NotAComplex);
    }
    // odd times odd must anticommute
    {
        std::map<std::pair<std::size_t, std::size_t>, std::vector<Rat>> prod;
        prod[{1, 2}] = unit_vec(4, 3);
        prod[{2, 1}] = unit_vec(4, 3);
        CHECK_THROWS_AS(
            CDGA({{"u", 0}, {"a", 1}, {"b", 1}, {"w", 2}}, 0, std::move(prod)),
            NotAComplex);
    }
    // same data with the sign fixed is accepted
    {
        std::map<std::pair<std::size_t, std::size_t>, std::vector<Rat>> prod;
        prod[{1, 2}] = unit_vec(4, 3);
        prod[{2, 1}] = unit_vec(4, 3, Rat(-1));
        CDGA ok({{"u", 0}, {"a", 1}, {"b", 1}, {"w", 2}}, 0, std::move(prod));
        REQUIRE(ok.multiply(unit_vec(4, 1), unit_vec(4, 2)) == unit_vec(4, 3));
    }
    // (a*b)*c = p*c = q but a*(b*c) = 0
    {
        std::map<std::pair<std::size_t, std::size_t>, std::vector<Rat>> prod;
        prod[{1, 2}] = unit_vec(6, 4);
        prod[{2, 1}] = unit_vec(6, 4, Rat(-1));
        prod[{4, 3}] = unit_vec(6, 5);
        prod[{3, 4}] = unit_vec(6, 5);
        CHECK_THROWS_AS(
            CDGA({{"u", 0}, {"a", 1}, {"b", 1}, {"c", 1}, {"p", 2}, {"q", 3}}, 0,
                 std::move(prod)),
            NotAComplex);
    }
    // unit row must be the identity
    {
        std::map<std::pair<std::size_t, std::size_t>, std::vector<Rat>> prod;
        prod[{0, 1}] = unit_vec(2, 1, Rat(2));
        CHECK_THROWS_AS(CDGA({{"u", 0}, {"a", 1}}, 0, std::move(prod)), NotAComplex);
    }
}

TEST_CASE("accessors and bilinear products") {
    CDGA k = concurrent_lines();
    REQUIRE(k.dim() == 6);
    REQUIRE(k.dim_in_degree(0) == 1);
    REQUIRE(k.dim_in_degree(1) == 3);
    REQUIRE(k.dim_in_degree(2) == 2);
    REQUIRE(k.top_degree() == 2);
    REQUIRE(k.degree_indices(1) == std::vector<std::size_t>{1, 2, 3});
    REQUIRE(k.index_of("e1_3") == std::size_t{5});
    REQUIRE_FALSE(k.index_of("nope").has_value());

    // (e1+e2+e3)*e2 = 2 b1 - b2
    std::vector<Rat> eta = eta111().full_vector(k);
    std::vector<Rat> expect(6, Rat(0));
    expect[4] = Rat(2);
    expect[5] = Rat(-1);
    REQUIRE(k.multiply(eta, unit_vec(6, 2)) == expect);
    // and against e3: 2 b2 - b1
    expect[4] = Rat(-1);
    expect[5] = Rat(2);
    REQUIRE(k.multiply(eta, unit_vec(6, 3)) == expect);
    // eta*eta = 0 in characteristic zero
    REQUIRE(k.multiply(eta, eta) == std::vector<Rat>(6, Rat(0)));
}

TEST_CASE("linear combination parsing") {
    CDGA k = three_points();
    {
        std::vector<Rat> v = parse_combination("3/2*e1 - e2 + u", k);
        REQUIRE(v == std::vector<Rat>{Rat(1), Rat(3, 2), Rat(-1), Rat(0)});
    }
    REQUIRE(parse_combination("0", k) == std::vector<Rat>(4, Rat(0)));
    REQUIRE(parse_combination("  0  ", k) == std::vector<Rat>(4, Rat(0)));
    REQUIRE(parse_combination("0*e1", k) == std::vector<Rat>(4, Rat(0)));
    REQUIRE(parse_combination("-e1", k) ==
            std::vector<Rat>{Rat(0), Rat(-1), Rat(0), Rat(0)});
    REQUIRE(parse_combination("e1+e1", k) ==
            std::vector<Rat>{Rat(0), Rat(2), Rat(0), Rat(0)});

    CHECK_THROWS_AS(parse_combination("", k), ParseError);
    CHECK_THROWS_AS(parse_combination("e9", k), ParseError);
    CHECK_THROWS_AS(parse_combination("3 e1", k), ParseError);
    CHECK_THROWS_AS(parse_combination("3/0*e1", k), ParseError);
    try {
        parse_combination("e1 e2", k);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.pos == 3);
    }
}

TEST_CASE("degree-1 class parsing") {
    CDGA k = three_points();
    EtaClass eta = parse_eta("e1 + e2 + e3", k);
    REQUIRE(eta.coefficients == std::vector<Rat>{Rat(1), Rat(1), Rat(1)});
    EtaClass scaled = parse_eta("2*e1 - 1/3*e3", k);
    REQUIRE(scaled.coefficients == std::vector<Rat>{Rat(2), Rat(0), Rat(-1, 3)});
    CHECK_THROWS_AS(parse_eta("u", k), InvalidInput);
    CHECK_THROWS_AS(parse_eta("e1 + u", k), InvalidInput);
    REQUIRE(parse_eta("0", k).coefficients == std::vector<Rat>(3, Rat(0)));

    EtaClass wrong{{Rat(1)}};
    CHECK_THROWS_AS(wrong.full_vector(k), InvalidInput);
}

TEST_CASE("thickening differentials for three points") {
    CDGA k = three_points();
    ThickenedComplex t = thicken(k, eta111(), 2);
    REQUIRE(t.space_dim(0) == 2);
    REQUIRE(t.space_dim(1) == 6);

    // u⊗1 -> (e1+e2+e3)⊗s, u⊗s -> 0
    QMat d0 = QMat(6, 2);
    d0.at(1, 0) = Rat(1);
    d0.at(3, 0) = Rat(1);
    d0.at(5, 0) = Rat(1);
    REQUIRE(t.differentials.at(0) == d0);
    REQUIRE(t.differentials.at(1) == QMat(0, 6));

    ThickenedComplex t1 = thicken(k, eta111(), 1);
    REQUIRE(t1.differentials.at(0) == QMat(3, 1));  // s acts as zero at order 1
}

TEST_CASE("thickening cohomology dimensions for three points") {
    CDGA k = three_points();
    for (std::size_t m = 1; m <= 5; ++m) {
        ThickenedComplex t = thicken(k, eta111(), m);
        ThickenedCohomology h0 = thickened_cohomology(t, 0);
        ThickenedCohomology h1 = thickened_cohomology(t, 1);
        REQUIRE(h0.qdim == 1);
        REQUIRE(h1.qdim == 2 * m + 1);
        REQUIRE(euler_from_spaces(t) == -2 * static_cast<long long>(m));
        REQUIRE(euler_from_cohomology(t) == -2 * static_cast<long long>(m));
    }
    // nilpotency structure at m = 2: two chains of length 2 and one survivor
    ThickenedComplex t = thicken(k, eta111(), 2);
    REQUIRE(thickened_cohomology(t, 0).s_profile == std::vector<std::size_t>{1});
    REQUIRE(thickened_cohomology(t, 1).s_profile == std::vector<std::size_t>{2, 2, 1});
}

TEST_CASE("zero class thickens to a free pile") {
    CDGA k = three_points();
    EtaClass zero{{Rat(0), Rat(0), Rat(0)}};
    ThickenedComplex t = thicken(k, zero, 3);
    REQUIRE(t.differentials.at(0).is_zero());
    REQUIRE(thickened_cohomology(t, 0).qdim == 3);
    REQUIRE(thickened_cohomology(t, 1).qdim == 9);
    REQUIRE(thickened_cohomology(t, 1).s_profile ==
            std::vector<std::size_t>{3, 3, 3});
    // nothing is annihilated by s^m on a free pile
    REQUIRE(eigen1(k, zero, 1, 2) == 0);
}

TEST_CASE("thickening input errors") {
    CDGA k = three_points();
    CHECK_THROWS_AS(thicken(k, eta111(), 0), InvalidInput);
    CHECK_THROWS_AS(thicken(k, eta111(), dim_cap() / 4 + 1), DimensionCapExceeded);
    EtaClass wrong{{Rat(1)}};
    CHECK_THROWS_AS(thicken(k, wrong, 2), InvalidInput);
}

TEST_CASE("kernel dimensions for three points") {
    CDGA k = three_points();
    for (std::size_t m = 1; m <= 4; ++m) {
        REQUIRE(eigen1(k, eta111(), 1, m) == 1);
        REQUIRE(eigen1(k, eta111(), 0, m) == 0);
    }
    Eigen1Auto a1 = eigen1_auto(k, eta111(), 1);
    REQUIRE(a1.value == 1);
    REQUIRE(a1.m == 1);
    Eigen1Auto a2 = eigen1_auto(k, eta111(), 2);  // no degree-2 part at all
    REQUIRE(a2.value == 0);
}

TEST_CASE("kernel dimensions are scale invariant") {
    CDGA k = three_points();
    for (const Rat& c : {Rat(2), Rat(-1), Rat(7, 3), Rat(-5), Rat(100)}) {
        EtaClass scaled{{c, c, c}};
        REQUIRE(eigen1(k, scaled, 1, 2) == 1);
    }
}

TEST_CASE("kernel dimensions for concurrent lines") {
    CDGA k = concurrent_lines();
    EtaClass eta = eta111();
    for (std::size_t m = 1; m <= 3; ++m) {
        REQUIRE(eigen1(k, eta, 1, m) == 1);
        REQUIRE(eigen1(k, eta, 2, m) == 2);
    }
    Eigen1Auto a1 = eigen1_auto(k, eta, 1);
    REQUIRE(a1.value == 1);
    Eigen1Auto a2 = eigen1_auto(k, eta, 2);
    REQUIRE(a2.value == 2);
    REQUIRE(a2.m == 1);

    for (std::size_t m = 1; m <= 5; ++m) {
        ThickenedComplex t = thicken(k, eta, m);
        REQUIRE(euler_from_cohomology(t) == 0);
        REQUIRE(thickened_cohomology(t, 0).qdim == 1);
        REQUIRE(thickened_cohomology(t, 1).qdim == 3);
        REQUIRE(thickened_cohomology(t, 2).qdim == 2);
    }
}

TEST_CASE("projection and log multiplication maps") {
    CDGA k = concurrent_lines();
    EtaClass eta = eta111();
    ThickenedComplex t1 = thicken(k, eta, 1);
    ThickenedComplex t2 = thicken(k, eta, 2);
    ThickenedComplex t3 = thicken(k, eta, 3);

    // going up from order 1 to 2 is exactly multiplication by s
    std::map<std::size_t, QMat> up12 = psi_map(t1, t2);
    for (std::size_t j = 0; j <= 2; ++j) {
        const std::size_t b = k.dim_in_degree(j);
        QMat expect(b * 2, b);
        for (std::size_t p = 0; p < b; ++p) expect.at(2 * p + 1, p) = Rat(1);
        REQUIRE(up12.at(j) == expect);
    }

    std::map<std::size_t, QMat> down32 = phi_map(t3, t2);
    std::map<std::size_t, QMat> up23 = psi_map(t2, t3);
    std::map<std::size_t, QMat> down31 = phi_map(t3, t1);
    std::map<std::size_t, QMat> up13 = psi_map(t1, t3);

    std::map<std::size_t, QMat> log2 = multiplication_map(t2, log_series(2));
    std::map<std::size_t, QMat> log3 = multiplication_map(t3, log_series(3));
    std::map<std::size_t, QMat> log3sq =
        multiplication_map(t3, log_series(3) * log_series(3));
    std::map<std::size_t, QMat> log1sq =
        multiplication_map(t1, log_series(1) * log_series(1));
    for (std::size_t j = 0; j <= 2; ++j) {
        // both composites of the up/down pair multiply by the same log power
        REQUIRE(down32.at(j) * up23.at(j) == log2.at(j));
        REQUIRE(up23.at(j) * down32.at(j) == log3.at(j));
        REQUIRE(down31.at(j) * up13.at(j) == log1sq.at(j));
        REQUIRE(up13.at(j) * down31.at(j) == log3sq.at(j));
        REQUIRE(log1sq.at(j).is_zero());
    }

    // both directions are maps of complexes
    for (std::size_t j = 0; j <= 1; ++j) {
        REQUIRE(t3.differentials.at(j) * up23.at(j) ==
                up23.at(j + 1) * t2.differentials.at(j));
        REQUIRE(t2.differentials.at(j) * down32.at(j) ==
                down32.at(j + 1) * t3.differentials.at(j));
    }

    CHECK_THROWS_AS(phi_map(t2, t3), IncompatibleOrders);
    CHECK_THROWS_AS(psi_map(t3, t2), IncompatibleOrders);
    CHECK_THROWS_AS(multiplication_map(t2, TruncElem::s(3)), IncompatibleOrders);

    ThickenedComplex other = thicken(three_points(), eta111(), 3);
    CHECK_THROWS_AS(psi_map(t2, other), InvalidInput);
    EtaClass doubled{{Rat(2), Rat(2), Rat(2)}};
    ThickenedComplex rescaled = thicken(k, doubled, 3);
    CHECK_THROWS_AS(psi_map(t2, rescaled), InvalidInput);
}
