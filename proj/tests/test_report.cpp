#include <catch2/catch_amalgamated.hpp>

#include "alexmod/fox.hpp"
#include "alexmod/report.hpp"

using namespace alexmod;

namespace {

LaurentPoly L(const std::string& s) { return parse_laurent(s); }

FreeRChainComplex wedge3() {
    return FreeRChainComplex({{0, 1}, {1, 3}},
                            {{1, RMatrix::from_rows({{L("t-1"), L("t-1"), L("t-1")}})}});
}

FreeRChainComplex conc_lines_complex() {
    GroupPresentation p({"a", "b", "c"},
                        {"a b c a c^-1 b^-1 a^-1 a^-1", "a b c b c^-1 b^-1 a^-1 b^-1"},
                        {{"a", 1}, {"b", 1}, {"c", 1}});
    return fox_complex(p);
}

CDGA three_points() {
    return CDGA({{"u", 0}, {"e1", 1}, {"e2", 1}, {"e3", 1}}, 0, {});
}

std::string roundtrip(const std::string& text) {
    return dump_json(nlohmann::ordered_json::parse(text));
}

}  // namespace

TEST_CASE("analysis report for the wedge pins both degrees") {
    AnalysisReport r = analyze_complex(wedge3(), 1, "feed", "analyze");
    REQUIRE(r.tool == "analyze");
    REQUIRE(r.input_digest == "feed");
    REQUIRE(r.degrees.size() == 2);

    const DegreeRecord& h0 = r.degrees[0];
    REQUIRE(h0.free_rank == 0);
    REQUIRE(h0.invariant_factors == std::vector<std::string>{laurent_str(L("t-1"))});
    REQUIRE(h0.torsion_qdim == 1);
    REQUIRE(h0.N == 1);
    REQUIRE(h0.char_poly == laurent_str(L("t-1")));
    REQUIRE(h0.eigenspaces.size() == 1);
    REQUIRE(h0.eigenspaces[0].d == 1);
    REQUIRE(h0.eigenspaces[0].dimension == 1);
    REQUIRE(h0.eigenspaces[0].semisimple);
    REQUIRE(h0.eigen1_dim == 1);
    REQUIRE(h0.consistency.dim_at_one == 1);
    REQUIRE(h0.consistency.coker_dim == 1);
    REQUIRE(h0.consistency.ker_dim == 0);
    REQUIRE(h0.consistency.consistent);

    const DegreeRecord& h1 = r.degrees[1];
    REQUIRE(h1.free_rank == 2);
    REQUIRE(h1.invariant_factors.empty());
    REQUIRE(h1.torsion_qdim == 0);
    REQUIRE(h1.eigenspaces.empty());
    REQUIRE(h1.char_poly == "1");
    REQUIRE(h1.consistency.dim_at_one == 3);
    REQUIRE(h1.consistency.coker_dim == 2);
    REQUIRE(h1.consistency.ker_dim == 1);
    REQUIRE(h1.consistency.consistent);
}

TEST_CASE("analysis report resolves the concurrent-lines eigenspace table") {
    AnalysisReport r = analyze_complex(conc_lines_complex(), 1, "d1", "fox");
    const DegreeRecord& h1 = r.degrees[1];
    REQUIRE(h1.free_rank == 0);
    REQUIRE(h1.torsion_qdim == 4);
    REQUIRE(h1.N == 3);
    REQUIRE(h1.char_poly == laurent_str(L("t^4-t^3-t+1")));
    REQUIRE(h1.eigenspaces.size() == 2);
    REQUIRE(h1.eigenspaces[0].d == 1);
    REQUIRE(h1.eigenspaces[0].dimension == 2);
    REQUIRE(h1.eigenspaces[0].semisimple);
    REQUIRE(h1.eigenspaces[1].d == 3);
    REQUIRE(h1.eigenspaces[1].dimension == 2);
    REQUIRE(h1.eigenspaces[1].semisimple);
    REQUIRE(h1.eigen1_dim == 2);
}

TEST_CASE("analysis report flags a non-semisimple unit eigenspace") {
    FreeRChainComplex c({{0, 1}, {1, 1}}, {{1, RMatrix::from_rows({{L("t^2-2*t+1")}})}});
    AnalysisReport r = analyze_complex(c, 1, "x", "analyze");
    const DegreeRecord& h0 = r.degrees[0];
    REQUIRE(h0.torsion_qdim == 2);
    REQUIRE(h0.N == 1);
    REQUIRE(h0.eigenspaces.size() == 1);
    REQUIRE_FALSE(h0.eigenspaces[0].semisimple);
    REQUIRE(h0.eigen1_dim == 2);
    // the t=1 count is still balanced by the boundary kernel one degree up
    REQUIRE(r.degrees[1].consistency.dim_at_one == 1);
    REQUIRE(r.degrees[1].consistency.coker_dim == 0);
    REQUIRE(r.degrees[1].consistency.ker_dim == 1);
    REQUIRE(r.degrees[1].consistency.consistent);
}

TEST_CASE("empty complex gives an empty report") {
    AnalysisReport r = analyze_complex(FreeRChainComplex({}, {}), 3, "e", "analyze");
    REQUIRE(r.degrees.empty());
    REQUIRE(render_text(r).find("empty input") != std::string::npos);
    const std::string text = dump_json(to_json(r));
    REQUIRE(roundtrip(text) == text);
}

TEST_CASE("eta rendering is canonical and parses back") {
    CDGA k = three_points();
    EtaClass ones{{Rat(1), Rat(1), Rat(1)}};
    REQUIRE(eta_str(k, ones) == "e1 + e2 + e3");
    EtaClass mixed{{Rat(2), Rat(-1), Rat(1) / Rat(3)}};
    REQUIRE(eta_str(k, mixed) == "2*e1 - e2 + 1/3*e3");
    EtaClass zero{{Rat(0), Rat(0), Rat(0)}};
    REQUIRE(eta_str(k, zero) == "0");
    EtaClass neg{{Rat(-2), Rat(0), Rat(0)}};
    REQUIRE(eta_str(k, neg) == "-2*e1");
    for (const EtaClass& eta : {ones, mixed, zero, neg})
        REQUIRE(parse_eta(eta_str(k, eta), k).coefficients == eta.coefficients);
}

TEST_CASE("thicken report in auto and fixed modes") {
    CDGA k = three_points();
    EtaClass eta{{Rat(1), Rat(1), Rat(1)}};

    ThickenReport a = thicken_report(k, eta, true, 0, "t0");
    REQUIRE(a.eta == "e1 + e2 + e3");
    REQUIRE(a.degrees.size() == 2);
    REQUIRE(a.degrees[0].eigen1_dim == 0);
    REQUIRE(a.degrees[1].m == 1);
    REQUIRE(a.degrees[1].eigen1_dim == 1);
    REQUIRE(a.degrees[1].qdim == 3);
    REQUIRE(a.degrees[1].s_profile == std::vector<std::size_t>{1, 1, 1});

    ThickenReport f = thicken_report(k, eta, false, 2, "t0");
    REQUIRE_FALSE(f.auto_m);
    REQUIRE(f.degrees[0].qdim == 1);
    REQUIRE(f.degrees[0].s_profile == std::vector<std::size_t>{1});
    REQUIRE(f.degrees[1].qdim == 5);
    REQUIRE(f.degrees[1].s_profile == std::vector<std::size_t>{2, 2, 1});
    REQUIRE(f.degrees[1].eigen1_dim == 1);

    const std::string ta = dump_json(to_json(a));
    const std::string tf = dump_json(to_json(f));
    REQUIRE(roundtrip(ta) == ta);
    REQUIRE(roundtrip(tf) == tf);
    REQUIRE(ta.find("\"m_mode\": \"auto\"") != std::string::npos);
    REQUIRE(tf.find("\"m\": 2") != std::string::npos);
}

TEST_CASE("specialize report at several points") {
    FreeRChainComplex c = wedge3();
    SpecializeReport at1 =
        specialize_report(c, SpecializationPoint::rational(Rat(1)), 1, "s");
    REQUIRE(at1.lambda == "rational:1");
    REQUIRE(at1.degrees.size() == 2);
    REQUIRE(at1.degrees[0].dimension == 1);
    REQUIRE(at1.degrees[1].dimension == 3);

    SpecializeReport gen = specialize_report(c, SpecializationPoint::generic(), 1, "s");
    REQUIRE(gen.lambda == "generic");
    REQUIRE(gen.degrees[0].dimension == 0);
    REQUIRE(gen.degrees[1].dimension == 2);

    const std::string text = dump_json(to_json(at1));
    REQUIRE(roundtrip(text) == text);
}

TEST_CASE("arrangement report serialization carries the asserted label") {
    Arrangement a;
    a.ambient_dim = 2;
    a.hyperplanes = {{{Rat(1), Rat(0)}, Rat(0), 1},
                     {{Rat(0), Rat(1)}, Rat(0), 1},
                     {{Rat(1), Rat(-1)}, Rat(0), 1}};
    ArrangementReport r = arrangement_report(a, 1);
    nlohmann::ordered_json j = to_json(r, "abc", 1);
    REQUIRE(j["tool"] == "arrangement");
    REQUIRE(j["rank"] == 2);
    REQUIRE(j["betti"] == nlohmann::ordered_json::array({1, 3, 2}));
    REQUIRE(j["degrees"][1]["eigen1"] == 2);
    REQUIRE(j["degrees"][1]["formula"] == 2);
    REQUIRE(j["degrees"][1]["agree"] == true);
    REQUIRE(j["degrees"][1]["citation"] ==
            "pure of type (1,1): Q^2 with trivial t-action");

    const std::string text = dump_json(j);
    REQUIRE(roundtrip(text) == text);

    const std::string human = render_text(r, "abc");
    REQUIRE(human.find(kAssertedMarker) != std::string::npos);
    REQUIRE(human.find("pure of type (1,1)") != std::string::npos);
    REQUIRE(human.find("agreement: yes") != std::string::npos);
}

TEST_CASE("analysis json round-trips byte for byte") {
    for (const char* tool : {"analyze", "fox"}) {
        AnalysisReport r = analyze_complex(conc_lines_complex(), 1, "0123abcd", tool);
        const std::string text = dump_json(to_json(r));
        REQUIRE(roundtrip(text) == text);
        REQUIRE(text.find("\"tool\": \"" + std::string(tool) + "\"") != std::string::npos);
    }
}

TEST_CASE("text rendering shows the load-bearing numbers") {
    AnalysisReport r = analyze_complex(conc_lines_complex(), 1, "d1", "fox");
    const std::string human = render_text(r);
    REQUIRE(human.find("torsion dimension:  4") != std::string::npos);
    REQUIRE(human.find("quasi-unipotence N: 3") != std::string::npos);
    REQUIRE(human.find("Phi_1: dim 2, semisimple") != std::string::npos);
    REQUIRE(human.find("Phi_3: dim 2, semisimple") != std::string::npos);
    REQUIRE(human.find("[consistent]") != std::string::npos);
}
