#pragma once

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "arrangement.hpp"
#include "chain.hpp"
#include "errors.hpp"
#include "modules.hpp"
#include "specialize.hpp"
#include "thicken.hpp"

namespace alexmod {

// Every value in a report is exact: integers, booleans, or canonical strings
// produced by rat_str / laurent_str. Serialization goes through ordered maps
// so that parsing a report and dumping it again is byte-identical.

struct EigenRow {
    std::size_t d = 1;  // component of the d-th cyclotomic factor
    std::size_t dimension = 0;
    bool semisimple = true;
};

struct DegreeRecord {
    std::size_t degree = 0;
    std::size_t free_rank = 0;
    std::vector<std::string> invariant_factors;
    std::size_t torsion_qdim = 0;
    std::size_t N = 1;  // least N with t^N unipotent on the torsion part
    std::string char_poly = "1";
    std::vector<EigenRow> eigenspaces;
    std::size_t eigen1_dim = 0;
    MilnorCheck consistency;
};

struct AnalysisReport {
    std::string tool;  // "analyze" or "fox"
    std::string input_digest;
    std::size_t max_degree = 0;
    std::vector<DegreeRecord> degrees;
};

inline AnalysisReport analyze_complex(const FreeRChainComplex& c, std::size_t max_degree,
                                      const std::string& digest, const std::string& tool,
                                      const CancelToken* cancel = nullptr) {
    AnalysisReport out;
    out.tool = tool;
    out.input_digest = digest;
    out.max_degree = max_degree;
    if (c.total_rank() == 0) return out;
    for (std::size_t j = 0; j <= max_degree; ++j) {
        check_cancel(cancel);
        DegreeRecord rec;
        rec.degree = j;
        auto [free_rank, tors] = decompose(homology(c, j, cancel), cancel);
        rec.free_rank = free_rank;
        rec.torsion_qdim = tors.qdim;
        for (const LaurentPoly& f : tors.invariant_factors)
            rec.invariant_factors.push_back(laurent_str(f));
        rec.char_poly = laurent_str(LaurentPoly::from_poly(char_poly(tors.t_matrix)));
        if (tors.qdim > 0) {
            rec.N = find_N(tors);
            JCDecomp jc = jordan_chevalley(tors);
            EigenDecomposition dec = eigenspace_decomposition(tors, jc, rec.N);
            for (const EigenComponent& comp : dec.components) {
                EigenRow row;
                row.d = comp.d;
                row.dimension = comp.basis.cols();
                row.semisimple =
                    row.dimension == 0 || is_semisimple_on(tors, jc, comp.g);
                if (comp.d == 1) rec.eigen1_dim = row.dimension;
                rec.eigenspaces.push_back(row);
            }
        }
        rec.consistency = milnor_consistency(c, j, cancel);
        out.degrees.push_back(std::move(rec));
    }
    return out;
}

struct ThickenDegreeRecord {
    std::size_t j = 0;
    std::size_t m = 1;  // truncation order used for this degree
    std::size_t qdim = 0;
    std::vector<std::size_t> s_profile;
    std::size_t eigen1_dim = 0;
};

struct ThickenReport {
    std::string input_digest;
    std::string eta;
    bool auto_m = true;
    std::size_t fixed_m = 0;
    std::vector<ThickenDegreeRecord> degrees;
};

// Canonical rendering of a degree-one class; parse_combination accepts it back.
inline std::string eta_str(const CDGA& k, const EtaClass& eta) {
    const std::vector<std::size_t> deg1 = k.degree_indices(1);
    if (eta.coefficients.size() != deg1.size())
        throw InvalidInput("class length does not match the degree-1 space");
    std::string out;
    for (std::size_t i = 0; i < deg1.size(); ++i) {
        const Rat& c = eta.coefficients[i];
        if (is_zero(c)) continue;
        const bool neg = sign_of(c) < 0;
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        const Rat mag = neg ? Rat(-c) : c;
        if (!is_one(mag)) out += rat_str(mag) + "*";
        out += k.element(deg1[i]).name;
    }
    return out.empty() ? "0" : out;
}

inline ThickenReport thicken_report(const CDGA& k, const EtaClass& eta, bool auto_m,
                                    std::size_t fixed_m, const std::string& digest,
                                    const CancelToken* cancel = nullptr) {
    ThickenReport out;
    out.input_digest = digest;
    out.eta = eta_str(k, eta);
    out.auto_m = auto_m;
    out.fixed_m = auto_m ? 0 : fixed_m;
    for (std::size_t j = 0; j <= k.top_degree(); ++j) {
        check_cancel(cancel);
        ThickenDegreeRecord rec;
        rec.j = j;
        if (auto_m) {
            Eigen1Auto a = eigen1_auto(k, eta, j, cancel);
            rec.m = a.m;
            rec.eigen1_dim = a.value;
        } else {
            rec.m = fixed_m;
            rec.eigen1_dim = eigen1(k, eta, j, fixed_m, cancel);
        }
        ThickenedCohomology h = thickened_cohomology(thicken(k, eta, rec.m, cancel), j);
        rec.qdim = h.qdim;
        rec.s_profile = h.s_profile;
        out.degrees.push_back(std::move(rec));
    }
    return out;
}

struct SpecializeDegreeRecord {
    std::size_t degree = 0;
    std::size_t dimension = 0;
};

struct SpecializeReport {
    std::string input_digest;
    std::string lambda;
    std::size_t max_degree = 0;
    std::vector<SpecializeDegreeRecord> degrees;
};

inline SpecializeReport specialize_report(const FreeRChainComplex& c,
                                          const SpecializationPoint& p, std::size_t max_degree,
                                          const std::string& digest,
                                          const CancelToken* cancel = nullptr) {
    SpecializeReport out;
    out.input_digest = digest;
    out.lambda = p.str();
    out.max_degree = max_degree;
    if (c.total_rank() == 0) return out;
    for (std::size_t j = 0; j <= max_degree; ++j)
        out.degrees.push_back({j, specialized_dimension(c, p, j, cancel)});
    return out;
}

// ---- JSON ----

inline std::string dump_json(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

inline nlohmann::ordered_json to_json(const AnalysisReport& r) {
    nlohmann::ordered_json out;
    out["tool"] = r.tool;
    out["input_digest"] = r.input_digest;
    out["max_degree"] = r.max_degree;
    out["degrees"] = nlohmann::ordered_json::array();
    for (const DegreeRecord& rec : r.degrees) {
        nlohmann::ordered_json d;
        d["degree"] = rec.degree;
        d["free_rank"] = rec.free_rank;
        d["invariant_factors"] = rec.invariant_factors;
        d["torsion_qdim"] = rec.torsion_qdim;
        d["N"] = rec.N;
        d["char_poly"] = rec.char_poly;
        d["eigenspaces"] = nlohmann::ordered_json::array();
        for (const EigenRow& row : rec.eigenspaces) {
            nlohmann::ordered_json e;
            e["d"] = row.d;
            e["dimension"] = row.dimension;
            e["semisimple"] = row.semisimple;
            d["eigenspaces"].push_back(std::move(e));
        }
        d["eigen1"] = rec.eigen1_dim;
        nlohmann::ordered_json m;
        m["dim_at_one"] = rec.consistency.dim_at_one;
        m["coker_dim"] = rec.consistency.coker_dim;
        m["ker_dim"] = rec.consistency.ker_dim;
        m["consistent"] = rec.consistency.consistent;
        d["consistency"] = std::move(m);
        out["degrees"].push_back(std::move(d));
    }
    return out;
}

inline nlohmann::ordered_json to_json(const ArrangementReport& r, const std::string& digest,
                                      std::size_t max_j) {
    nlohmann::ordered_json out;
    out["tool"] = "arrangement";
    out["input_digest"] = digest;
    out["max_j"] = max_j;
    out["rank"] = r.rank;
    out["betti"] = r.betti;
    out["degrees"] = nlohmann::ordered_json::array();
    for (const ArrangementDegreeReport& rec : r.degrees) {
        nlohmann::ordered_json d;
        d["j"] = rec.j;
        d["eigen1"] = rec.eigen1_dim;
        d["stabilized_m"] = rec.stabilized_m;
        d["formula"] = rec.formula_dim;
        d["agree"] = rec.agree;
        d["citation"] = rec.purity_label;
        out["degrees"].push_back(std::move(d));
    }
    return out;
}

inline nlohmann::ordered_json to_json(const ThickenReport& r) {
    nlohmann::ordered_json out;
    out["tool"] = "thicken";
    out["input_digest"] = r.input_digest;
    out["eta"] = r.eta;
    out["m_mode"] = r.auto_m ? "auto" : "fixed";
    if (!r.auto_m) out["m"] = r.fixed_m;
    out["degrees"] = nlohmann::ordered_json::array();
    for (const ThickenDegreeRecord& rec : r.degrees) {
        nlohmann::ordered_json d;
        d["j"] = rec.j;
        d["m"] = rec.m;
        d["qdim"] = rec.qdim;
        d["s_profile"] = rec.s_profile;
        d["eigen1"] = rec.eigen1_dim;
        out["degrees"].push_back(std::move(d));
    }
    return out;
}

inline nlohmann::ordered_json to_json(const SpecializeReport& r) {
    nlohmann::ordered_json out;
    out["tool"] = "specialize";
    out["input_digest"] = r.input_digest;
    out["lambda"] = r.lambda;
    out["max_degree"] = r.max_degree;
    out["degrees"] = nlohmann::ordered_json::array();
    for (const SpecializeDegreeRecord& rec : r.degrees) {
        nlohmann::ordered_json d;
        d["degree"] = rec.degree;
        d["dimension"] = rec.dimension;
        out["degrees"].push_back(std::move(d));
    }
    return out;
}

// ---- plain-text rendering ----

// Conclusions that are quoted rather than computed carry this marker so they
// cannot be mistaken for verified output.
inline const char* kAssertedMarker = "[asserted, not computed]";

inline std::string render_text(const AnalysisReport& r) {
    std::ostringstream o;
    o << r.tool << " report, input " << r.input_digest << "\n";
    if (r.degrees.empty()) o << "  (empty input, nothing to report)\n";
    for (const DegreeRecord& rec : r.degrees) {
        o << "degree " << rec.degree << ":\n";
        o << "  free rank:          " << rec.free_rank << "\n";
        o << "  invariant factors:  ";
        if (rec.invariant_factors.empty()) o << "(none)";
        for (std::size_t i = 0; i < rec.invariant_factors.size(); ++i)
            o << (i ? ", " : "") << rec.invariant_factors[i];
        o << "\n";
        o << "  torsion dimension:  " << rec.torsion_qdim << "\n";
        if (rec.torsion_qdim > 0) {
            o << "  quasi-unipotence N: " << rec.N << "\n";
            o << "  char poly of t:     " << rec.char_poly << "\n";
            o << "  eigenspaces:\n";
            for (const EigenRow& row : rec.eigenspaces)
                o << "    Phi_" << row.d << ": dim " << row.dimension
                  << (row.semisimple ? ", semisimple" : ", not semisimple") << "\n";
            o << "  eigenvalue-1 part:  " << rec.eigen1_dim << "\n";
        }
        o << "  t=1 check:          dim " << rec.consistency.dim_at_one << " = coker "
          << rec.consistency.coker_dim << " + ker " << rec.consistency.ker_dim
          << (rec.consistency.consistent ? "  [consistent]" : "  [INCONSISTENT]") << "\n";
    }
    return o.str();
}

inline std::string render_text(const ArrangementReport& r, const std::string& digest) {
    std::ostringstream o;
    o << "arrangement report, input " << digest << "\n";
    o << "rank: " << r.rank << "\n";
    o << "betti:";
    for (long long b : r.betti) o << " " << b;
    o << "\n";
    for (const ArrangementDegreeReport& rec : r.degrees) {
        o << "j = " << rec.j << ":\n";
        o << "  eigenvalue-1 dim (thickening at degree " << rec.j + 1
          << ", m = " << rec.stabilized_m << "): " << rec.eigen1_dim << "\n";
        o << "  combinatorial formula:                 " << rec.formula_dim << "\n";
        o << "  agreement: " << (rec.agree ? "yes" : "NO") << "\n";
        o << "  " << kAssertedMarker << " " << rec.purity_label << "\n";
    }
    return o.str();
}

inline std::string render_text(const ThickenReport& r) {
    std::ostringstream o;
    o << "thicken report, input " << r.input_digest << "\n";
    o << "class: " << r.eta << "\n";
    o << "order: " << (r.auto_m ? std::string("auto") : std::to_string(r.fixed_m)) << "\n";
    for (const ThickenDegreeRecord& rec : r.degrees) {
        o << "degree " << rec.j << " (m = " << rec.m << "):\n";
        o << "  cohomology dim:    " << rec.qdim << "\n";
        o << "  s block sizes:     ";
        if (rec.s_profile.empty()) o << "(none)";
        for (std::size_t i = 0; i < rec.s_profile.size(); ++i)
            o << (i ? " " : "") << rec.s_profile[i];
        o << "\n";
        o << "  eigenvalue-1 part: " << rec.eigen1_dim << "\n";
    }
    return o.str();
}

inline std::string render_text(const SpecializeReport& r) {
    std::ostringstream o;
    o << "specialize report, input " << r.input_digest << "\n";
    o << "point: " << r.lambda << "\n";
    if (r.degrees.empty()) o << "  (empty input, nothing to report)\n";
    for (const SpecializeDegreeRecord& rec : r.degrees)
        o << "degree " << rec.degree << ": dim " << rec.dimension << "\n";
    return o.str();
}

}  // namespace alexmod
