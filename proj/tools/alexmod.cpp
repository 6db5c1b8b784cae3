#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>
#include <utility>

#include "alexmod/io.hpp"
#include "alexmod/report.hpp"
#include "alexmod/verify.hpp"

using namespace alexmod;

namespace {

// Reads one JSON input, remembering the digest of the raw bytes. Syntax
// errors (which carry line and column already) gain the file name.
nlohmann::json slurp(const std::string& path, std::string& digest) {
    const std::string text = read_file(path);
    digest = digest_hex(text);
    try {
        return parse_json_text(text);
    } catch (const ParseError& e) {
        std::string msg = e.what();
        const std::string suffix = " (at position " + std::to_string(e.pos) + ")";
        if (msg.size() >= suffix.size() &&
            msg.compare(msg.size() - suffix.size(), suffix.size(), suffix) == 0)
            msg.erase(msg.size() - suffix.size());
        throw ParseError(e.pos, path + ": " + msg);
    }
}

void emit(bool as_json, const nlohmann::ordered_json& j, const std::string& text) {
    if (as_json)
        std::cout << dump_json(j);
    else
        std::cout << text;
}

std::size_t parse_order(const std::string& text) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(text, &used);
    } catch (const std::exception&) {
        throw InvalidInput("--m expects AUTO or a positive integer, got '" + text + "'");
    }
    if (used != text.size() || v == 0)
        throw InvalidInput("--m expects AUTO or a positive integer, got '" + text + "'");
    return static_cast<std::size_t>(v);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "exact Alexander-module calculator: torsion of infinite cyclic covers, "
        "cyclotomic eigenspaces, and eigenvalue-1 parts of thickened algebras"};
    app.require_subcommand(1);

    bool as_json = false;
    std::uint64_t seed = 12345;
    app.add_flag("--json", as_json, "emit machine-readable JSON instead of text");
    app.add_option("--seed", seed, "seed for the randomized verification suites");

    std::string analyze_file;
    long long analyze_max = -1;
    CLI::App* analyze = app.add_subcommand(
        "analyze", "torsion, eigenspace, and consistency report of a chain complex");
    analyze->add_option("file", analyze_file, "chain complex JSON file")->required();
    analyze->add_option("--max-degree", analyze_max, "highest homological degree to report");
    analyze->fallthrough();

    std::string fox_file;
    CLI::App* fox = app.add_subcommand(
        "fox", "the same report for degrees 0 and 1 of a group presentation");
    fox->add_option("file", fox_file, "presentation JSON file")->required();
    fox->fallthrough();

    std::string arr_file;
    long long arr_max = -1;
    CLI::App* arrangement = app.add_subcommand(
        "arrangement", "eigenvalue-1 dimensions of a hyperplane arrangement complement");
    arrangement->add_option("file", arr_file, "arrangement JSON file")->required();
    arrangement->add_option("--max-j", arr_max, "highest cohomological degree to report");
    arrangement->fallthrough();

    std::string thicken_file, eta_text, m_text = "AUTO";
    CLI::App* thicken = app.add_subcommand(
        "thicken", "cohomology of the order-m thickening of a graded algebra");
    thicken->add_option("file", thicken_file, "algebra JSON file")->required();
    thicken->add_option("--eta", eta_text, "degree-1 class, e.g. '2*e1 - e2'")->required();
    thicken->add_option("--m", m_text, "thickening order: AUTO or a positive integer");
    thicken->fallthrough();

    std::string spec_file, lambda_text;
    long long spec_max = -1;
    CLI::App* specialize = app.add_subcommand(
        "specialize", "dimensions of a chain complex specialized at one value of t");
    specialize->add_option("file", spec_file, "chain complex JSON file")->required();
    specialize
        ->add_option("--lambda", lambda_text,
                     "root-of-unity:<d>, rational:<p/q>, or generic")
        ->required();
    specialize->add_option("--max-degree", spec_max, "highest homological degree to report");
    specialize->fallthrough();

    std::string suite;
    CLI::App* verify = app.add_subcommand(
        "verify", "run one of the randomized property suites");
    verify->add_option("--suite", suite, "algebra, modules, thickening, or cross")
        ->required();
    verify->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(analyze)) {
            std::string digest;
            const FreeRChainComplex c = load_complex(slurp(analyze_file, digest));
            const std::size_t top =
                analyze_max < 0 ? c.max_degree() : static_cast<std::size_t>(analyze_max);
            const AnalysisReport r = analyze_complex(c, top, digest, "analyze");
            emit(as_json, to_json(r), render_text(r));
        } else if (app.got_subcommand(fox)) {
            std::string digest;
            const GroupPresentation p = load_presentation(slurp(fox_file, digest));
            const AnalysisReport r = analyze_complex(fox_complex(p), 1, digest, "fox");
            emit(as_json, to_json(r), render_text(r));
        } else if (app.got_subcommand(arrangement)) {
            std::string digest;
            const Arrangement a = load_arrangement(slurp(arr_file, digest));
            std::size_t top;
            if (arr_max < 0) {
                const OSAlgebra os = build_os_algebra(a);
                top = os.rank == 0 ? 0 : os.rank - 1;
            } else {
                top = static_cast<std::size_t>(arr_max);
            }
            const ArrangementReport r = arrangement_report(a, top);
            emit(as_json, to_json(r, digest, top), render_text(r, digest));
        } else if (app.got_subcommand(thicken)) {
            std::string digest;
            const CDGA k = load_cdga(slurp(thicken_file, digest));
            const EtaClass eta = parse_eta(eta_text, k);
            const bool auto_m = m_text == "AUTO";
            const std::size_t fixed = auto_m ? 0 : parse_order(m_text);
            const ThickenReport r = thicken_report(k, eta, auto_m, fixed, digest);
            emit(as_json, to_json(r), render_text(r));
        } else if (app.got_subcommand(specialize)) {
            std::string digest;
            const FreeRChainComplex c = load_complex(slurp(spec_file, digest));
            const SpecializationPoint p = SpecializationPoint::parse(lambda_text);
            const std::size_t top =
                spec_max < 0 ? c.max_degree() : static_cast<std::size_t>(spec_max);
            const SpecializeReport r = specialize_report(c, p, top, digest);
            emit(as_json, to_json(r), render_text(r));
        } else if (app.got_subcommand(verify)) {
            const VerifyRun run = run_suite(suite, seed, nullptr);
            emit(as_json, to_json(run), render_text(run));
            if (!run.all_pass()) return 1;
        }
    } catch (const HypothesesNotMet& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const MathPrecondition& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
