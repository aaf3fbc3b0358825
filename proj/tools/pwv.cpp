// pwv - exact verifier for perverse / monodromy-weight filtration identities
// on hyper-Kahler-type cohomology rings.
//
// Exit codes: 0 success, 1 I/O or parse failure, 2 schema invalid,
// 3 precondition failure, 4 verification failure.

#include "pwv/document.hpp"
#include "pwv/errors.hpp"
#include "pwv/pipeline.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitSchema = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitVerification = 4;

bool read_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) return false;
    out = buffer.str();
    return true;
}

pwv::Vec parse_rho_flag(const std::string& text) {
    pwv::Vec out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(pwv::Scalar(pwv::rational_from_string(item)));
    return out;
}

int run_validate(const std::string& path) {
    std::string bytes;
    if (!read_file(path, bytes)) {
        std::cerr << "error: cannot read '" << path << "'\n";
        return kExitIo;
    }
    try {
        const pwv::ManifoldDocument doc = pwv::ManifoldDocument::from_json_text(bytes);
        const std::vector<std::string> violations = pwv::validate_document(doc);
        if (!violations.empty()) {
            std::cerr << "invalid document (" << violations.size() << " violations):\n";
            for (const std::string& v : violations) std::cerr << "  - " << v << "\n";
            return kExitSchema;
        }
    } catch (const pwv::SchemaError& e) {
        std::cerr << "invalid document (" << e.violations.size() << " violations):\n";
        for (const std::string& v : e.violations) std::cerr << "  - " << v << "\n";
        return kExitSchema;
    } catch (const pwv::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    std::cout << "valid\n";
    return kExitOk;
}

int run_analyze(const std::string& path, const std::string& format,
                const std::string& seed_rho, bool swap_eta_beta, bool skip_llv, bool timing) {
    std::string bytes;
    if (!read_file(path, bytes)) {
        std::cerr << "error: cannot read '" << path << "'\n";
        return kExitIo;
    }
    try {
        const pwv::ManifoldDocument doc = pwv::ManifoldDocument::from_json_text(bytes);

        pwv::AnalyzeOptions options;
        options.swap_eta_beta = swap_eta_beta;
        options.with_llv = !skip_llv;
        options.timing = timing;
        if (!seed_rho.empty()) options.seed_rho = parse_rho_flag(seed_rho);

        const pwv::Report report = pwv::run_analyze(doc, options, bytes);
        if (format == "json")
            std::cout << pwv::emit_report_json(report);
        else
            std::cout << pwv::emit_report_text(report);
        return report.all_verdicts_true() ? kExitOk : kExitVerification;
    } catch (const pwv::SchemaError& e) {
        std::cerr << "invalid document (" << e.violations.size() << " violations):\n";
        for (const std::string& v : e.violations) std::cerr << "  - " << v << "\n";
        return kExitSchema;
    } catch (const pwv::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const pwv::PreconditionError& e) {
        std::cerr << "precondition failure: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const pwv::InvariantError& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return kExitVerification;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pwv: perverse = weight filtration verifier"};
    app.require_subcommand(1);

    std::string validate_path;
    CLI::App* validate = app.add_subcommand("validate", "check a manifold document");
    validate->add_option("file", validate_path, "document to validate")->required();

    std::string analyze_path, format = "text", seed_rho;
    bool swap_eta_beta = false, skip_llv = false, timing = false;
    CLI::App* analyze = app.add_subcommand("analyze", "run the full verification pipeline");
    analyze->add_option("file", analyze_path, "document to analyze")->required();
    analyze->add_option("--format", format, "report format")
        ->check(CLI::IsMember({"json", "text"}));
    analyze->add_option("--seed-rho", seed_rho,
                        "explicit rho as comma-separated rationals, overriding the search");
    analyze->add_flag("--swap-eta-beta", swap_eta_beta, "swap eta and beta after normalization");
    analyze->add_flag("--skip-llv", skip_llv, "skip the full LLV algebra closure");
    analyze->add_flag("--timing", timing, "include wall-clock timings in the report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (validate->parsed()) return run_validate(validate_path);
        if (analyze->parsed())
            return run_analyze(analyze_path, format, seed_rho, swap_eta_beta, skip_llv, timing);
    } catch (const pwv::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerification;
    }
    return kExitOk;
}
