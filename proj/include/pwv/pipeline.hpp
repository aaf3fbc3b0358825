#pragma once

#include "pwv/document.hpp"
#include "pwv/filtration.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>

namespace pwv {

struct AnalyzeOptions {
    std::optional<Vec> seed_rho;   // overrides the document and the search
    bool swap_eta_beta = false;    // applied after eta is normalized
    bool with_llv = true;          // compute the full LLV algebra g
    bool timing = false;           // include wall-clock timings in the report
};

/// Everything the analyze pipeline establishes, ready for serialization.
/// Deterministic for identical input bytes and options (timings excluded).
struct Report {
    std::string name;
    long n = 0;
    std::vector<long> betti;
    std::string input_sha256;
    std::string document_canonical; // canonical serialization of the input

    Vec eta, beta, rho, h;
    bool eta_normalized = false;
    std::string rho_source; // "search" | "document" | "flag"
    bool swapped = false;

    std::map<std::pair<long, long>, long> block_dims;
    std::map<long, std::vector<long>> gr_perverse; // degree -> dims for k = 0..d
    std::map<long, std::map<long, long>> gr_weight; // degree -> (k -> dim) at jumps

    long g_rho_dim = 0;
    std::array<long, 3> g_rho_ad{0, 0, 0};
    std::optional<long> g_dim;
    std::optional<std::array<long, 3>> g_ad;

    Verdict pw, multiplicativity, nilpotent, so5, type_iii;
    std::optional<Verdict> hodge; // absent when the document has no diamond

    std::map<std::string, long> timing_ms;

    bool all_verdicts_true() const;
};

/// Runs the full verification pipeline on a structurally valid document.
/// Throws SchemaError if the document fails ring-level validation and
/// PreconditionError if a q-constraint fails. `input_bytes`, when nonempty,
/// is hashed for the report's content hash; otherwise the canonical
/// serialization of the document is hashed.
Report run_analyze(const ManifoldDocument& doc, const AnalyzeOptions& options,
                   const std::string& input_bytes = "");

std::string sha256_hex(const std::string& bytes);

/// Canonical JSON report: sorted keys, rational numbers as "p/q" strings.
std::string emit_report_json(const Report& report);

/// Aligned human-readable tables.
std::string emit_report_text(const Report& report);

} // namespace pwv
