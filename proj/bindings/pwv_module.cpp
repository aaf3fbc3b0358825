// Python bindings for the pwv core: document validation, the analyze
// pipeline, and a few standalone operations on exact rational data.

#include "pwv/document.hpp"
#include "pwv/errors.hpp"
#include "pwv/lefschetz.hpp"
#include "pwv/pipeline.hpp"
#include "pwv/quadratic_space.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;

namespace {

pwv::Vec parse_rational_vector(const std::vector<std::string>& entries) {
    pwv::Vec out;
    for (const std::string& e : entries) out.push_back(pwv::Scalar(pwv::rational_from_string(e)));
    return out;
}

pwv::Matrix parse_rational_matrix(const std::vector<std::vector<std::string>>& rows) {
    std::vector<pwv::Vec> converted;
    for (const auto& r : rows) converted.push_back(parse_rational_vector(r));
    return pwv::Matrix::from_rows(converted);
}

std::vector<std::string> validate_json(const std::string& text) {
    try {
        const pwv::ManifoldDocument doc = pwv::ManifoldDocument::from_json_text(text);
        return pwv::validate_document(doc);
    } catch (const pwv::SchemaError& e) {
        return e.violations;
    }
}

std::string analyze_json(const std::string& text, const std::string& seed_rho,
                         bool swap_eta_beta, bool with_llv, bool timing) {
    const pwv::ManifoldDocument doc = pwv::ManifoldDocument::from_json_text(text);
    pwv::AnalyzeOptions options;
    options.swap_eta_beta = swap_eta_beta;
    options.with_llv = with_llv;
    options.timing = timing;
    if (!seed_rho.empty()) {
        pwv::Vec rho;
        std::stringstream ss(seed_rho);
        std::string item;
        while (std::getline(ss, item, ','))
            rho.push_back(pwv::Scalar(pwv::rational_from_string(item)));
        options.seed_rho = std::move(rho);
    }
    return pwv::emit_report_json(pwv::run_analyze(doc, options, text));
}

std::tuple<long, long, long> signature_of(const std::vector<std::vector<std::string>>& gram) {
    return pwv::QuadraticSpace(parse_rational_matrix(gram)).signature();
}

std::vector<std::pair<long, long>> weight_filtration_dims(
    const std::vector<std::vector<std::string>>& nilpotent, long degree) {
    const pwv::Matrix n = parse_rational_matrix(nilpotent);
    const pwv::FiltrationTable table =
        pwv::deligne_filtration(n, degree, pwv::Subspace::full(n.rows()));
    std::vector<std::pair<long, long>> out;
    for (const auto& [k, dim] : table.gr_dims(degree)) out.emplace_back(k, dim);
    return out;
}

} // namespace

PYBIND11_MODULE(_pwv, m) {
    m.doc() = "Exact verifier for perverse / monodromy-weight filtration identities";

    py::register_exception<pwv::ParseError>(m, "DocumentParseError", PyExc_ValueError);
    py::register_exception<pwv::PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<pwv::InvariantError>(m, "VerificationError", PyExc_RuntimeError);

    m.def("k3_document_json", [] { return pwv::k3_document().to_json_text(); },
          "Canonical JSON for the bundled elliptic K3 document");

    m.def("validate_document_json", &validate_json, py::arg("text"),
          "Itemized schema/ring/precondition violations; empty means valid");

    m.def("analyze_document_json", &analyze_json, py::arg("text"), py::arg("seed_rho") = "",
          py::arg("swap_eta_beta") = false, py::arg("with_llv") = true, py::arg("timing") = false,
          "Run the full verification pipeline; returns the canonical JSON report");

    m.def("signature", &signature_of, py::arg("gram"),
          "Exact (positive, negative, zero) inertia of a symmetric rational Gram matrix");

    m.def("weight_filtration_dims", &weight_filtration_dims, py::arg("nilpotent"),
          py::arg("degree"),
          "Graded dims [k, dim] of the monodromy weight filtration of a rational "
          "nilpotent matrix centered at the given degree");
}
