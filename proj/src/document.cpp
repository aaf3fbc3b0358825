#include "pwv/document.hpp"

#include "pwv/errors.hpp"
#include "pwv/quadratic_space.hpp"

#include <nlohmann/json.hpp>

#include <sstream>

namespace pwv {

using nlohmann::json;

namespace {

bool parse_scalar_value(const json& value, Scalar& out) {
    if (value.is_number_integer()) {
        out = Scalar(rational_of(value.get<long>()));
        return true;
    }
    if (value.is_string()) {
        try {
            out = Scalar(rational_from_string(value.get<std::string>()));
            return true;
        } catch (const ParseError&) {
            return false;
        }
    }
    return false;
}

bool parse_vector(const json& value, std::size_t want, Vec& out, const std::string& what,
                  std::vector<std::string>& violations) {
    if (!value.is_array() || value.size() != want) {
        violations.push_back(what + " must be an array of length " + std::to_string(want));
        return false;
    }
    out.assign(want, Scalar(0));
    for (std::size_t k = 0; k < want; ++k) {
        if (!parse_scalar_value(value[k], out[k])) {
            violations.push_back(what + "[" + std::to_string(k) + "] is not a rational");
            return false;
        }
    }
    return true;
}

json scalar_to_json(const Scalar& s) {
    return s.str();
}

} // namespace

ManifoldDocument ManifoldDocument::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("JSON parse error: ") + e.what());
    }

    std::vector<std::string> violations;
    ManifoldDocument doc;

    if (!j.is_object()) throw SchemaError({"document is not a JSON object"});

    if (!j.contains("schema_version") || !j["schema_version"].is_number_integer() ||
        j["schema_version"].get<long>() != 1)
        violations.push_back("schema_version must be the integer 1");

    if (j.contains("name") && j["name"].is_string())
        doc.name = j["name"].get<std::string>();
    else
        violations.push_back("name must be a string");

    if (j.contains("n") && j["n"].is_number_integer() && j["n"].get<long>() >= 1)
        doc.n = j["n"].get<long>();
    else
        violations.push_back("n must be a positive integer");

    if (!violations.empty() && doc.n < 1) throw SchemaError(std::move(violations));

    const std::size_t degree_count = static_cast<std::size_t>(4 * doc.n + 1);
    if (j.contains("betti") && j["betti"].is_array() && j["betti"].size() == degree_count) {
        for (const auto& b : j["betti"]) {
            if (!b.is_number_integer() || b.get<long>() < 0) {
                violations.push_back("betti entries must be nonnegative integers");
                break;
            }
            doc.betti.push_back(b.get<long>());
        }
    } else {
        violations.push_back("betti must be an array of length " + std::to_string(degree_count));
    }
    if (doc.betti.size() != degree_count) throw SchemaError(std::move(violations));

    auto betti_at = [&](long d) { return doc.betti[static_cast<std::size_t>(d)]; };

    // cup + cup_degrees are parallel arrays; each entry [d, i, j, k, coeff]
    // must agree with its degree pair.
    const bool have_cup = j.contains("cup") && j["cup"].is_array();
    const bool have_degrees = j.contains("cup_degrees") && j["cup_degrees"].is_array();
    if (!have_cup || !have_degrees) {
        violations.push_back("cup and cup_degrees must be arrays");
    } else if (j["cup"].size() != j["cup_degrees"].size()) {
        violations.push_back("cup and cup_degrees must have equal length");
    } else {
        for (std::size_t m = 0; m < j["cup"].size(); ++m) {
            const json& entry = j["cup"][m];
            const json& degs = j["cup_degrees"][m];
            const std::string where = "cup[" + std::to_string(m) + "]";
            if (!degs.is_array() || degs.size() != 2 || !degs[0].is_number_integer() ||
                !degs[1].is_number_integer()) {
                violations.push_back("cup_degrees[" + std::to_string(m) + "] must be [d, d']");
                continue;
            }
            if (!entry.is_array() || entry.size() != 5 || !entry[0].is_number_integer() ||
                !entry[1].is_number_integer() || !entry[2].is_number_integer() ||
                !entry[3].is_number_integer()) {
                violations.push_back(where + " must be [d, i, j, k, coeff]");
                continue;
            }
            const long d = degs[0].get<long>(), dp = degs[1].get<long>();
            if (entry[0].get<long>() != d) {
                violations.push_back(where + " degree disagrees with cup_degrees");
                continue;
            }
            if (d < 0 || dp < 0 || d + dp > 4 * doc.n) {
                violations.push_back(where + " degrees out of range");
                continue;
            }
            const long i = entry[1].get<long>(), jj = entry[2].get<long>(), k = entry[3].get<long>();
            if (i < 0 || i >= betti_at(d) || jj < 0 || jj >= betti_at(dp) || k < 0 ||
                k >= betti_at(d + dp)) {
                violations.push_back(where + " basis index out of range");
                continue;
            }
            Scalar coeff;
            if (!parse_scalar_value(entry[4], coeff)) {
                violations.push_back(where + " coefficient is not a rational");
                continue;
            }
            doc.cup.push_back({d, dp, static_cast<std::size_t>(i), static_cast<std::size_t>(jj),
                               static_cast<std::size_t>(k), coeff});
        }
    }

    const std::size_t b2 = static_cast<std::size_t>(betti_at(2));
    if (j.contains("bbf_gram") && j["bbf_gram"].is_array() && j["bbf_gram"].size() == b2) {
        doc.bbf_gram = Matrix(b2, b2);
        for (std::size_t r = 0; r < b2; ++r) {
            Vec row;
            if (!parse_vector(j["bbf_gram"][r], b2, row, "bbf_gram[" + std::to_string(r) + "]",
                              violations))
                break;
            doc.bbf_gram.set_row(r, row);
        }
    } else {
        violations.push_back("bbf_gram must be a " + std::to_string(b2) + "x" +
                             std::to_string(b2) + " matrix");
    }

    if (j.contains("eta"))
        parse_vector(j["eta"], b2, doc.eta, "eta", violations);
    else
        violations.push_back("eta is required");
    if (j.contains("beta"))
        parse_vector(j["beta"], b2, doc.beta, "beta", violations);
    else
        violations.push_back("beta is required");
    if (j.contains("rho") && !j["rho"].is_null()) {
        Vec rho;
        if (parse_vector(j["rho"], b2, rho, "rho", violations)) doc.rho = std::move(rho);
    }

    if (j.contains("hodge_diamond") && !j["hodge_diamond"].is_null()) {
        const json& hd = j["hodge_diamond"];
        bool ok = hd.is_array() && hd.size() == degree_count;
        std::vector<std::vector<long>> rows;
        for (std::size_t d = 0; ok && d < hd.size(); ++d) {
            if (!hd[d].is_array() || hd[d].size() != d + 1) {
                ok = false;
                break;
            }
            std::vector<long> row;
            for (const auto& v : hd[d]) {
                if (!v.is_number_integer() || v.get<long>() < 0) {
                    ok = false;
                    break;
                }
                row.push_back(v.get<long>());
            }
            rows.push_back(std::move(row));
        }
        if (ok)
            doc.hodge_rows = std::move(rows);
        else
            violations.push_back(
                "hodge_diamond must have rows 0..4n with row d listing h^{p,d-p} for p = 0..d");
    }

    for (const auto& key : j.items()) {
        static const char* known[] = {"schema_version", "name",  "n",   "betti",
                                      "cup_degrees",    "cup",   "bbf_gram", "eta",
                                      "beta",           "rho",   "hodge_diamond"};
        bool found = false;
        for (const char* k : known)
            if (key.key() == k) found = true;
        if (!found) violations.push_back("unknown key '" + key.key() + "'");
    }

    if (!violations.empty()) throw SchemaError(std::move(violations));
    return doc;
}

json ManifoldDocument::to_json() const {
    json j;
    j["schema_version"] = schema_version;
    j["name"] = name;
    j["n"] = n;
    j["betti"] = betti;
    json degrees = json::array();
    json entries = json::array();
    for (const auto& e : cup) {
        degrees.push_back({e.d, e.dprime});
        entries.push_back({e.d, static_cast<long>(e.i), static_cast<long>(e.j),
                           static_cast<long>(e.k), scalar_to_json(e.c)});
    }
    j["cup_degrees"] = std::move(degrees);
    j["cup"] = std::move(entries);
    json gram = json::array();
    for (std::size_t r = 0; r < bbf_gram.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < bbf_gram.cols(); ++c) row.push_back(scalar_to_json(bbf_gram(r, c)));
        gram.push_back(std::move(row));
    }
    j["bbf_gram"] = std::move(gram);
    json eta_json = json::array(), beta_json = json::array();
    for (const Scalar& s : eta) eta_json.push_back(scalar_to_json(s));
    for (const Scalar& s : beta) beta_json.push_back(scalar_to_json(s));
    j["eta"] = std::move(eta_json);
    j["beta"] = std::move(beta_json);
    if (rho) {
        json rho_json = json::array();
        for (const Scalar& s : *rho) rho_json.push_back(scalar_to_json(s));
        j["rho"] = std::move(rho_json);
    }
    if (hodge_rows) j["hodge_diamond"] = *hodge_rows;
    return j;
}

std::string ManifoldDocument::to_json_text() const {
    return to_json().dump(2) + "\n";
}

GradedAlgebra ManifoldDocument::build_algebra() const {
    return GradedAlgebra(n, betti, cup);
}

std::optional<HodgeDiamond> ManifoldDocument::hodge_diamond() const {
    if (!hodge_rows) return std::nullopt;
    return HodgeDiamond::from_rows(*hodge_rows);
}

std::vector<std::string> validate_document(const ManifoldDocument& doc) {
    std::vector<std::string> violations;

    GradedAlgebra algebra;
    try {
        algebra = doc.build_algebra();
    } catch (const Error& e) {
        violations.push_back(e.what());
        return violations;
    }
    for (std::string& v : algebra.validate()) violations.push_back(std::move(v));

    for (std::size_t r = 0; r < doc.bbf_gram.rows(); ++r)
        for (std::size_t c = r + 1; c < doc.bbf_gram.cols(); ++c)
            if (doc.bbf_gram(r, c) != doc.bbf_gram(c, r)) {
                violations.push_back("bbf_gram is not symmetric at (" + std::to_string(r) + "," +
                                     std::to_string(c) + ")");
                return violations;
            }

    // In the surface case the BBF form is the intersection form, so the
    // degree-2 pairing must reproduce the Gram matrix.
    if (doc.n == 1 && algebra.pairing_matrix(2) != doc.bbf_gram)
        violations.push_back("bbf_gram disagrees with the degree-2 intersection pairing (n = 1)");

    if (doc.hodge_rows) {
        const HodgeDiamond hd = HodgeDiamond::from_rows(*doc.hodge_rows);
        for (std::string& v : hd.validate(doc.betti))
            violations.push_back("hodge_diamond: " + std::move(v));
    }

    // Precondition checks of the operator-suite construction, phrased on
    // the raw (pre-normalization) classes.
    const QuadraticSpace q(doc.bbf_gram);
    const auto [pos, neg, zero] = q.signature();
    if (!(pos == 3 && zero == 0))
        violations.push_back("precondition: BBF signature is (" + std::to_string(pos) + "," +
                             std::to_string(neg) + "," + std::to_string(zero) + "), expected (3," +
                             std::to_string(q.dim() - 3) + ",0)");
    if (!q.form(doc.beta).is_zero()) violations.push_back("precondition: q(beta) != 0");
    if (q.form(doc.eta, doc.beta).is_zero())
        violations.push_back("precondition: q(eta, beta) = 0");
    if (doc.rho) {
        if (sign(q.form(*doc.rho).re) <= 0) violations.push_back("precondition: q(rho) <= 0");
        if (!q.form(*doc.rho, doc.beta).is_zero())
            violations.push_back("precondition: q(rho, beta) != 0");
        if (!q.form(*doc.rho, doc.eta).is_zero())
            violations.push_back("precondition: q(rho, eta) != 0");
    }
    return violations;
}

ManifoldDocument k3_document() {
    const std::size_t b2 = 22;
    Matrix gram(b2, b2);
    // Three hyperbolic planes.
    for (std::size_t u = 0; u < 3; ++u) {
        gram(2 * u, 2 * u + 1) = Scalar(1);
        gram(2 * u + 1, 2 * u) = Scalar(1);
    }
    // Two copies of E8(-1): diagonal -2, +1 on Dynkin adjacencies
    // (nodes 1..8 with edges 1-3, 3-4, 4-5, 5-6, 6-7, 7-8, 2-4).
    const std::pair<int, int> edges[] = {{1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {2, 4}};
    for (std::size_t copy = 0; copy < 2; ++copy) {
        const std::size_t base = 6 + 8 * copy;
        for (std::size_t i = 0; i < 8; ++i) gram(base + i, base + i) = Scalar(-2);
        for (const auto& [x, y] : edges) {
            gram(base + static_cast<std::size_t>(x - 1), base + static_cast<std::size_t>(y - 1)) =
                Scalar(1);
            gram(base + static_cast<std::size_t>(y - 1), base + static_cast<std::size_t>(x - 1)) =
                Scalar(1);
        }
    }

    ManifoldDocument doc;
    doc.name = "elliptic-k3";
    doc.n = 1;
    doc.betti = {1, 0, 22, 0, 1};
    doc.bbf_gram = gram;
    // Unit products, the two pairings with the point class, and the
    // degree-2 products given by the Gram matrix.
    doc.cup.push_back({0, 0, 0, 0, 0, Scalar(1)});
    doc.cup.push_back({0, 4, 0, 0, 0, Scalar(1)});
    doc.cup.push_back({4, 0, 0, 0, 0, Scalar(1)});
    for (std::size_t i = 0; i < b2; ++i) {
        doc.cup.push_back({0, 2, 0, i, i, Scalar(1)});
        doc.cup.push_back({2, 0, i, 0, i, Scalar(1)});
    }
    for (std::size_t i = 0; i < b2; ++i)
        for (std::size_t j = 0; j < b2; ++j)
            if (!gram(i, j).is_zero()) doc.cup.push_back({2, 2, i, j, 0, gram(i, j)});

    // beta = fiber class f, eta = section class with q(eta) = -2, q(eta, f) = 1.
    doc.beta = Vec(b2);
    doc.beta[0] = Scalar(1);
    doc.eta = Vec(b2);
    doc.eta[0] = Scalar(-1);
    doc.eta[1] = Scalar(1);

    doc.hodge_rows = {{1}, {0, 0}, {1, 20, 1}, {0, 0, 0, 0}, {0, 0, 1, 0, 0}};
    return doc;
}

} // namespace pwv
