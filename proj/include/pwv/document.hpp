#pragma once

#include "pwv/filtration.hpp"
#include "pwv/graded_algebra.hpp"
#include "pwv/matrix.hpp"

#include <nlohmann/json_fwd.hpp>

#include <optional>
#include <string>
#include <vector>

namespace pwv {

/// Serialized description of a graded cohomology ring with BBF form and
/// fibration classes. Schema (version 1):
///
///   {
///     "schema_version": 1,
///     "name": "...",
///     "n": 1,
///     "betti": [1, 0, 22, 0, 1],
///     "cup_degrees": [[d, d'], ...],              // parallel to "cup"
///     "cup": [[d, i, j, k, "p/q"], ...],          // e_i^(d) cup e_j^(d') -> coeff * e_k
///     "bbf_gram": [["0", "1", ...], ...],
///     "eta": ["-1", "1", "0", ...],
///     "beta": ["1", "0", ...],
///     "rho": [...],                               // optional
///     "hodge_diamond": [[1], [0,0], [1,20,1], ...] // optional, row d lists h^{p,d-p}
///   }
///
/// Rationals are accepted as JSON integers or "p/q" strings; the canonical
/// form emitted by to_json() uses strings.
struct ManifoldDocument {
    long schema_version = 1;
    std::string name;
    long n = 0;
    std::vector<long> betti;
    std::vector<GradedAlgebra::CupEntry> cup;
    Matrix bbf_gram;
    Vec eta;
    Vec beta;
    std::optional<Vec> rho;
    std::optional<std::vector<std::vector<long>>> hodge_rows;

    /// Structural parse. Throws ParseError on JSON syntax errors and
    /// SchemaError (itemized) on structural violations.
    static ManifoldDocument from_json_text(const std::string& text);

    /// Canonical serialization: sorted keys, rationals as strings.
    nlohmann::json to_json() const;
    std::string to_json_text() const;

    GradedAlgebra build_algebra() const;
    std::optional<HodgeDiamond> hodge_diamond() const;
};

/// Ring-level and precondition-level violations of a structurally valid
/// document: graded-algebra axioms, Hodge-diamond consistency, BBF
/// signature, and the q-constraints on eta, beta, rho. Empty = valid.
std::vector<std::string> validate_document(const ManifoldDocument& doc);

/// The bundled example: an elliptic K3 with Gram U + U + U + E8(-1) + E8(-1),
/// beta the fiber class, eta a section class of square -2, and the standard
/// Hodge diamond.
ManifoldDocument k3_document();

} // namespace pwv
