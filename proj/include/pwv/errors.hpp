#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace pwv {

/// Base class for every failure raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input (JSON syntax, unreadable file, bad rational literal).
struct ParseError : Error {
    using Error::Error;
};

/// A document violated schema- or ring-level invariants; carries the full
/// itemized list.
struct SchemaError : Error {
    std::vector<std::string> violations;

    explicit SchemaError(std::vector<std::string> v)
        : Error(v.empty() ? "schema violations" : v.front()), violations(std::move(v)) {}
};

/// Mismatched shapes or ambient dimensions in linear-algebra operations.
struct DimensionError : Error {
    using Error::Error;
};

/// A caller-facing precondition failed (q-constraints, degenerate inputs).
struct PreconditionError : Error {
    using Error::Error;
};

/// A constructed object failed one of its own postcondition checks.
/// Signals an internal inconsistency, never expected on valid inputs.
struct InvariantError : Error {
    using Error::Error;
};

} // namespace pwv
