"""Exact verifier for perverse / monodromy-weight filtration identities
on hyper-Kahler-type cohomology rings."""

from ._pwv import (
    DocumentParseError,
    PreconditionError,
    VerificationError,
    analyze_document_json,
    k3_document_json,
    signature,
    validate_document_json,
    weight_filtration_dims,
)

__all__ = [
    "DocumentParseError",
    "PreconditionError",
    "VerificationError",
    "analyze_document_json",
    "k3_document_json",
    "signature",
    "validate_document_json",
    "weight_filtration_dims",
]

__version__ = "1.0.0"
