"""Exact computations with composition algebras, Jordan matrix spaces, spinors and skew pencils."""

from .errors import (AlbertError, DimensionMismatch, FieldMismatch, IndeterminacyError,
                     MalformedInput, PreconditionError)
from .exactlin import GF, QQ, FieldSpec, Quotient, Sampler, Subspace

__all__ = [
    "AlbertError", "DimensionMismatch", "FieldMismatch", "IndeterminacyError",
    "MalformedInput", "PreconditionError", "GF", "QQ", "FieldSpec", "Quotient",
    "Sampler", "Subspace",
]
__version__ = "0.1.0"
