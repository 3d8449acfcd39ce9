"""Exact-arithmetic verification library for the Frobenius fixed-point
structure of ordinary genus-2 curves in characteristic 2, together with
Frobenius-periodic module machinery over truncated power-series rings.

The public surface is re-exported here; see the module docstrings for the
mathematical conventions each layer pins down.
"""

from .gf2 import (
    BinaryField,
    FieldElement,
    FieldEmbedding,
    artin_schreier_solve,
    build_field,
    default_field,
    embed,
    identity_embedding,
    join_fields,
)

__all__ = [
    "BinaryField",
    "FieldElement",
    "FieldEmbedding",
    "artin_schreier_solve",
    "build_field",
    "default_field",
    "embed",
    "identity_embedding",
    "join_fields",
]

__version__ = "0.1.0"
