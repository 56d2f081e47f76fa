"""Exact traces and Hecke polynomial coefficients on S_2k(Gamma_0(N)).

Most callers want :func:`heckelab.trace.trace`, :func:`heckelab.hecke_algebra.a2`
or one of the checkers in :mod:`heckelab.verify`.
"""

from heckelab.errors import (
    DimensionTooSmallError,
    HeckeLabError,
    InternalInconsistencyError,
    PreconditionError,
)

__version__ = "0.1.0"

__all__ = [
    "DimensionTooSmallError",
    "HeckeLabError",
    "InternalInconsistencyError",
    "PreconditionError",
]
