"""Numerical q-Borel-Laplace resummation of q-Gevrey divergent series."""

from .context import BranchedComplex, QContext, make_context
from .errors import (
    BadAbscissa,
    ConstraintViolation,
    DivergentSeries,
    GrowthViolation,
    InvalidN,
    NoConvergence,
    OutOfRange,
    PoleAtLattice,
    PoleAtParameter,
    PoleOnRay,
    QResumError,
    TruncationFailure,
    UnknownSuite,
)

__version__ = "0.1.0"

__all__ = [
    "BranchedComplex",
    "QContext",
    "make_context",
    "BadAbscissa",
    "ConstraintViolation",
    "DivergentSeries",
    "GrowthViolation",
    "InvalidN",
    "NoConvergence",
    "OutOfRange",
    "PoleAtLattice",
    "PoleAtParameter",
    "PoleOnRay",
    "QResumError",
    "TruncationFailure",
    "UnknownSuite",
]
