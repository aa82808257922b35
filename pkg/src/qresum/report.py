"""The record every check produces, plus a shared bilateral summation helper."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import TruncationFailure

__all__ = ["VerificationReport", "compare", "bilateral_sum", "unilateral_sum", "to_complex"]

REL_FLOOR = 1e-300


def to_complex(x):
    """Plain Python complex from a backend scalar (float, numpy or mpmath)."""
    if hasattr(x, "_mpc_") or hasattr(x, "_mpf_"):
        return complex(x)
    return complex(np.asarray(x).item()) if np.ndim(x) == 0 else complex(x)


@dataclass
class VerificationReport:
    """One identity checked at one parameter point."""

    identity_id: str
    point: dict
    lhs: complex
    rhs: complex
    abs_err: float
    rel_err: float
    passed: bool
    note: str = ""
    tol: float = 0.0
    extras: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "identity_id": self.identity_id,
            "point": {k: _jsonable(v) for k, v in self.point.items()},
            "lhs": {"re": self.lhs.real, "im": self.lhs.imag},
            "rhs": {"re": self.rhs.real, "im": self.rhs.imag},
            "abs_err": self.abs_err,
            "rel_err": self.rel_err,
            "pass": self.passed,
            "note": self.note,
        }


def _jsonable(v):
    if isinstance(v, (bool, int, str)) or v is None:
        return v
    if isinstance(v, float):
        return v
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if hasattr(v, "modulus") and hasattr(v, "arg"):
        return {"mod": float(v.modulus), "arg": float(v.arg)}
    c = to_complex(v)
    return c.real if c.imag == 0 else {"re": c.real, "im": c.imag}


def compare(identity_id, point, lhs, rhs, tol, zero_scale=None, note="", extras=None):
    """Build a report from two independently computed sides.

    ``abs_err`` is taken from the backend difference before conversion so that
    extended-precision runs keep their resolution.  When the identity's exact
    value is zero pass ``zero_scale``; the check then passes on
    ``abs_err <= tol * zero_scale``.
    """
    diff = to_complex(lhs - rhs) if not isinstance(lhs, complex) or not isinstance(rhs, complex) else lhs - rhs
    lhs_c, rhs_c = to_complex(lhs), to_complex(rhs)
    abs_err = abs(diff)
    rel_err = abs_err / max(abs(lhs_c), abs(rhs_c), REL_FLOOR)
    if not (math.isfinite(abs_err) and math.isfinite(rel_err)):
        passed = False
    elif zero_scale is not None:
        passed = abs_err <= tol * zero_scale
    else:
        passed = rel_err <= tol
    return VerificationReport(identity_id, dict(point), lhs_c, rhs_c, abs_err, rel_err, bool(passed), note, tol, extras or {})


def _run(term, start, step, tol, max_terms, streak=5):
    total = 0
    biggest = 0.0
    small = 0
    n = start
    count = 0
    while small < streak:
        t = term(n)
        total = total + t
        mag = abs(to_complex(t))
        if not math.isfinite(mag):
            raise TruncationFailure(f"non-finite term at n={n}")
        biggest = max(biggest, mag)
        small = small + 1 if mag <= tol * biggest else 0
        n += step
        count += 1
        if count > max_terms:
            raise TruncationFailure("series did not settle within max_terms")
    return total, biggest


def bilateral_sum(term, ctx, tol=None):
    """``sum_{n in Z} term(n)``; each side stops after 5 consecutive negligible terms."""
    tol = ctx.tiny if tol is None else tol
    right, b1 = _run(term, 0, 1, tol, ctx.max_terms)
    left, b2 = _run(term, -1, -1, tol, ctx.max_terms)
    return right + left


def unilateral_sum(term, ctx, start=0, tol=None):
    """``sum_{n >= start} term(n)`` with the same stopping rule."""
    tol = ctx.tiny if tol is None else tol
    return _run(term, start, 1, tol, ctx.max_terms)[0]
