"""Base context, arithmetic backends and points on the logarithmic Riemann surface.

Every numerical routine in the package takes a :class:`QContext`.  The context
fixes the base ``q``, the derived constants used throughout (``ln q``, the dual
nome ``q_hat`` and ``c_q``) and the numerical policy.  It also owns the
arithmetic backend ``ctx.m``: numpy ``complex128`` arrays in double precision,
or numpy object arrays of mpmath numbers in extended precision.  Kernels are
written once against ``ctx.m`` and run unchanged in both modes.
"""

from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass, field

import mpmath
import numpy as np

from .errors import OutOfRange

__all__ = ["QContext", "BranchedComplex", "make_context", "as_log"]


class _DoubleBackend:
    """IEEE double arithmetic on numpy arrays."""

    name = "double"
    pi = math.pi
    unit_roundoff = 2.0**-53

    exp = staticmethod(np.exp)
    log = staticmethod(np.log)
    log1p = staticmethod(np.log1p)
    sqrt = staticmethod(np.sqrt)
    sin = staticmethod(np.sin)
    cos = staticmethod(np.cos)
    sinh = staticmethod(np.sinh)
    cosh = staticmethod(np.cosh)

    def num(self, x):
        if isinstance(x, (complex, np.complexfloating)):
            return complex(x)
        return float(x)

    def c(self, x):
        return np.asarray(x, dtype=np.complex128)

    def re(self, x):
        return np.real(x)

    def im(self, x):
        return np.imag(x)

    def absf(self, x):
        return np.abs(np.asarray(x, dtype=np.complex128))

    def isfinite(self, x):
        return np.isfinite(x)

    def scalar(self, x):
        x = np.asarray(x)
        return x.item() if x.ndim == 0 else x


class _MPBackend:
    """Extended precision: object arrays holding mpmath numbers."""

    name = "extended"

    def __init__(self, dps):
        self.mp = mpmath.MPContext()
        self.mp.dps = dps
        self.pi = self.mp.pi
        self.unit_roundoff = float(self.mp.mpf(2) ** (-self.mp.prec))
        mp = self.mp
        self.exp = np.frompyfunc(mp.exp, 1, 1)
        self.log = np.frompyfunc(mp.log, 1, 1)
        self.log1p = np.frompyfunc(mp.log1p, 1, 1)
        self.sqrt = np.frompyfunc(mp.sqrt, 1, 1)
        self.sin = np.frompyfunc(mp.sin, 1, 1)
        self.cos = np.frompyfunc(mp.cos, 1, 1)
        self.sinh = np.frompyfunc(mp.sinh, 1, 1)
        self.cosh = np.frompyfunc(mp.cosh, 1, 1)
        self._mpc = np.frompyfunc(lambda v: self.mp.mpc(self.num(v)), 1, 1)
        self._re = np.frompyfunc(lambda v: self.mp.mpf(v.real) if hasattr(v, "real") else v, 1, 1)
        self._im = np.frompyfunc(lambda v: self.mp.mpf(v.imag) if hasattr(v, "imag") else self.mp.zero, 1, 1)
        self._fin = np.frompyfunc(lambda v: bool(self.mp.isfinite(v)), 1, 1)

    def num(self, x):
        mp = self.mp
        if hasattr(x, "_mpc_"):
            return mp.mpc(x)
        if hasattr(x, "_mpf_"):
            return mp.mpf(x)
        if isinstance(x, (complex, np.complexfloating)):
            x = complex(x)
            return mp.mpc(mp.mpf(repr(x.real)), mp.mpf(repr(x.imag)))
        if isinstance(x, (int, np.integer)):
            return mp.mpf(int(x))
        return mp.mpf(repr(float(x)))

    def c(self, x):
        return np.asarray(self._mpc(np.asarray(x, dtype=object)), dtype=object)

    def re(self, x):
        return self._re(x)

    def im(self, x):
        return self._im(x)

    def absf(self, x):
        a = np.abs(np.asarray(x, dtype=object))
        return np.asarray(a, dtype=float)

    def isfinite(self, x):
        return np.asarray(self._fin(np.asarray(x, dtype=object)), dtype=bool)

    def scalar(self, x):
        x = np.asarray(x, dtype=object)
        return x[()] if x.ndim == 0 else x


@dataclass(frozen=True)
class QContext:
    """Fixed base ``q`` plus numerical policy.  Immutable after construction."""

    q: float
    eps: float = 1e-12
    max_terms: int = 10_000
    precision: str = "double"
    dps: int = 50
    m: object = field(init=False, repr=False, compare=False)
    qv: object = field(init=False, repr=False, compare=False)
    ln_q: object = field(init=False, compare=False)
    q_hat: object = field(init=False, compare=False)
    c_q: object = field(init=False, compare=False)

    def __post_init__(self):
        q = self.q
        if isinstance(q, (complex, np.complexfloating)) or not math.isfinite(float(q)):
            raise OutOfRange(f"q must be a finite real number, got {q!r}")
        if not 0.0 < float(q) < 1.0:
            raise OutOfRange(f"q must lie in (0, 1), got {q!r}")
        if not (math.isfinite(self.eps) and self.eps > 0):
            raise OutOfRange(f"eps must be positive and finite, got {self.eps!r}")
        if int(self.max_terms) < 64:
            raise OutOfRange("max_terms must be at least 64")
        if self.precision not in ("double", "extended"):
            raise OutOfRange(f"unknown precision mode {self.precision!r}")
        if self.precision == "extended" and self.dps < 50:
            raise OutOfRange("extended precision needs at least 50 digits")
        m = _DoubleBackend() if self.precision == "double" else _MPBackend(self.dps)
        qv = m.num(q)
        ln_q = m.log(qv) if m.name == "extended" else math.log(qv)
        set_ = object.__setattr__
        set_(self, "m", m)
        set_(self, "qv", qv)
        set_(self, "ln_q", ln_q)
        set_(self, "q_hat", m.exp(2 * m.pi**2 / ln_q))
        set_(self, "c_q", 1 / m.sqrt(-2 * m.pi * ln_q))

    @property
    def tiny(self):
        """Relative size below which series and product tails are dropped."""
        if self.precision == "double":
            return min(self.eps, 1e-12) * 1e-5
        return min(self.eps, 10.0 ** (-self.dps + 5)) * 1e-5

    def with_q(self, q):
        return QContext(q, eps=self.eps, max_terms=self.max_terms, precision=self.precision, dps=self.dps)


def make_context(q, eps=None, max_terms=10_000, precision=None, dps=50):
    """Build a :class:`QContext`.

    ``precision`` defaults to the ``QRESUM_PRECISION`` environment variable, then
    ``"double"``.  ``eps`` defaults to 1e-12 in double and 1e-40 in extended mode.
    """
    if precision is None:
        precision = os.environ.get("QRESUM_PRECISION", "double")
    if eps is None:
        eps = 1e-12 if precision == "double" else 1e-40
    try:
        qf = float(q)
    except (TypeError, ValueError) as exc:
        raise OutOfRange(f"q must be real, got {q!r}") from exc
    return QContext(qf, eps=float(eps), max_terms=int(max_terms), precision=precision, dps=dps)


@dataclass(frozen=True)
class BranchedComplex:
    """A point ``modulus * exp(i*arg)`` with the argument kept unwrapped.

    ``arg`` is never reduced modulo 2*pi, so ``log`` is single valued and
    ``rotate(1)`` moves to the next sheet without touching anything else.
    """

    modulus: float
    arg: float = 0.0

    def __post_init__(self):
        if not self.modulus > 0:
            raise OutOfRange(f"modulus must be positive, got {self.modulus!r}")

    @classmethod
    def from_complex(cls, z):
        z = complex(z)
        if z == 0:
            raise OutOfRange("0 has no logarithm")
        return cls(abs(z), cmath.phase(z))

    @classmethod
    def from_log(cls, log_value):
        log_value = complex(log_value)
        return cls(math.exp(log_value.real), log_value.imag)

    @classmethod
    def promote(cls, z):
        return z if isinstance(z, cls) else cls.from_complex(z)

    @property
    def value(self):
        return cmath.rect(float(self.modulus), float(self.arg))

    def log(self):
        return complex(math.log(self.modulus), self.arg)

    def rotate(self, turns=1):
        return BranchedComplex(self.modulus, self.arg + 2 * math.pi * turns)

    def __mul__(self, other):
        other = other if isinstance(other, BranchedComplex) else BranchedComplex.from_complex(other)
        return BranchedComplex(self.modulus * other.modulus, self.arg + other.arg)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = other if isinstance(other, BranchedComplex) else BranchedComplex.from_complex(other)
        return BranchedComplex(self.modulus / other.modulus, self.arg - other.arg)

    def __rtruediv__(self, other):
        return BranchedComplex.promote(other) / self

    def inverse(self):
        return BranchedComplex(1.0 / self.modulus, -self.arg)

    def __pow__(self, s):
        return cmath.exp(s * self.log())

    def __complex__(self):
        return self.value

    def __repr__(self):
        return f"BranchedComplex(modulus={self.modulus!r}, arg={self.arg!r})"


def as_log(z, ctx):
    """Backend logarithm of ``z``.

    A :class:`BranchedComplex` contributes its unwrapped argument, anything else
    is promoted with the principal branch.
    """
    m = ctx.m
    if isinstance(z, BranchedComplex):
        if m.name == "double":
            return z.log()
        mp = m.mp
        return mp.mpc(mp.log(m.num(z.modulus)), m.num(z.arg))
    return m.log(m.c(z)) if np.ndim(z) else m.scalar(m.log(m.c(z)))
