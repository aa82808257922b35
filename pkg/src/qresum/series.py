"""Basic hypergeometric series, bilateral series and formal q-Gevrey series.

All series are summed term by term through the ratio of consecutive terms, so
parameters and arguments may be backend arrays of the same shape.  A series
stops after five consecutive terms below ``ctx.tiny`` relative to the largest
term seen.  Terminating series (an upper parameter equal to ``q**-m``) are
detected and summed exactly to degree ``m``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DivergentSeries, PoleAtParameter, TruncationFailure
from .qfuncs import qpoch_n

__all__ = [
    "PhiParams",
    "FormalSeries",
    "phi",
    "log_phi",
    "psi",
    "terminating_degree",
    "phi20_coeffs",
    "qborel",
    "stieltjes_wigert",
    "psi_q",
]

TERMINATE_TOL = 1e-12
MAX_TERMINATING = 200


@dataclass
class PhiParams:
    """Upper parameters ``a_1..a_r`` and lower parameters ``b_1..b_s``."""

    upper: list = field(default_factory=list)
    lower: list = field(default_factory=list)

    @property
    def r(self):
        return len(self.upper)

    @property
    def s(self):
        return len(self.lower)


def terminating_degree(a, ctx):
    """``m`` when the scalar ``a`` equals ``q**-m`` to 1e-12, else ``None``."""
    if np.ndim(a) or hasattr(a, "__len__"):
        return None
    c = complex(a)
    if abs(c) < 1 - 1e-12 or abs(c.imag) > TERMINATE_TOL * abs(c):
        return None
    m = round(math.log(abs(c)) / -math.log(ctx.q))
    if m > MAX_TERMINATING:
        return None
    if abs(c * ctx.q**m - 1) < TERMINATE_TOL:
        return m
    return None


def _degree(upper, ctx):
    degs = [d for d in (terminating_degree(a, ctx) for a in upper) if d is not None]
    return min(degs) if degs else None


def _as_params(params):
    if isinstance(params, PhiParams):
        return params
    up, lo = params
    return PhiParams(list(up), list(lo))


def phi(params, z, ctx):
    """``rphi_s(a; b; q, z)`` with the standard ``((-1)^n q^{n(n-1)/2})^{1+s-r}`` weight.

    Parameters
    ----------
    params : PhiParams or (upper, lower)
        Parameter lists; entries may be backend arrays broadcasting with ``z``.
    z : complex or array
    ctx : QContext

    Returns
    -------
    complex or array

    Raises
    ------
    DivergentSeries
        ``r > s + 1`` without termination, or ``r = s + 1`` with ``|z| >= 1``.
    PoleAtParameter
        A lower parameter equals ``q**-k`` within the summation range.
    """
    total, scale = _phi_scaled(params, z, ctx)
    m = ctx.m
    if np.any(scale):
        total = total * m.exp(m.c(scale))
    return m.scalar(total)


def log_phi(params, z, ctx):
    """``log rphi_s`` for arguments where the value itself would overflow."""
    total, scale = _phi_scaled(params, z, ctx)
    m = ctx.m
    with np.errstate(divide="ignore"):
        return m.scalar(m.log(total) + scale)


RESCALE = 1e200


def _phi_scaled(params, z, ctx):
    p = _as_params(params)
    m = ctx.m
    z = m.c(z)
    deg = _degree(p.upper, ctx)
    e = 1 + p.s - p.r
    if deg is None:
        if e < 0:
            raise DivergentSeries(f"{p.r}phi{p.s} with r > s+1 diverges for z != 0")
        if e == 0 and np.any(m.absf(z) >= 1.0):
            raise DivergentSeries(f"{p.r}phi{p.s} needs |z| < 1")
    upper = [m.c(a) for a in p.upper]
    lower = [m.c(b) for b in p.lower]
    shape = np.broadcast_shapes(np.shape(z), *[np.shape(a) for a in upper + lower])
    term = m.c(np.ones(shape))
    total = term
    biggest = np.ones(shape)
    scale = np.zeros(shape)
    small = 0
    n = 0
    q = ctx.qv
    while True:
        if deg is not None and n >= deg:
            break
        qn = q**n
        ratio = z / (1 - qn * q)
        for a in upper:
            ratio = ratio * (1 - a * qn)
        for b in lower:
            den = 1 - b * qn
            if np.any(m.absf(den) < 1e-14):
                raise PoleAtParameter(f"lower parameter hits q**-{n}")
            ratio = ratio / den
        if e:
            ratio = ratio * (-qn) ** e
        term = term * ratio
        total = total + term
        n += 1
        mag = np.asarray(m.absf(term))
        if not np.all(np.isfinite(mag)):
            raise TruncationFailure(f"non-finite term at n={n}")
        big = mag > RESCALE
        if np.any(big):
            f = np.where(big, 1 / RESCALE, 1.0)
            term, total = term * m.c(f), total * m.c(f)
            mag, biggest = mag * f, biggest * f
            scale = scale + np.where(big, math.log(RESCALE), 0.0)
        biggest = np.maximum(biggest, mag)
        if deg is None:
            small = small + 1 if np.all(mag <= ctx.tiny * biggest) else 0
            if small >= 5:
                break
        if n > ctx.max_terms:
            raise TruncationFailure("series did not settle within max_terms")
    return total, (scale if np.ndim(scale) else float(scale))


def psi(params, z, ctx):
    """Bilateral ``rpsi_s(a; b; q, z)`` with weight ``((-1)^n q^{n(n-1)/2})^{s-r}``.

    Requires ``r <= s``; ``r = s`` additionally needs ``|b_1...b_s/(a_1...a_r z)| < 1 < 1/|z|``.
    """
    p = _as_params(params)
    m = ctx.m
    if p.r > p.s:
        raise DivergentSeries("bilateral series needs r <= s")
    z = m.c(z)
    upper = [m.c(a) for a in p.upper]
    lower = [m.c(b) for b in p.lower]
    if p.r == p.s:
        num = m.c(1)
        for b in lower:
            num = num * b
        den = z
        for a in upper:
            den = den * a
        if np.any(m.absf(z) >= 1) or np.any(m.absf(num) >= m.absf(den)):
            raise DivergentSeries("bilateral series outside its annulus of convergence")
    for a in upper:
        av = np.atleast_1d(m.absf(a))
        for k in range(1, 400):
            if np.any(m.absf(1 - a * ctx.qv ** (-k)) < 1e-10):
                raise PoleAtParameter(f"upper parameter equals q**{k}")
            if np.all(av * ctx.q ** (-k) > 1e6):
                break
    e = p.s - p.r
    q = ctx.qv
    shape = np.broadcast_shapes(np.shape(z), *[np.shape(a) for a in upper + lower])
    one = m.c(np.ones(shape))

    def run(step):
        term = one
        total = one * 0
        biggest = np.zeros(shape)
        small = 0
        n = 0
        while small < 5:
            if step > 0:
                qn = q**n
                ratio = z * (-qn) ** e if e else z
                for a in upper:
                    ratio = ratio * (1 - a * qn)
                for b in lower:
                    ratio = ratio / (1 - b * qn)
            else:
                qn = q ** (n - 1)
                ratio = (-1 / qn) ** e / z if e else 1 / z
                for b in lower:
                    ratio = ratio * (1 - b * qn)
                for a in upper:
                    ratio = ratio / (1 - a * qn)
            term = term * ratio
            total = total + term
            n += step
            mag = np.asarray(m.absf(term))
            if not np.all(np.isfinite(mag)):
                raise DivergentSeries("bilateral series terms overflow")
            biggest = np.maximum(biggest, mag)
            small = small + 1 if np.all(mag <= ctx.tiny * np.maximum(biggest, 1.0)) else 0
            if abs(n) > ctx.max_terms:
                raise TruncationFailure("bilateral series did not settle")
        return total

    return m.scalar(one + run(1) + run(-1))


@dataclass
class FormalSeries:
    """Coefficients of a formal power series; ``clamped`` records truncation of ``N``."""

    coeffs: list
    requested: int
    clamped: bool = False

    def __len__(self):
        return len(self.coeffs)

    def partial_sum(self, z, N=None):
        """``sum_{n<N} c_n z**n`` with ``N`` clamped to the stored length."""
        N = len(self.coeffs) if N is None else min(int(N), len(self.coeffs))
        total = 0
        zn = 1
        for c in self.coeffs[:N]:
            total = total + c * zn
            zn = zn * z
        return total


def phi20_coeffs(a, b, N, ctx):
    """Coefficients ``(a,b;q)_n/(q;q)_n (-1)^n q^{-n(n-1)/2}`` of ``2phi0(a,b;-;q,z)``.

    Coefficients that would overflow are dropped and the result is marked clamped.
    """
    if int(N) < 0:
        raise ValueError("N must be non-negative")
    m = ctx.m
    q = ctx.qv
    coeffs = []
    c = m.num(1)
    for n in range(int(N)):
        if n:
            c = c * (1 - a * q ** (n - 1)) * (1 - b * q ** (n - 1)) / (1 - q**n) * (-(q ** -(n - 1)))
        if not math.isfinite(abs(complex(c))):
            return FormalSeries(coeffs, int(N), True)
        coeffs.append(c)
    return FormalSeries(coeffs, int(N), False)


def qborel(series, ctx):
    """q-Borel transform ``c_n -> c_n q^{n(n-1)/2}`` of a formal series."""
    q = ctx.qv
    return FormalSeries([c * q ** (n * (n - 1) // 2) for n, c in enumerate(series.coeffs)], series.requested, series.clamped)


def stieltjes_wigert(n, x, ctx):
    """``S_n(x) = 1phi1(q^-n; 0; q, -x q^{n+1}) / (q;q)_n`` as an explicit polynomial."""
    m = ctx.m
    q = ctx.qv
    x = m.c(x)
    total = m.c(np.zeros(np.shape(x)))
    coef = m.num(1)
    xp = m.c(np.ones(np.shape(x)))
    for k in range(n + 1):
        if k:
            # ratio of 1phi1 coefficients times (-q^{k-1}) * (-q^{n+1})
            coef = coef * (1 - q ** (k - 1 - n)) / (1 - q**k) * q ** (k - 1) * q ** (n + 1)
            xp = xp * x
        total = total + coef * xp
    return m.scalar(total / qpoch_n(q, n, ctx))


def psi_q(a, ctx):
    """``Psi_q(a) = sum_{l>=0} a q^l / (1 - a q^l)``."""
    m = ctx.m
    a = m.c(a)
    total = m.c(np.zeros(np.shape(a)))
    q = ctx.qv
    small = 0
    biggest = np.zeros(np.shape(a))
    l = 0
    while small < 5:
        x = a * q**l
        den = 1 - x
        if np.any(m.absf(den) < 1e-14):
            raise PoleAtParameter("Psi_q has a pole at a = q**-l")
        t = x / den
        total = total + t
        mag = np.asarray(m.absf(t))
        biggest = np.maximum(biggest, mag)
        small = small + 1 if np.all(mag <= ctx.tiny * np.maximum(biggest, 1e-300)) else 0
        l += 1
        if l > ctx.max_terms:
            raise TruncationFailure("Psi_q did not settle")
    return m.scalar(total)
