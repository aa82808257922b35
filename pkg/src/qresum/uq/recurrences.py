"""Contiguous relations in ``a`` and ``b`` and the associated continued fraction.

The relations

    (1 - b) U(a, qb, z) + b U(a, b, qz) - U(a, b, z) = 0,
    b (1 - a) U(qa, b, z) - a (1 - b) U(a, qb, z) + (a - b) U(a, b, z) = 0,
    (1 - abqz)(1 - aq) U(q^2 a, b, z) - (1 + (1-a) q - (b - aq) q a z) U(qa, b, z) + q U(a, b, z) = 0

hold for every transform.  Iterating the first two gives the continued fraction

    1 + alpha_1 z / (1 + alpha_2 z / (1 + ...)),
    alpha_{2n+1} = (1 - a q^n) / q^{2n+1},  alpha_{2n} = (1 - b q^n) / q^{2n},

formally equal to ``U(a, b, z) / U(a, bq, z/q)``.  For non-terminating data its
even and odd convergents settle on two different values, neither equal to the
ratio of resummed functions.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..context import BranchedComplex
from ..report import compare
from ..series import terminating_degree
from .methods import uq

__all__ = ["recurrence_residuals", "cf_alpha", "cf_convergent", "CFGap", "cf_gap", "u_ratio"]


def recurrence_residuals(kind, a, b, z, ctx, method=None, tol=1e-9):
    """Relative residuals of the three contiguous relations at one point."""
    q = ctx.q
    zb = BranchedComplex.promote(z)
    zc = complex(zb.value)
    U = lambda aa, bb, w: complex(uq(kind, aa, bb, w, ctx, method=method))  # noqa: E731
    u0 = U(a, b, zb)
    rels = {
        "b_shift": ((1 - b) * U(a, q * b, zb), b * U(a, b, zb * q), -u0),
        "ab_mixed": (b * (1 - a) * U(q * a, b, zb), -a * (1 - b) * U(a, q * b, zb), (a - b) * u0),
        "a_second": (
            (1 - a * b * q * zc) * (1 - a * q) * U(q * q * a, b, zb),
            -(1 + (1 - a) * q - (b - a * q) * q * a * zc) * U(q * a, b, zb),
            q * u0,
        ),
    }
    out = []
    for name, terms in rels.items():
        scale = max(abs(t) for t in terms)
        out.append(compare(f"recurrence_{name}", {"a": a, "b": b, "z": zb}, sum(terms), 0.0, tol, zero_scale=scale))
    return out


def cf_alpha(n, a, b, ctx):
    """Partial numerator coefficient ``alpha_n``."""
    q = ctx.q
    k, odd = divmod(n, 2)
    if odd:
        return (1 - a * q**k) / q ** (2 * k + 1)
    return (1 - b * q**k) / q ** (2 * k)


def cf_convergent(n, a, b, z, ctx):
    """``c_n = 1 + alpha_1 z/(1 + ... + alpha_{n-1} z/(1 + alpha_n z))`` by backward recurrence."""
    z = complex(BranchedComplex.promote(z).value)
    if n <= 0:
        return 1.0 + 0j
    tail = 1 + cf_alpha(n, a, b, ctx) * z
    for k in range(n - 1, 0, -1):
        tail = 1 + cf_alpha(k, a, b, ctx) * z / tail
    return tail


def u_ratio(kind, a, b, z, ctx, method=None):
    """``U(a, b, z) / U(a, bq, z/q)``."""
    zb = BranchedComplex.promote(z)
    return complex(uq(kind, a, b, zb, ctx, method=method)) / complex(uq(kind, a, b * ctx.q, zb / ctx.q, ctx, method=method))


@dataclass
class CFGap:
    even: complex
    odd: complex
    depth: int
    terminating: bool

    @property
    def gap(self):
        return abs(self.even - self.odd)


def cf_gap(a, b, z, ctx, tol=1e-13, max_depth=400):
    """Limits of the even and odd convergents.

    Depth doubles from 8 until both subsequences change by less than ``tol``
    relative.  A terminating ``a = q^{-n}`` stops the fraction at depth ``2n+1``.
    """
    deg = terminating_degree(a, ctx)
    if deg is not None:
        c = cf_convergent(2 * deg + 1, a, b, z, ctx)
        return CFGap(c, c, 2 * deg + 1, True)
    prev = None
    d = 8
    while d <= max_depth:
        ev, od = cf_convergent(2 * d, a, b, z, ctx), cf_convergent(2 * d + 1, a, b, z, ctx)
        if prev is not None:
            pe, po = prev
            if abs(ev - pe) <= tol * abs(ev) and abs(od - po) <= tol * abs(od):
                return CFGap(ev, od, 2 * d + 1, False)
        prev = (ev, od)
        d *= 2
    return CFGap(prev[0], prev[1], 2 * d + 1, False)
