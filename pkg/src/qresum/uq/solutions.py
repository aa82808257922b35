"""Companion solutions of the second-order q-difference equation and its invariants.

The resummed function ``U(z)`` solves

    z y(z/q^2) + (q - (a+b) z) y(z/q) - (q - a b z) y(z) = 0.

``y2`` is the small solution attached to the kernel, ``y_infinity`` the two
solutions at infinity.  Negated points ``-w`` are taken as ``w exp(i pi)``.
"""

from __future__ import annotations

import math

import numpy as np

from ..context import BranchedComplex, as_log
from ..errors import OutOfRange
from ..laplace import TransformKind
from ..qfuncs import e_q, qpoch_inf, theta_q
from ..report import compare
from ..series import PhiParams, phi
from .methods import k0, uq

__all__ = ["kernel_at", "y2", "y_infinity", "ode_residual", "wronskian_residual", "monodromy_jump", "monodromy_closed_form"]


def _kernel_kind(kind):
    kind = TransformKind.parse(kind) if not isinstance(kind, TransformKind) else kind
    return "E" if kind.kind == "E" else "theta"


def kernel_at(kind, w, ctx):
    """``c_q E_q(w)`` or ``-1/(ln q theta_q(w))`` at a branched point ``w``."""
    if _kernel_kind(kind) == "E":
        return ctx.c_q * e_q(w, ctx)
    return -1 / (ctx.ln_q * theta_q(complex(BranchedComplex.promote(w).value), ctx))


def _neg(w):
    return BranchedComplex.promote(w) * BranchedComplex(1.0, math.pi)


def y2(kind, a, b, z, ctx, form=2):
    """Small solution ``kappa(-qz) (abz) 2phi1(q/a, q/b; 0; q, abz)``.

    ``form=1`` sums that series (``|abz| < 1``); ``form=2`` uses the entire
    equivalent ``kappa(-qz) (bqz) 1phi1(q/a; bqz; q, aqz)``.
    """
    q = ctx.q
    zb = BranchedComplex.promote(z)
    zc = complex(zb.value)
    kap = kernel_at(kind, _neg(zb * q), ctx)
    if form == 1:
        x = a * b * zc
        if abs(x) >= 1:
            raise OutOfRange("form 1 needs |abz| < 1")
        return kap * qpoch_inf(x, ctx) * phi(PhiParams([q / a, q / b], [0.0]), x, ctx)
    return kap * qpoch_inf(b * q * zc, ctx) * phi(PhiParams([q / a], [b * q * zc]), a * q * zc, ctx)


def y_infinity(which, a, b, z, ctx):
    """``z^{-ln a/ln q} 2phi1(a, 0; aq/b; q, q/(abz))``.

    ``which`` is ``"a"`` (or 3) for this solution and ``"b"`` (or 4) for the one
    with ``a`` and ``b`` swapped.
    """
    which = {3: "a", 4: "b", "3": "a", "4": "b"}.get(which, which)
    if which not in ("a", "b"):
        raise OutOfRange("which must be 'a'/3 or 'b'/4")
    if which == "b":
        a, b = b, a
    q = ctx.q
    zb = BranchedComplex.promote(z)
    lz = complex(as_log(zb, ctx))
    la = complex(np.log(complex(a)))
    pw = complex(np.exp(-la / math.log(q) * lz))
    return pw * phi(PhiParams([a, 0.0], [a * q / b]), q / (a * b * complex(zb.value)), ctx)


def ode_residual(fn, a, b, z, ctx):
    """Relative residual of the q-difference equation for ``fn(BranchedComplex)``.

    Returns
    -------
    (float, float)
        ``|sum of terms| / max |term|`` and that scale.
    """
    q = ctx.q
    zb = BranchedComplex.promote(z)
    zc = complex(zb.value)
    t1 = zc * complex(fn(zb * q**-2))
    t2 = (q - (a + b) * zc) * complex(fn(zb / q))
    t3 = -(q - a * b * zc) * complex(fn(zb))
    scale = max(abs(t1), abs(t2), abs(t3))
    return abs(t1 + t2 + t3) / scale, scale


def wronskian_residual(kind, a, b, z, ctx, method=None, pairing=None):
    """``U(z) y2(z/q) - U(z/q) y2(z)`` against ``kappa(-z) (abz)``.

    ``pairing`` selects the kernel in ``y2`` and on the right (``"E"`` or
    ``"theta"``); it defaults to the transform's own kernel, and to ``theta`` for
    the discrete transform.
    """
    pairing = pairing or _kernel_kind(kind)
    zb = BranchedComplex.promote(z)
    q = ctx.q
    U = lambda w: uq(kind, a, b, w, ctx, method=method)  # noqa: E731
    Y = lambda w: y2(pairing, a, b, w, ctx)  # noqa: E731
    lhs = U(zb) * Y(zb / q) - U(zb / q) * Y(zb)
    rhs = kernel_at(pairing, _neg(zb), ctx) * qpoch_inf(a * b * complex(zb.value), ctx)
    label = TransformKind.parse(kind).label if not isinstance(kind, TransformKind) else kind.label
    return compare("wronskian", {"kind": label, "pairing": pairing, "a": a, "b": b, "z": zb}, lhs, rhs, 1e-8)


def monodromy_closed_form(kind, a, b, z, ctx):
    """``-2 pi i K0 kappa(-qz) (abz) 2phi1(q/a, q/b; 0; q, abz)`` with ``-qz = qz e^{i pi}``."""
    zb = BranchedComplex.promote(z)
    return -2j * math.pi * k0(a, b, ctx) * y2(kind, a, b, zb, ctx, form=1)


def monodromy_jump(kind, a, b, z, ctx, method="symmetric", tol=1e-8):
    """Numerical ``U(z e^{2 pi i}) - U(z)`` compared with the closed form.

    For the E kernel the rotated point is integrated on a clipped ray with no
    residues; the theta kernel continues across the poles of the integrand by
    numerical residues.
    """
    zb = BranchedComplex.promote(z)
    lhs = uq(kind, a, b, zb.rotate(1), ctx, method=method) - uq(kind, a, b, zb, ctx, method=method)
    rhs = monodromy_closed_form(kind, a, b, zb, ctx)
    return compare("monodromy", {"kind": _kernel_kind(kind), "a": a, "b": b, "z": zb, "method": method}, lhs, rhs, tol)
