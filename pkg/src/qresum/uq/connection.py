"""Connection to the solutions at infinity.

For ``b/a`` off the lattice ``q^Z``

    U(z) = p(a, z) a^{-ln(az)/ln q} (b)/(b/a) 2phi1(a, 0; aq/b; q, q/(abz)) + (a <-> b),

where the multiplier ``p`` depends on the transform.  Several closed forms of
``p`` are provided so that they can be checked against each other.  The
confluent case ``b = a q^m`` has its own formula with a logarithmic term.
"""

from __future__ import annotations

import math

import numpy as np

from ..context import BranchedComplex, as_log
from ..errors import ConstraintViolation, OutOfRange
from ..laplace import TransformKind
from ..qfuncs import (
    e_q,
    jacobi_theta,
    jacobi_theta1_prime,
    p_q_from_t,
    qpoch_inf,
    qpoch_n,
    qq_inf,
    theta_q,
    theta_q_logderiv,
)
from ..report import compare
from ..series import PhiParams, phi, psi_q
from .methods import uq

__all__ = ["PK_VARIANTS", "pk_multiplier", "connection_rhs", "connection_infinity", "connection_confluent", "confluent_rhs"]

PK_VARIANTS = {"E": ("E", "E2"), "theta": ("theta1", "theta2", "theta3"), "lambda": ("lambda",)}


def _logs(a, z, ctx):
    lq = math.log(ctx.q)
    la = complex(np.log(complex(a))) if not isinstance(a, BranchedComplex) else a.log()
    lz = complex(as_log(BranchedComplex.promote(z), ctx))
    return la, lz, lq


def _fourier_sum(alpha, zeta, ctx, square=False):
    """``sum_n w_n e^{-2 n pi i (alpha+zeta)} / sin(pi alpha + i n ln qh)`` (``^2`` and unweighted when ``square``)."""
    lqh = 2 * math.pi**2 / math.log(ctx.q)
    qh = math.exp(lqh)
    total = 0j
    n = 0
    small = 0
    best = 0.0
    while small < 5 and n < 400:
        for k in ((n,) if n == 0 else (n, -n)):
            sn = np.sin(math.pi * alpha + 1j * k * lqh)
            if square:
                term = np.exp(-2j * math.pi * k * zeta) / sn**2
            else:
                term = (-1) ** k * qh ** (k * k) * np.exp(-2j * math.pi * k * (alpha + zeta)) / sn
            total += term
            best = max(best, abs(term))
            small = small + 1 if abs(term) <= ctx.tiny * best else 0
        n += 1
    return total


def pk_multiplier(kind, a, z, ctx, variant=None):
    """Connection multiplier ``p(a, z)``.

    Parameters
    ----------
    kind : TransformKind or str
    a : complex or BranchedComplex
        ``ln a`` is the principal logarithm unless a branched point is passed.
    z : complex or BranchedComplex
    variant : str, optional
        ``"E"``/``"E2"`` for the E kernel, ``"theta1"``/``"theta2"``/``"theta3"``
        for the theta kernel, ``"lambda"`` for the discrete transform.

    Returns
    -------
    complex
    """
    kind = TransformKind.parse(kind) if not isinstance(kind, TransformKind) else kind
    variant = variant or PK_VARIANTS[kind.kind][0]
    if variant not in PK_VARIANTS[kind.kind]:
        raise OutOfRange(f"variant {variant!r} does not belong to kind {kind.kind!r}")
    la, lz, lq = _logs(a, z, ctx)
    alpha, zeta = la / lq, lz / lq
    qq3 = complex(qq_inf(ctx)) ** 3
    q18 = ctx.q**0.125
    qh = float(ctx.q_hat)
    pi = math.pi
    av = complex(np.exp(la))
    zv = complex(np.exp(lz))
    if variant == "lambda":
        llam = complex(as_log(BranchedComplex.promote(kind.lam), ctx))
        P = lambda L: complex(p_q_from_t(L / lq, ctx))  # noqa: E731
        return P(la + llam) * P(llam - la - lz) / (P(llam) * P(llam - lz))
    if variant == "E":
        pref = np.sqrt(-2 * pi**3 / lq**3) / (q18 * qq3)
        return pref * complex(jacobi_theta(1, pi * alpha, qh, ctx)) * _fourier_sum(alpha, zeta, ctx)
    if variant == "E2":
        pref = -pi * complex(e_q(BranchedComplex.from_log(la), ctx)) * complex(theta_q(-av, ctx)) / (qq3 * q18 * lq)
        return pref * _fourier_sum(alpha, zeta, ctx)
    if variant == "theta1":
        t1 = lambda u: complex(jacobi_theta(1, u, qh, ctx))  # noqa: E731
        d1 = lambda u: complex(jacobi_theta1_prime(u, qh, ctx))  # noqa: E731
        ua, uaz, uz = pi * alpha, pi * (alpha + zeta), pi * zeta
        pref = np.sqrt(-2 * pi**3 / lq**3) * t1(ua) * t1(uaz) / (q18 * qq3 * t1(uz))
        return pref * (d1(ua) / t1(ua) - d1(uaz) / t1(uaz))
    if variant == "theta2":
        pref = pi**2 * complex(theta_q(-av, ctx)) ** 2 * np.exp(la * la / lq) / (av * qq3**2 * lq**2)
        return pref * _fourier_sum(alpha, zeta, ctx, square=True)
    # theta3: closed form with theta_q log-derivatives
    th = lambda x: complex(theta_q(x, ctx))  # noqa: E731
    ld = lambda x: complex(theta_q_logderiv(x, ctx))  # noqa: E731
    pw = np.exp(la * (la + lz) / lq)
    pref = pw * th(-av * zv) * th(-av) / (th(-zv) * qq3)
    # x theta'(x)/theta(x) is the log-derivative, so theta'(-a)/theta(-a) = ld(-a)/(-a)
    return pref * (lz / (av * lq) + ld(-av) / (-av) - zv * ld(-av * zv) / (-av * zv))


def _term(kind, a, b, z, ctx, variant):
    q = ctx.q
    la, lz, lq = _logs(a, z, ctx)
    p = pk_multiplier(kind, a, z, ctx, variant)
    pw = np.exp(-la * (la + lz) / lq)
    x = q / (a * b * complex(np.exp(lz)))
    return p * pw * qpoch_inf(b, ctx) / qpoch_inf(b / a, ctx) * phi(PhiParams([a, 0.0], [a * q / b]), x, ctx)


def connection_rhs(kind, a, b, z, ctx, variant=None):
    """Right side of the connection formula (needs ``|q/(abz)| < 1``, ``b/a`` off ``q^Z``)."""
    kind = TransformKind.parse(kind) if not isinstance(kind, TransformKind) else kind
    zb = BranchedComplex.promote(z)
    if abs(ctx.q / (a * b * complex(zb.value))) >= 1:
        raise ConstraintViolation("the series at infinity needs |q/(abz)| < 1")
    vb = None if variant is None else variant
    return _term(kind, a, b, zb, ctx, variant) + _term(kind, b, a, zb, ctx, vb)


def connection_infinity(kind, a, b, z, ctx, variant=None, method=None, tol=1e-8):
    """Compare ``U`` with the connection formula at a point near infinity."""
    kind = TransformKind.parse(kind) if not isinstance(kind, TransformKind) else kind
    zb = BranchedComplex.promote(z)
    lhs = uq(kind, a, b, zb, ctx, method=method)
    rhs = connection_rhs(kind, a, b, zb, ctx, variant)
    rec = {"kind": kind.label, "variant": variant or PK_VARIANTS[kind.kind][0], "a": a, "b": b, "z": zb}
    return compare("connection_infinity", rec, lhs, rhs, tol)


def _dp_dlna(kind, a, z, ctx, variant, h=1e-3):
    """``a dp/da`` by Richardson-extrapolated central differences in ``ln a``."""
    la = complex(np.log(complex(a)))

    def D(hh):
        up = pk_multiplier(kind, BranchedComplex.from_log(la + hh), z, ctx, variant)
        dn = pk_multiplier(kind, BranchedComplex.from_log(la - hh), z, ctx, variant)
        return (up - dn) / (2 * hh)

    d1, d2, d3 = D(h), D(h / 2), D(h / 4)
    r1, r2 = (4 * d2 - d1) / 3, (4 * d3 - d2) / 3
    return (16 * r2 - r1) / 15


def confluent_rhs(kind, a, m, z, ctx, variant=None):
    """Predicted ``U(a, a q^m, z)`` from the confluent connection formula."""
    kind = TransformKind.parse(kind) if not isinstance(kind, TransformKind) else kind
    q = ctx.q
    b = a * q**m
    zb = BranchedComplex.promote(z)
    la, lz, lq = _logs(a, zb, ctx)
    zv = complex(np.exp(lz))
    x = q / (a * b * zv)
    if abs(x) >= 1:
        raise ConstraintViolation("the confluent formula needs |q/(abz)| < 1")
    p = pk_multiplier(kind, a, zb, ctx, variant)
    qn = lambda c, n: complex(qpoch_n(c, n, ctx))  # noqa: E731
    first = 0j
    for n in range(m):
        first += qn(a, n) / (qn(q**-m, n + 1) * qn(q, n)) * x**n
    first *= -p * qn(q, m) / (q**m * qn(a, m))
    lab = np.log(a * b) + lz
    second = (p * (1 - lab / lq) + _dp_dlna(kind, a, zb, ctx, variant)) * q ** (m * (m - 1) / 2)
    second *= complex(phi(PhiParams([b, 0.0], [q ** (m + 1)]), x, ctx)) / (qn(q, m) * (-a * b * zv / q) ** m)
    third = 0j
    n = 0
    best, small = 0.0, 0
    while small < 5:
        t = qn(b, n) / (qn(q, m + n) * qn(q, n)) * x ** (m + n)
        t *= complex(psi_q(b * q**n, ctx)) - complex(psi_q(q ** (m + n + 1), ctx)) - complex(psi_q(q ** (n + 1), ctx))
        third += t
        best = max(best, abs(t))
        small = small + 1 if abs(t) <= ctx.tiny * best else 0
        n += 1
    third *= p * (-1) ** m * q ** (m * (m - 1) / 2)
    lhs_factor = np.exp(la * (la + lz) / lq) * complex(qq_inf(ctx)) / complex(qpoch_inf(a, ctx))
    return (first + second + third) / lhs_factor


def connection_confluent(kind, a, m, z, ctx, variant=None, method=None, tol=1e-8):
    """Compare ``U(a, a q^m, z)`` with the confluent connection formula."""
    kind = TransformKind.parse(kind) if not isinstance(kind, TransformKind) else kind
    zb = BranchedComplex.promote(z)
    lhs = uq(kind, a, a * ctx.q**m, zb, ctx, method=method)
    rhs = confluent_rhs(kind, a, m, zb, ctx, variant)
    rec = {"kind": kind.label, "a": a, "m": m, "z": zb}
    return compare("connection_confluent", rec, lhs, rhs, tol)
