"""Differences between the three transforms and their Stokes functions.

For a Borel transform ``S`` of moderate growth,

    L_theta - L_E      = S(z)/theta_q(-z) * Pc(z),
    L_theta - L_lambda = S(z)/theta_q(-z) * Pd(z),

where ``Pc`` and ``Pd`` are q-periodic up to a logarithm.  This module evaluates
both functions by independent routes, their removable values at ``z = q^m``,
their monodromy, and a Cauchy-Heine representation of the transforms that the
difference formulas are checked against.
"""

from __future__ import annotations

import math

import numpy as np

from .context import BranchedComplex, as_log
from .errors import GrowthViolation, OutOfRange
from .laplace import TransformKind
from .qfuncs import p_q, p_q_from_t, qpoch_inf, qq_inf, theta_q, theta_q_logderiv, theta_q_logderiv2
from .quad import bilateral_lattice_sum, check_lattice_point, integrate_halfline
from .report import compare
from .series import PhiParams, phi

__all__ = [
    "pqc",
    "pqd",
    "removable_limit",
    "stokes_monodromy",
    "check_growth",
    "cauchy_heine_reconstruct",
    "transform_difference",
    "uq_difference_closed_form",
]


def _lz(z, ctx):
    return complex(as_log(BranchedComplex.promote(z), ctx))


def pqc(z, ctx, method="series", nodes=64):
    """Stokes function of the continuous pair.

    ``method="series"`` sums ``(-2 pi/ln q) sum (-1)^n qh^{n^2} sin(2 pi n ln z/ln q)/sinh(n ln qh)``;
    ``method="integral"`` evaluates ``ln z/ln q + (1/ln q) int_q^1 P_q(t) ld(t/z) dt/t``
    (``ld`` the theta log-derivative) by the trapezoid rule on a periodic integrand.
    """
    lz = _lz(z, ctx)
    lq = math.log(ctx.q)
    if method == "series":
        lqh = 2 * math.pi**2 / lq
        total = 0j
        best, small, n = 0.0, 0, 1
        while small < 5:
            t = (-1) ** n * math.exp(lqh * n * n) * np.sin(2 * math.pi * n * lz / lq) / math.sinh(n * lqh)
            total += t
            best = max(best, abs(t))
            small = small + 1 if abs(t) <= ctx.tiny * best else 0
            n += 1
        return -2 * math.pi / lq * total
    if method != "integral":
        raise OutOfRange(f"unknown method {method!r}")
    # with t = q^s the integral is -ln q * int_0^1 P(q^s) ld(q^s/z) ds; ld(q^s/z) + s is 1-periodic
    # and int_0^1 s P(q^s) ds = 1/2, so a periodic trapezoid rule applies
    prev = None
    n = nodes
    while True:
        s = np.arange(n) / n
        P = np.asarray(p_q_from_t(s, ctx), dtype=complex)
        g = np.asarray(theta_q_logderiv(np.exp(s * lq - lz), ctx), dtype=complex) + s
        val = np.mean(P * g) - 0.5
        if prev is not None and abs(val - prev) <= ctx.eps * max(abs(val), 1.0):
            break
        prev = val
        n *= 2
        if n > 1 << 16:
            break
    return lz / lq - val


def pqd(z, lam, ctx):
    """Stokes function of the theta/discrete pair: ``ld(lam) - ld(lam/z) + ln z/ln q``."""
    check_lattice_point(lam, ctx)
    lz = _lz(z, ctx)
    lam = complex(BranchedComplex.promote(lam).value)
    zv = complex(np.exp(lz))
    ld = lambda x: complex(theta_q_logderiv(x, ctx))  # noqa: E731
    return ld(lam) - ld(lam / zv) + lz / math.log(ctx.q)


def removable_limit(which, m, ctx, lam=None, form=1):
    """Value of ``P(z)/theta_q(-z)`` at ``z = q^m``.

    ``which="c"`` for the continuous pair, ``"d"`` for the discrete pair (needs
    ``lam``; ``form=2`` uses the second derivative of ``log theta_q``).
    """
    q = ctx.q
    lq = math.log(q)
    qq3 = complex(qq_inf(ctx)) ** 3
    sgn = q ** (m * (m - 1) / 2)
    if which == "c":
        lqh = 2 * math.pi**2 / lq
        total, n, best, small = 0.0, 1, 0.0, 0
        while small < 5:
            t = (-1) ** n * math.exp(lqh * n * n) * n / math.sinh(n * lqh)
            total += t
            best = max(best, abs(t))
            small = small + 1 if abs(t) <= ctx.tiny * best else 0
            n += 1
        return (-1) ** m * sgn / qq3 * (2 * math.pi / lq) ** 2 * total
    if which != "d":
        raise OutOfRange("which must be 'c' or 'd'")
    if lam is None:
        raise OutOfRange("the discrete limit needs lam")
    lam = complex(lam)
    if form == 2:
        inner = 1 / lq + complex(theta_q_logderiv2(lam, ctx))
    else:
        inner = 1 / lq
        n, best, small = 0, 0.0, 0
        # bilateral sum of lam q^n / (1 + lam q^n)^2
        for step in (1, -1):
            n = 0 if step == 1 else -1
            best, small = 0.0, 0
            while small < 5:
                x = lam * q**n
                t = x / (1 + x) ** 2
                inner += t
                best = max(best, abs(t))
                small = small + 1 if abs(t) <= ctx.tiny * best else 0
                n += step
    return (-1) ** (m - 1) * sgn / qq3 * inner


def stokes_monodromy(which, z, ctx, lam=None, tol=1e-10):
    """Jump of ``Pc`` or ``Pd`` under ``z -> z e^{2 pi i}`` against its closed form."""
    zb = BranchedComplex.promote(z)
    lq = math.log(ctx.q)
    if which == "c":
        lhs = pqc(zb.rotate(1), ctx) - pqc(zb, ctx)
        rhs = -2j * math.pi / lq * (complex(p_q(zb * BranchedComplex(1.0, math.pi), ctx)) - 1)
    elif which == "d":
        lhs = pqd(zb.rotate(1), lam, ctx) - pqd(zb, lam, ctx)
        rhs = 2j * math.pi / lq
    else:
        raise OutOfRange("which must be 'c' or 'd'")
    return compare(f"stokes_monodromy_{which}", {"z": zb, "lam": lam}, lhs, rhs, tol)


def check_growth(log_s, ctx, c=0.99, rays=8):
    """Reject ``S`` whose modulus outgrows ``(-c|t|;q)_inf`` on a sample of rays.

    Raises
    ------
    GrowthViolation
    """
    m = ctx.m
    r = np.logspace(0, 8, 33)
    den = np.asarray(m.re(m.c(_lqp_real(c, np.log(r), ctx))), dtype=float)
    for ang in np.linspace(-math.pi, math.pi, rays, endpoint=False):
        lt = np.log(r) + 1j * ang
        ls = np.asarray(m.re(m.c(log_s(np.exp(lt), lt))), dtype=float)
        ratio = ls - den
        if np.isfinite(ratio[-1]) and ratio[-1] - np.median(ratio[np.isfinite(ratio)]) > math.log(1e3):
            raise GrowthViolation("S grows faster than (-c|t|;q)_inf for every c < 1")


def _lqp_real(c, lr, ctx):
    from .laplace import log_qpoch_scaled

    return log_qpoch_scaled(c, ctx.m.c(lr), ctx)


def cauchy_heine_reconstruct(log_s, z, kind, ctx, check=True):
    """Transform of the function with Borel transform ``S`` from ``S`` alone.

    ``log_s(t, lt)`` is the log of ``S`` at ``t``.  The theta transform is
    ``(-1/ln q) int_0^inf S(-t) / (theta_q(t) (t + z)) dt``; the E transform uses
    ``C_q E_q(t)`` in place of ``-1/(ln q theta_q(t))`` and the discrete one the
    sum ``sum_n S(-q^n lam) q^n lam / (theta_q(q^n lam)(q^n lam + z))``.
    """
    kind = TransformKind.parse(kind) if not isinstance(kind, TransformKind) else kind
    m = ctx.m
    if check:
        check_growth(log_s, ctx)
    zc = complex(BranchedComplex.promote(z).value)

    def lf(t, lt):
        t = m.c(t)
        return m.c(log_s(-t, m.c(lt) + 1j * math.pi)) + m.c(lt) - m.log(t + zc)

    if kind.kind == "lambda":
        return bilateral_lattice_sum(lf, kind.lam, 1.0, ctx)
    return integrate_halfline(lf, 1.0, kind.kind, ctx)


def transform_difference(which, log_s, z, ctx, lam=None):
    """Both sides of a transform-difference identity for the Borel transform ``S``.

    Returns ``(lhs, rhs)`` with ``lhs = L_theta - L_E`` (``which="c"``) or
    ``L_theta - L_lambda`` (``which="d"``) and ``rhs = S(z)/theta_q(-z) * P(z)``.
    At ``z = q^m`` the right side switches to the removable limit.
    """
    zb = BranchedComplex.promote(z)
    zc = complex(zb.value)
    lth = cauchy_heine_reconstruct(log_s, zb, "theta", ctx)
    other = cauchy_heine_reconstruct(log_s, zb, "E" if which == "c" else TransformKind.Discrete(lam), ctx, check=False)
    lhs = complex(lth) - complex(other)
    S = complex(np.exp(complex(np.asarray(log_s(np.array([zc]), np.array([complex(as_log(zb, ctx))])))[0])))
    mm = math.log(abs(zc)) / math.log(ctx.q)
    on_lattice = abs(zb.arg) < 1e-14 and abs(mm - round(mm)) < 1e-12
    if on_lattice:
        rhs = S * removable_limit(which, round(mm), ctx, lam=lam)
    else:
        P = pqc(zb, ctx) if which == "c" else pqd(zb, lam, ctx)
        rhs = S / complex(theta_q(-zc, ctx)) * P
    return lhs, rhs


def uq_difference_closed_form(which, a, b, z, ctx, lam=None):
    """``(a, b, abz)/(q) 2phi1(q/a, q/b; 0; q, abz) P(z)/theta_q(-qz)`` for ``U^theta - U^E`` or ``U^theta - U^lambda``."""
    q = ctx.q
    zb = BranchedComplex.promote(z)
    zc = complex(zb.value)
    x = a * b * zc
    pre = complex(qpoch_inf(a, ctx) * qpoch_inf(b, ctx) * qpoch_inf(x, ctx) / qq_inf(ctx))
    pre *= complex(phi(PhiParams([q / a, q / b], [0.0]), x, ctx))
    P = pqc(zb, ctx) if which == "c" else pqd(zb, lam, ctx)
    return pre * P / complex(theta_q(-q * zc, ctx))
