"""Six integral representations of the resummed ``2phi0(a, b; -; q, z)``.

Every method returns the same function for a given transform kind; they differ
only in the integrand and in the parameter range where they apply.

========================  ==========================================================
method                    integrand against ``kappa(t/z) dt/t`` (or its lattice sum)
========================  ==========================================================
``borel``                 ``2phi1(a, b; 0; q, -t)``, continued past ``|t| = 1`` by Heine
``phi11``                 ``(-bt)/(-t) * 1phi1(b; -bt; q, -at)``
``poch``                  ``(a) * (-bt, -aqz/t)/(-t)``, needs ``|aq| < 1``
``symmetric``             ``(abz) * (-at, -bt)/(-t)``, needs ``|abz| < 1``
``cauchy_heine``          ``K0 * u(t) kappa(qt)/(t + z) dt``, needs ``|a|, |b| < 1``
``mellin_barnes``         vertical-line integral in ``s``, needs ``|a|, |b| < 1``
========================  ==========================================================

Here ``K0 = (a, b;q)_inf/(q;q)_inf`` and ``(x)`` abbreviates ``(x;q)_inf``.
"""

from __future__ import annotations

import math

import numpy as np

from ..context import BranchedComplex, as_log
from ..errors import BadAbscissa, ConstraintViolation, OutOfRange
from ..laplace import TransformKind, log_qpoch_scaled
from ..qfuncs import log_qpoch_inf, log_theta_q, qpoch_inf, qq_inf
from ..quad import ContourSpec, bilateral_lattice_sum, integrate_halfline, mb_line_integral, negative_lattice_poles
from ..series import PhiParams, log_phi, terminating_degree

__all__ = ["METHODS", "uq", "k0", "default_method", "mb_abscissa", "borel_log", "u_log"]

METHODS = ("borel", "phi11", "poch", "symmetric", "cauchy_heine", "mellin_barnes")
SERIES_RADIUS = 0.5


def k0(a, b, ctx):
    """``(a, b;q)_inf / (q;q)_inf``."""
    return qpoch_inf(a, ctx) * qpoch_inf(b, ctx) / qq_inf(ctx)


def default_method(a, b, z):
    """``symmetric`` inside ``|abz| < 1``, ``phi11`` elsewhere."""
    return "symmetric" if abs(complex(a) * complex(b) * complex(BranchedComplex.promote(z).value)) < 1 else "phi11"


def borel_log(a, b, ctx):
    """Log handle of ``2phi1(a, b; 0; q, -t)`` on the whole positive axis.

    The series is summed for ``|t| < 1/2``; beyond, Heine's transformation
    ``(b', -a't)/(-t) * 2phi1(0, -t; -a't; q, b')`` (``b'`` the parameter of smaller
    modulus) gives the continuation.
    """
    m = ctx.m
    if terminating_degree(a, ctx) is not None or terminating_degree(b, ctx) is not None:
        return lambda t, lt: m.c(log_phi(PhiParams([a, b], [0.0]), -t, ctx))
    ap, bp = (a, b) if abs(complex(b)) <= abs(complex(a)) else (b, a)
    if abs(complex(bp)) >= 1:
        raise ConstraintViolation("the Borel integrand needs min(|a|, |b|) < 1 beyond |t| = 1")
    lbp = complex(np.log(complex(qpoch_inf(bp, ctx))))

    def lf(t, lt):
        t = m.c(t)
        out = m.c(np.zeros(np.shape(t)))
        near = np.asarray(m.absf(t)) < SERIES_RADIUS
        if np.any(near):
            out[near] = m.c(log_phi(PhiParams([a, b], [0.0]), -t[near], ctx))
        far = ~near
        if np.any(far):
            tf, lf_ = t[far], m.c(lt)[far]
            val = lbp + log_qpoch_scaled(ap, lf_, ctx) - log_qpoch_scaled(1.0, lf_, ctx)
            val = val + m.c(log_phi(PhiParams([0.0, -tf], [-ap * tf]), bp, ctx))
            out[far] = val
        return out

    return lf


def u_log(a, b, ctx):
    """Log handle of ``u(t) = (-bqt) * 1phi1(q/a; -bqt; q, -aqt)``."""
    m = ctx.m
    if complex(a) == 0:
        a, b = b, a
    if complex(a) == 0:
        return lambda t, lt: m.c(np.zeros(np.shape(t)))
    q = ctx.q

    def lf(t, lt):
        t = m.c(t)
        return log_qpoch_scaled(b * q, lt, ctx) + m.c(log_phi(PhiParams([q / a], [-b * q * t]), -a * q * t, ctx))

    return lf


def mb_abscissa(a, b, ctx):
    """Default line ``sigma = -min(1, ln a/ln q, ln b/ln q)/2`` (real parts; ``a = 0`` ignored)."""
    lq = math.log(ctx.q)
    vals = [1.0]
    for p in (a, b):
        if complex(p) != 0:
            v = math.log(abs(complex(p))) / lq
            if v <= 0:
                raise BadAbscissa("the Mellin-Barnes line needs |a|, |b| < 1")
            vals.append(v)
    return -0.5 * min(vals)


def _check_sigma(sigma, a, b, ctx):
    lq = math.log(ctx.q)
    lim = min([math.log(abs(complex(p))) / lq for p in (a, b) if complex(p) != 0] or [math.inf])
    if not -lim < sigma < 0:
        raise BadAbscissa(f"sigma={sigma} does not separate the pole sequences (need {-lim:g} < sigma < 0)")


def uq(kind, a, b, z, ctx, method=None, spec=None, sigma=None):
    """Resummed ``2phi0(a, b; -; q, z)`` for the transform ``kind``.

    Parameters
    ----------
    kind : TransformKind or {"E", "theta"}
    a, b : complex
    z : complex or BranchedComplex
        The unwrapped argument selects the sheet for the E kernel.
    ctx : QContext
    method : str, optional
        One of :data:`METHODS`; defaults to :func:`default_method`.
    spec : QuadratureSpec, optional
    sigma : float, optional
        Mellin-Barnes abscissa; validated against the pole sequences.

    Returns
    -------
    complex

    Raises
    ------
    ConstraintViolation
        The method's parameter range excludes ``(a, b, z)``.
    """
    kind = TransformKind.parse(kind) if not isinstance(kind, TransformKind) else kind
    zb = BranchedComplex.promote(z)
    zc = complex(zb.value)
    method = method or default_method(a, b, zb)
    if method not in METHODS:
        raise OutOfRange(f"unknown method {method!r}; choose from {METHODS}")
    m = ctx.m
    q = ctx.q
    a = complex(a) if isinstance(a, complex) else a
    poles = negative_lattice_poles(ctx)

    def transform(lf, pref, at=zb, pls=poles):
        if kind.kind == "lambda":
            val = bilateral_lattice_sum(lf, kind.lam, at, ctx)
        else:
            val = integrate_halfline(lf, at, kind.kind, ctx, spec=spec, poles=pls)
        return m.scalar(m.c(pref) * m.c(val))

    if method == "borel":
        return transform(borel_log(a, b, ctx), 1.0)
    if method == "phi11":
        if complex(a) == 0:
            return transform(lambda t, lt: log_qpoch_scaled(b, lt, ctx) - log_qpoch_scaled(1.0, lt, ctx), 1.0)

        def lf(t, lt):
            return log_qpoch_scaled(b, lt, ctx) - log_qpoch_scaled(1.0, lt, ctx) + m.c(
                log_phi(PhiParams([b], [-b * m.c(t)]), -a * m.c(t), ctx)
            )

        return transform(lf, 1.0)
    if method == "poch":
        if not abs(complex(a) * q) < 1:
            raise ConstraintViolation("the Pochhammer form needs |a q| < 1")

        def lf(t, lt):
            return log_qpoch_scaled(b, lt, ctx) - log_qpoch_scaled(1.0, lt, ctx) + log_qpoch_scaled(a * q * zc, -m.c(lt), ctx)

        return transform(lf, qpoch_inf(a, ctx))
    if method == "symmetric":
        if not abs(complex(a) * complex(b) * zc) < 1:
            raise ConstraintViolation("the symmetric form needs |a b z| < 1")

        def lf(t, lt):
            return log_qpoch_scaled(a, lt, ctx) + log_qpoch_scaled(b, lt, ctx) - log_qpoch_scaled(1.0, lt, ctx)

        return transform(lf, qpoch_inf(a * b * zc, ctx))
    if method == "cauchy_heine":
        if not (abs(complex(a)) < 1 and abs(complex(b)) < 1):
            raise ConstraintViolation("the Cauchy-Heine form needs |a|, |b| < 1")
        if abs(zb.arg) >= math.pi:
            raise ConstraintViolation("the Cauchy-Heine form holds on the principal sheet |arg z| < pi")
        ul = u_log(a, b, ctx)

        def lf(t, lt):
            t = m.c(t)
            return ul(t, lt) + m.c(lt) - m.log(t + zc)

        return transform(lf, k0(a, b, ctx), at=BranchedComplex(1 / q), pls=None)
    return _mellin_barnes(kind, a, b, zb, ctx, sigma)


def _mb_log_common(a, b, s, ctx):
    """``log (q^{1+s}) - log (a q^s, b q^s)`` on backend arrays ``s``."""
    m = ctx.m
    lq = ctx.ln_q
    out = m.c(log_qpoch_inf(None, ctx, log_a=(1 + s) * lq))
    for p in (a, b):
        if complex(p) != 0:
            out = out - m.c(log_qpoch_inf(None, ctx, log_a=m.c(complex(np.log(complex(p)))) + s * lq))
    return out


def _mellin_barnes(kind, a, b, zb, ctx, sigma):
    m = ctx.m
    if sigma is None:
        sigma = mb_abscissa(a, b, ctx)
    else:
        mb_abscissa(a, b, ctx)
        _check_sigma(sigma, a, b, ctx)
    lz = as_log(zb, ctx)
    lq = ctx.ln_q
    pi = m.pi
    K0 = k0(a, b, ctx)
    spec = ContourSpec(sigma)
    if kind.kind == "E":

        def lg(s):
            return math.log(math.pi) + _mb_log_common(a, b, s, ctx) - s * (s - 1) / 2 * lq + s * lz - m.log(m.sin(pi * s))

        return m.scalar(-K0 / (2j * pi) * mb_line_integral(lg, spec, ctx))
    if kind.kind == "theta":

        def lg(s):
            th = m.c(log_theta_q((1 - s) * lq + 1j * math.pi, ctx))
            return 2 * math.log(math.pi) + _mb_log_common(a, b, s, ctx) + th + s * lz - 2 * m.log(m.sin(pi * s))

        pref = K0 / (2j * pi * qq_inf(ctx) ** 3 * lq)
        return m.scalar(pref * mb_line_integral(lg, spec, ctx))
    lam = BranchedComplex.promote(kind.lam)
    llam = as_log(lam, ctx)
    base = m.c(log_theta_q(llam - lz, ctx))

    def lg(s):
        th = m.c(log_theta_q(llam + s * lq - lz, ctx))
        return math.log(math.pi) + _mb_log_common(a, b, s, ctx) + s * llam + th - base - m.log(m.sin(pi * s))

    return m.scalar(-K0 / (2j * pi) * mb_line_integral(lg, spec, ctx))
