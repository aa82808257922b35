"""Evaluators for the theta-function and P_q identities.

Each evaluator computes the two sides by different routes (partial fractions
against triple products, Fourier series against Gaussian sums, and so on) and
hands both to :func:`~qresum.report.compare`.  Neither side is ever derived
from the other.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from . import qfuncs as qf
from .context import BranchedComplex, as_log
from .errors import ConstraintViolation
from .report import bilateral_sum, compare, unilateral_sum

__all__ = ["IDENTITIES", "identity_eval", "default_points"]


def _num(x, ctx):
    return ctx.m.num(complex(x) if not isinstance(x, (int, float)) else x)


def _bc(x):
    return BranchedComplex.promote(x)


def _on_minus_lattice(x, ctx, tol=1e-10):
    """True if ``x`` is 0 or ``-q**k`` for an integer ``k``."""
    x = complex(x)
    if abs(x) < tol:
        return True
    if abs(cmath.phase(x) - math.pi) > 1e-12 and abs(cmath.phase(x) + math.pi) > 1e-12:
        return False
    k = round(math.log(abs(x)) / math.log(ctx.q))
    return abs(abs(x) - ctx.q**k) < tol * abs(x)


def _require_off_lattice(ctx, **values):
    for name, v in values.items():
        if _on_minus_lattice(v, ctx):
            raise ConstraintViolation(f"{name} = {v!r} lies on 0 or -q^k")


def _qq3(ctx):
    return qf.qq_inf(ctx) ** 3


def _partfrac1(p, ctx):
    x = complex(p["x"])
    _require_off_lattice(ctx, x=x)
    xv = _num(x, ctx)
    q = ctx.qv
    lhs = 1 / qf.theta_q(x, ctx)
    s = bilateral_sum(lambda n: (-1) ** n * q ** (n * (n - 1) // 2) / (xv + q ** (-n)), ctx)
    return lhs, s / _qq3(ctx)


def _partfrac2(p, ctx):
    x, a = complex(p["x"]), complex(p["a"])
    if not ctx.q < abs(a) < 1:
        raise ConstraintViolation("partfrac2 needs q < |a| < 1")
    _require_off_lattice(ctx, x=x, ax=a * x)
    xv, av = _num(x, ctx), _num(a, ctx)
    q = ctx.qv
    lhs = qf.theta_q(a * x, ctx) / qf.theta_q(x, ctx)
    s = bilateral_sum(lambda n: av**n / (1 + xv * q**n), ctx)
    return lhs, qf.theta_q(-a, ctx) / _qq3(ctx) * s


def _partfrac2a(p, ctx):
    x, a = complex(p["x"]), complex(p["a"])
    if abs(cmath.phase(x)) >= math.pi or abs(a) == 0:
        raise ConstraintViolation("partfrac2a needs |arg x| < pi and a != 0")
    _require_off_lattice(ctx, x=x, ax=a * x)
    m = ctx.m
    lx, la = as_log(x, ctx), as_log(a, ctx)
    lnq = ctx.ln_q
    pi = m.pi

    def term(n):
        w = (2 * n * pi * 1j + la) / lnq
        return m.exp(-w * lx) / m.sin(pi * w)

    lhs = qf.theta_q(a * x, ctx) / qf.theta_q(x, ctx)
    s = bilateral_sum(term, ctx)
    return lhs, -pi * qf.theta_q(-a, ctx) / (_qq3(ctx) * lnq) * s


def _partfrac2b(p, ctx):
    # squared-sine Fourier sum against a Lambert-type sum and its a-derivative
    z, a = complex(p["z"]), complex(p["a"])
    if not ctx.q < abs(z) < 1 or abs(cmath.phase(z)) >= math.pi:
        raise ConstraintViolation("partfrac2b needs q < |z| < 1 and |arg z| < pi")
    _require_off_lattice(ctx, minus_a=-a)
    m = ctx.m
    lz, la = as_log(z, ctx), as_log(a, ctx)
    lnq = ctx.ln_q
    pi = m.pi
    zv, av, q = _num(z, ctx), _num(a, ctx), ctx.qv

    def term(n):
        w = (2 * n * pi * 1j + la) / lnq
        return m.exp(-w * lz) / m.sin(pi * w) ** 2

    lhs = pi**2 / (av * lnq**2) * bilateral_sum(term, ctx)
    s1 = bilateral_sum(lambda n: zv**n / (1 - av * q**n), ctx)
    s2 = bilateral_sum(lambda n: (q * zv) ** n / (1 - av * q**n) ** 2, ctx)
    return lhs, lz / (av * lnq) * s1 + s2


def _theta_sumdiff(p, ctx):
    x, y = complex(p["x"]), complex(p["y"])
    _require_off_lattice(ctx, x=x, y=y)
    xv, yv = _num(x, ctx), _num(y, ctx)
    q = ctx.qv
    lhs = qf.theta_q_logderiv(x, ctx) - qf.theta_q_logderiv(y, ctx)
    rhs = bilateral_sum(lambda n: xv / (xv + q**n) - yv / (yv + q**n), ctx)
    scale = max(1.0, abs(complex(qf.theta_q_logderiv(x, ctx))))
    return lhs, rhs, scale


def _theta_sumderiv(p, ctx):
    x = complex(p["x"])
    _require_off_lattice(ctx, x=x)
    xv = _num(x, ctx)
    q = ctx.qv
    lhs = qf.theta_q_logderiv2(x, ctx) / xv
    rhs = bilateral_sum(lambda n: q**n / (xv + q**n) ** 2, ctx)
    return lhs, rhs


def _elliptic(p, ctx):
    x, y, z = complex(p["x"]), complex(p["y"]), complex(p["z"])
    _require_off_lattice(ctx, x=x, y=y, x_over_z=x / z, y_over_z=y / z, z_over_y=z / y, minus_z=-z)
    ld = lambda v: qf.theta_q_logderiv(v, ctx)
    th = lambda v: qf.theta_q(v, ctx)
    # ratios are formed in backend arithmetic so extended runs see the same points on both sides
    x, y, z = _num(x, ctx), _num(y, ctx), _num(z, ctx)
    lhs = ld(x) - ld(x / z) - ld(y) + ld(y / z)
    rhs = _qq3(ctx) * th(-z) * th(-x / y) * th(-x * y / z) / (th(x) * th(y) * th(x / z) * th(z / y))
    # for small q both sides are O(qh) while each log-derivative is O(1)
    scale = max(abs(complex(ld(v))) for v in (x, x / z, y, y / z))
    return lhs, rhs, scale


def _eqab(p, ctx):
    a, b, t = _bc(p["a"]), _bc(p["b"]), _bc(p.get("t", 0.7))
    m = ctx.m
    le = lambda v: qf.log_e_q(as_log(v, ctx), ctx)
    lhs = m.exp(le(a * t) + le(b * t) - le(t) - le(a * b * t))
    rhs = m.exp(-as_log(a, ctx) * as_log(b, ctx) / ctx.ln_q)
    return lhs, rhs


def _theta_quotient(p, ctx):
    a, b, x = _bc(p["a"]), _bc(p["b"]), _bc(p["x"])
    m = ctx.m
    lhs = qf.theta_q(a * x, ctx) / qf.theta_q(b * x, ctx)
    lx = as_log(x, ctx)
    power = m.exp(lx * (as_log(b, ctx) - as_log(a, ctx)) / ctx.ln_q)
    rhs = power * qf.e_q(b, ctx) * qf.p_q(a * x, ctx) / (qf.e_q(a, ctx) * qf.p_q(b * x, ctx))
    return lhs, rhs


def _monodromy_E(p, ctx):
    tau = _bc(p["tau"])
    m = ctx.m
    which = p.get("which", "E")
    f = qf.e_q if which == "E" else qf.p_q
    lhs = f(tau.rotate(1), ctx) / f(tau, ctx)
    rhs = -m.exp(2j * m.pi * as_log(tau, ctx) / ctx.ln_q) / ctx.q_hat
    return lhs, rhs


def _bridge(p, ctx):
    # the two continuous transforms of (-a t;q)_inf, each computed with the
    # kernel of the other one times (or divided by) P_q
    from .quad import integrate_halfline

    a = float(p.get("a", 0.3))
    z = _bc(p["z"])
    which = p.get("which", "E")
    m = ctx.m

    def log_b(t, lt):
        return qf.log_qpoch_inf(None, ctx, log_a=lt + m.log(m.c(a)) + 1j * m.pi)

    if which == "E":
        lhs = integrate_halfline(log_b, z, "E", ctx)

        def log_bp(t, lt):
            lt_over = lt - as_log(z, ctx)
            return log_b(t, lt) + m.log(m.c(qf.p_q_from_t(lt_over / ctx.ln_q, ctx)))

        rhs = integrate_halfline(log_bp, z, "theta", ctx)
    else:
        lhs = integrate_halfline(log_b, z, "theta", ctx)

        def log_bp(t, lt):
            lt_over = lt - as_log(z, ctx)
            return log_b(t, lt) - m.log(m.c(qf.p_q_from_t(lt_over / ctx.ln_q, ctx)))

        rhs = integrate_halfline(log_bp, z, "E", ctx)
    return lhs, rhs


# P_q machinery ---------------------------------------------------------------


def _pq_int(p, ctx):
    z = complex(p.get("z", 1.0))
    n = int(p.get("nodes", 64))
    m = ctx.m
    t = np.arange(n) / n
    shift = as_log(z, ctx) / ctx.ln_q
    vals = m.c(qf.p_q_from_t(m.c(t) + shift, ctx))
    return sum(vals) / n, m.num(1.0)


def _pq_gauss_fourier(p, ctx):
    t = complex(p["t"])
    return qf.p_q_gaussian(t, ctx), qf.p_q_from_t(t, ctx)


def _pq_product_fourier(p, ctx):
    tau = _bc(p["tau"])
    return qf.p_q_product(tau, ctx), qf.p_q(tau, ctx)


def _pq_exp_fourier(p, ctx):
    t = complex(p["t"])
    return qf.p_q_exp_form(t, ctx), qf.p_q_from_t(t, ctx)


def _pq_reciprocal(p, ctx):
    t = complex(p["t"])
    return qf.p_q_reciprocal(t, ctx), 1 / qf.p_q_from_t(t, ctx)


def _pq_period(p, ctx):
    t = complex(p["t"])
    return qf.p_q_from_t(t + 1, ctx), qf.p_q_from_t(t, ctx)


def _tan_recurrence(p, ctx):
    n = int(p["n"])
    qh = ctx.q_hat
    lhs = qh ** (2 * n + 2) * qf.p_q_reciprocal_coeff(n + 1, ctx) + qf.p_q_reciprocal_coeff(n, ctx)
    return lhs, ctx.m.num(1.0)


def _tan_phi11(p, ctx):
    # a~_n against 1phi1(qh^2; 0; qh^2, qh^(2n+2)) summed by the generic series code
    from .series import PhiParams, phi

    n = int(p["n"])
    qh2 = ctx.q_hat**2
    if ctx.precision == "double":
        rhs = phi(PhiParams([qh2], [0.0]), qh2 ** (n + 1), ctx.with_q(float(qh2)))
    else:
        # the sub-context would round the base to double, so sum the terms here
        rhs = unilateral_sum(lambda k: (-1) ** k * qh2 ** (k * (k - 1) // 2 + (n + 1) * k), ctx)
    return qf.p_q_reciprocal_coeff(n, ctx), rhs


def _qpoch_base(a, base, k):
    out = 1
    for j in range(k):
        out = out * (1 - a * base**j)
    return out


def _tan_normalisation(p, ctx):
    qh = ctx.q_hat
    qh2 = qh * qh
    lhs = unilateral_sum(
        lambda n: (-1) ** n * qh ** (n * (n + 1)) * qf.p_q_reciprocal_coeff(n, ctx) / _qpoch_base(qh2, qh2, n),
        ctx,
    )
    return lhs, qf.qq_inf(ctx, base=qh2) ** 2


def _pq_minus(p, ctx):
    t = float(p["t"])
    m = ctx.m
    tau = BranchedComplex(ctx.q**t, math.pi)
    lhs = qf.p_q(tau, ctx)
    rhs = -1j * m.exp(1j * m.pi * t) * ctx.q_hat ** (-m.num(0.25)) * qf.jacobi_theta(1, m.pi * t, ctx.q_hat, ctx)
    return lhs, rhs


def _theta4_fourier(p, ctx):
    t = float(p["t"])
    m = ctx.m
    return qf.jacobi_theta(4, m.pi * t, ctx.q_hat, ctx), qf.p_q_from_t(t, ctx)


def _quasi_period(p, ctx):
    tau = _bc(p["tau"])
    n = int(p["n"])
    m = ctx.m
    kind = p.get("kernel", "theta")
    lt = as_log(tau, ctx)
    if kind == "theta":
        lhs = 1 / qf.theta_q(tau * ctx.q**n if n >= 0 else tau / ctx.q ** (-n), ctx)
        rhs = m.exp(n * lt) * ctx.qv ** (n * (n - 1) // 2) / qf.theta_q(tau, ctx)
    else:
        lhs = m.exp(qf.log_e_q(lt + n * ctx.ln_q, ctx))
        rhs = m.exp(n * lt) * ctx.qv ** (n * (n - 1) // 2) * m.exp(qf.log_e_q(lt, ctx))
    return lhs, rhs


def _reflection(p, ctx):
    tau = _bc(p["tau"])
    m = ctx.m
    lt = as_log(tau, ctx)
    if p.get("kernel", "theta") == "theta":
        return 1 / qf.theta_q(tau.inverse(), ctx), m.exp(lt) / qf.theta_q(tau, ctx)
    return m.exp(qf.log_e_q(-lt, ctx)), m.exp(lt + qf.log_e_q(lt, ctx))


IDENTITIES = {
    "partfrac1": _partfrac1,
    "partfrac2": _partfrac2,
    "partfrac2a": _partfrac2a,
    "partfrac2b": _partfrac2b,
    "theta_sumdiff": _theta_sumdiff,
    "theta_sumderiv": _theta_sumderiv,
    "elliptic": _elliptic,
    "eqab": _eqab,
    "bridge": _bridge,
    "theta_quotient": _theta_quotient,
    "monodromy_E": _monodromy_E,
    "pq_int": _pq_int,
    "pq_gauss_fourier": _pq_gauss_fourier,
    "pq_product_fourier": _pq_product_fourier,
    "pq_exp_fourier": _pq_exp_fourier,
    "pq_reciprocal": _pq_reciprocal,
    "pq_period": _pq_period,
    "tan_recurrence": _tan_recurrence,
    "tan_phi11": _tan_phi11,
    "tan_normalisation": _tan_normalisation,
    "pq_minus": _pq_minus,
    "theta4_fourier": _theta4_fourier,
    "quasi_period": _quasi_period,
    "reflection": _reflection,
}


def identity_eval(identity_id, point, ctx, tol=1e-9):
    """Evaluate one identity at ``point`` and return a :class:`VerificationReport`.

    Raises
    ------
    ConstraintViolation
        When ``point`` violates the identity's hypotheses.
    KeyError
        For an unknown identity id.
    """
    fn = IDENTITIES[identity_id]
    out = fn(point, ctx)
    rec = {"q": ctx.q, **point}
    if len(out) == 3:
        lhs, rhs, scale = out
        if abs(complex(lhs)) < 1e-300 and abs(complex(rhs)) < 1e-300:
            return compare(identity_id, rec, lhs, rhs, tol, zero_scale=1.0, note="both sides vanish")
        # the left side is a difference of terms of size ``scale``; rounding limits it to ~eps*scale
        floor = 1e3 * ctx.eps * scale
        size = max(abs(complex(rhs)), abs(complex(lhs)))
        note = "below the rounding floor of this precision" if floor > tol * size else ""
        return compare(identity_id, rec, lhs, rhs, tol, zero_scale=max(size, floor / tol), note=note)
    lhs, rhs = out
    return compare(identity_id, rec, lhs, rhs, tol)


def default_points(identity_id, q):
    """Parameter points used by the verification suites for one identity."""
    a_mid = (1 + q) / 2
    pts = {
        "partfrac1": [{"x": 0.6}, {"x": 0.3 + 0.4j}, {"x": 2.5 - 1.0j}],
        "partfrac2": [{"x": 0.6, "a": a_mid}, {"x": 0.3 + 0.4j, "a": a_mid * cmath.exp(0.5j)}],
        "partfrac2a": [{"x": (1 + q) / 2, "a": a_mid}, {"x": 0.8 + 0.3j, "a": (q + 3) / 4}],
        "partfrac2b": [{"z": (1 + q) / 2, "a": 0.4}, {"z": 0.5 * (1 + q) * cmath.exp(0.5j), "a": 0.3 + 0.2j}],
        "theta_sumdiff": [{"x": 0.3, "y": 0.7}, {"x": 0.3 + 0.2j, "y": 1.4 - 0.5j}],
        "theta_sumderiv": [{"x": 0.45}, {"x": 0.3 + 0.6j}],
        "elliptic": [{"x": 0.3, "y": 0.7, "z": 0.4}, {"x": 0.35 + 0.1j, "y": 1.2, "z": 0.6 - 0.2j}],
        "eqab": [{"a": 0.4, "b": 1.7, "t": 0.7}, {"a": 0.3 + 0.2j, "b": 2.0 - 0.5j, "t": 0.9j}],
        "theta_quotient": [{"a": 0.4, "b": 1.3, "x": 0.7}, {"a": 0.5, "b": 2.0, "x": 0.3 + 0.3j}],
        "monodromy_E": [{"tau": 0.42}, {"tau": 0.3 + 0.5j}, {"tau": 0.42, "which": "P"}],
        "bridge": [{"z": 0.6, "which": "E"}, {"z": 0.6, "which": "theta"}, {"z": 0.4 + 0.3j, "which": "E"}],
        "pq_int": [{"z": 1.0}, {"z": 0.37}],
        "pq_gauss_fourier": [{"t": 0.3}, {"t": 0.2 + 0.1j}],
        "pq_product_fourier": [{"tau": 0.45}, {"tau": 0.3 + 0.2j}],
        "pq_exp_fourier": [{"t": 0.3}, {"t": 0.71}],
        "pq_reciprocal": [{"t": 0.3}, {"t": 0.05 + 0.02j}],
        "pq_period": [{"t": 0.3}, {"t": 0.2 + 0.1j}],
        "tan_recurrence": [{"n": 0}, {"n": 1}, {"n": 4}],
        "tan_phi11": [{"n": 0}, {"n": 2}],
        "tan_normalisation": [{}],
        "pq_minus": [{"t": 0.3}, {"t": 1.7}],
        "theta4_fourier": [{"t": 0.3}, {"t": 0.85}],
        "quasi_period": [{"tau": 0.4, "n": 3}, {"tau": 0.3 + 0.2j, "n": -2, "kernel": "E"}],
        "reflection": [{"tau": 0.4}, {"tau": 0.3 + 0.2j, "kernel": "E"}],
    }
    return pts[identity_id]
