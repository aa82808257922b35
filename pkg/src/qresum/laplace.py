"""The three q-Laplace transforms, their operational table and orthogonality checks.

A transform is selected by :class:`TransformKind`: the continuous Gaussian
kernel ``"E"``, the continuous theta kernel ``"theta"``, or the discrete
lattice sum ``"lambda"`` with its lattice point ``lam``.  Transforms act on log
handles ``(t, lt) -> log B(t)``; see :mod:`qresum.quad`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .context import BranchedComplex
from .errors import ConstraintViolation, OutOfRange
from .quad import bilateral_lattice_sum, integrate_halfline
from .context import as_log
from .qfuncs import log_qpoch_inf, qpoch_inf, qpoch_n, qq_inf, theta_q
from .report import compare
from .series import PhiParams, log_phi, phi, stieltjes_wigert

__all__ = [
    "TransformKind",
    "qlaplace",
    "log_qpoch_scaled",
    "TABLE1_ROWS",
    "table1_verify",
    "sw_orthogonality",
    "blpower",
    "blpower_general",
    "blpower_lambda",
    "uniform0",
]


@dataclass(frozen=True)
class TransformKind:
    """``kind`` is ``"E"``, ``"theta"`` or ``"lambda"``; ``lam`` is used by the last."""

    kind: str
    lam: complex | None = None

    def __post_init__(self):
        if self.kind not in ("E", "theta", "lambda"):
            raise OutOfRange(f"unknown transform kind {self.kind!r}")
        if self.kind == "lambda":
            if self.lam is None:
                raise OutOfRange("the discrete transform needs a lattice point lam")
            if complex(self.lam) == 0:
                raise OutOfRange("lam must be non-zero")

    @classmethod
    def E(cls):
        return cls("E")

    @classmethod
    def Theta(cls):
        return cls("theta")

    @classmethod
    def Discrete(cls, lam):
        return cls("lambda", lam)

    @classmethod
    def parse(cls, kind, lam=None):
        if isinstance(kind, cls):
            return kind
        k = {"e": "E", "theta": "theta", "lambda": "lambda", "discrete": "lambda"}.get(str(kind).lower())
        if k is None:
            raise OutOfRange(f"unknown transform kind {kind!r}")
        return cls(k, lam if k == "lambda" else None)

    @property
    def label(self):
        return self.kind if self.kind != "lambda" else f"lambda={complex(self.lam):g}"


def qlaplace(kind, log_b, z, ctx, spec=None, poles=None):
    """Apply the transform ``kind`` to the function with log handle ``log_b`` at ``z``.

    Parameters
    ----------
    kind : TransformKind or str
    log_b : callable
        ``(t, lt) -> log B(t)`` on backend arrays.
    z : complex or BranchedComplex
    ctx : QContext
    spec : QuadratureSpec, optional
    poles : callable, optional
        Pole set of ``B`` used to continue past ``|arg z| = pi``.

    Returns
    -------
    complex
    """
    kind = TransformKind.parse(kind) if not isinstance(kind, TransformKind) else kind
    if kind.kind == "lambda":
        return bilateral_lattice_sum(log_b, kind.lam, z, ctx)
    return integrate_halfline(log_b, z, kind.kind, ctx, spec=spec, poles=poles)


def log_qpoch_scaled(c, lt, ctx, shift=0.0):
    """``log (-c t;q)_inf`` from ``lt = log t`` without forming ``t``; ``c = 0`` gives 0."""
    m = ctx.m
    if complex(c) == 0:
        return m.c(np.zeros(np.shape(lt)))
    lc = complex(np.log(complex(c)))
    return m.c(log_qpoch_inf(None, ctx, log_a=m.c(lt) + m.c(lc + 1j * math.pi + shift)))


# operational table --------------------------------------------------------------

TABLE1_ROWS = tuple(range(1, 11))
A_PROBE, B_PROBE = 0.3, 0.2


def _probes(ctx):
    """Three probe functions as log handles, used by the operator-law rows."""
    a, b = A_PROBE, B_PROBE
    q = ctx.q
    return {
        "poch_t": lambda t, lt: log_qpoch_scaled(a, lt, ctx),
        "poch_inv": lambda t, lt: log_qpoch_scaled(b * q, -lt, ctx),
        "pair": lambda t, lt: log_qpoch_scaled(a, lt, ctx) + log_qpoch_scaled(b * q, -lt, ctx),
    }


def table1_verify(row, point, ctx, tol=1e-8, probe="poch_t"):
    """Check one row of the operational table at ``point``.

    ``point`` carries ``kind`` (``"E"``, ``"theta"`` or ``"lambda"``), ``z``, and
    optionally ``lam``, ``n``, ``a``, ``b``, ``r_s``.  Rows 1 to 3 are operator laws
    checked by transforming both sides numerically; the others compare with
    closed forms.

    Returns
    -------
    VerificationReport
    """
    kind = TransformKind.parse(point.get("kind", "E"), point.get("lam"))
    z = point["z"]
    zb = BranchedComplex.promote(z)
    zc = complex(zb.value)
    q = ctx.q
    m = ctx.m
    n = int(point.get("n", 1))
    a = point.get("a", A_PROBE)
    b = point.get("b", B_PROBE)
    L = lambda f, w: qlaplace(kind, f, w, ctx)  # noqa: E731
    rec = {"row": row, "kind": kind.label, "z": zc}
    if row == 1:
        f = _probes(ctx)[probe]
        lhs = L(lambda t, lt: f(t, lt) + n * lt, zb)
        rhs = q ** (-n * (n - 1) / 2) * zb**n * L(f, zb * q ** (-n))
        rec.update(n=n, probe=probe)
    elif row == 2:
        f = _probes(ctx)[probe]
        lhs = L(lambda t, lt: f(t * q, lt + math.log(q)), zb)
        rhs = L(f, zb * q)
        rec["probe"] = probe
    elif row == 3:
        f = _probes(ctx)[probe]
        lhs = L(lambda t, lt: f(q / t, math.log(q) - lt), zb)
        rhs = L(f, zb.inverse())
        rec["probe"] = probe
    elif row == 4:
        lhs = L(lambda t, lt: n * lt, zb)
        rhs = q ** (-n * (n - 1) / 2) * zb**n
        rec["n"] = n
    elif row in (5, 6, 7):
        if not (abs(b) < abs(zc) < 1 / abs(a)) and row != 5 or (row == 5 and not abs(zc) < 1 / abs(a)):
            raise ConstraintViolation("rows 5-7 need |b| < |z| < 1/|a|")
        if row == 5:
            lhs = L(lambda t, lt: log_qpoch_scaled(a, lt, ctx), zb)
            rhs = 1 / qpoch_inf(a * zc, ctx)
        elif row == 6:
            lhs = L(lambda t, lt: log_qpoch_scaled(b * q, -lt, ctx), zb)
            rhs = 1 / qpoch_inf(b / zc, ctx)
        else:
            lhs = L(lambda t, lt: log_qpoch_scaled(a, lt, ctx) + log_qpoch_scaled(b * q, -lt, ctx), zb)
            rhs = qpoch_inf(a * b, ctx) / (qpoch_inf(a * zc, ctx) * qpoch_inf(b / zc, ctx))
        rec.update(a=a, b=b)
    elif row == 8:
        if kind.kind == "lambda":
            raise ConstraintViolation("row 8 is stated for the continuous kernels only")
        from .uq import uq

        lhs = L(lambda t, lt: log_qpoch_scaled(a, lt, ctx) - log_qpoch_scaled(b, lt, ctx), zb)
        # an independent representation: Mellin-Barnes when its line exists, else the Borel series
        method = "mellin_barnes" if abs(a / b) < 1 else "borel"
        rhs = uq(kind, 0.0, a / b, zb * b, ctx, method=method)
        rec.update(a=a, b=b, method=method)
    elif row == 9:
        qn = q**n
        lhs = L(lambda t, lt: log_phi(PhiParams([q**-n], [0.0]), -t * qn, ctx), zb)
        rhs = qpoch_n(zc, n, ctx)
        rec["n"] = n
    elif row == 10:
        r_s = tuple(point.get("r_s", (1, 1)))
        ups = [a] if r_s[0] == 1 else []
        lows = [b]
        lhs = L(lambda t, lt: log_phi(PhiParams(ups, lows + [0.0]), -t, ctx), zb)
        rhs = phi(PhiParams(ups, lows), zc, ctx)
        rec["r_s"] = list(r_s)
    else:
        raise OutOfRange(f"table rows are 1..10, got {row}")
    return compare(f"table1_row{row}", rec, lhs, rhs, tol)


# Stieltjes-Wigert orthogonality ---------------------------------------------------


def sw_orthogonality(n, k, kind, ctx, tol=1e-10):
    """Moment ``<S_n, S_k>`` under ``kind`` against ``delta_nk / (q^n (q;q)_n)``.

    The E and theta moments are ``int S_n S_k kappa(x) dx``; the discrete moment is
    ``sum_j S_n S_k (q^j lam) q^j lam / theta_q(q^j lam)``.
    Off-diagonal entries pass on an absolute error below ``tol``.
    """
    kind = TransformKind.parse(kind) if not isinstance(kind, TransformKind) else kind
    m = ctx.m

    def log_f(t, lt):
        with np.errstate(divide="ignore", invalid="ignore"):
            return m.log(m.c(stieltjes_wigert(n, t, ctx)) * m.c(stieltjes_wigert(k, t, ctx))) + lt

    val = qlaplace(kind, log_f, 1.0, ctx)
    exact = 1 / (ctx.q**n * qpoch_n(ctx.q, n, ctx)) if n == k else 0.0
    rec = {"n": n, "k": k, "kind": kind.label}
    if n == k:
        return compare("sw_orthogonality", rec, val, exact, tol)
    return compare("sw_orthogonality", rec, val, exact, tol, zero_scale=1.0)


# moments ----------------------------------------------------------------------------


def blpower(n, z, kind, ctx, tol=1e-9):
    """Transform of ``t^n`` against ``q^{-n(n-1)/2} z^n``."""
    kind = TransformKind.parse(kind) if not isinstance(kind, TransformKind) else kind
    zb = BranchedComplex.promote(z)
    lhs = qlaplace(kind, lambda t, lt: n * ctx.m.c(lt), zb, ctx)
    rhs = ctx.qv ** (-n * (n - 1) / 2) * ctx.m.exp(n * as_log(zb, ctx))
    return compare("blpower", {"n": n, "kind": kind.label, "z": zb}, lhs, rhs, tol)


def blpower_general(s, z, kind, ctx, tol=1e-8):
    """Mellin moment of a continuous kernel for complex ``s``.

    E: ``c_q int t^{s-1} E_q(t/z) dt = q^{-s(s-1)/2} z^s``.
    theta: ``(-1/ln q) int t^{s-1}/theta_q(t/z) dt = -z^s pi theta_q(-q^{1-s}) / ((q;q)^3 ln q sin(pi s))``.
    """
    kind = TransformKind.parse(kind) if not isinstance(kind, TransformKind) else kind
    if kind.kind == "lambda":
        raise OutOfRange("use blpower_lambda for the discrete transform")
    m = ctx.m
    zb = BranchedComplex.promote(z)
    lz = as_log(zb, ctx)
    sv = m.num(complex(s))
    lhs = qlaplace(kind, lambda t, lt: sv * m.c(lt), zb, ctx)
    if kind.kind == "E":
        rhs = m.exp(-sv * (sv - 1) / 2 * ctx.ln_q + sv * lz)
    else:
        w = -m.exp((1 - sv) * ctx.ln_q)
        rhs = -m.exp(sv * lz) * m.pi * theta_q(w, ctx) / (qq_inf(ctx) ** 3 * ctx.ln_q * m.sin(m.pi * sv))
    return compare("blpower_general", {"s": complex(s), "kind": kind.label, "z": zb}, lhs, rhs, tol)


def blpower_lambda(s, lam, z, ctx, tol=1e-8):
    """``sum_n (q^n lam)^s / theta_q(q^n lam/z)`` against ``lam^s theta_q(lam q^s/z) / theta_q(lam/z)``."""
    m = ctx.m
    zb, lb = BranchedComplex.promote(z), BranchedComplex.promote(lam)
    sv = m.num(complex(s))
    lhs = bilateral_lattice_sum(lambda t, lt: sv * m.c(lt), lb, zb, ctx)
    w = m.exp(as_log(lb, ctx) - as_log(zb, ctx))
    rhs = m.exp(sv * as_log(lb, ctx)) * theta_q(w * m.exp(sv * ctx.ln_q), ctx) / theta_q(w, ctx)
    return compare("blpower_lambda", {"s": complex(s), "lam": lb, "z": zb}, lhs, rhs, tol)


def uniform0(n, ctx, tol=1e-9):
    """``(-1/ln q) int (1 - P_q(t)) t^n / theta_q(t) dt``, which vanishes.

    The check passes when the value is below ``tol * q^{-n(n+1)/2}``, the size of
    each of the two moments that cancel.
    """
    m = ctx.m

    lqh = 2 * m.pi**2 / ctx.ln_q

    def log_f(t, lt):
        # 1 - P_q summed from its Fourier tail so that no cancellation against 1 occurs
        x = 2 * m.pi * m.c(lt) / ctx.ln_q
        tail = m.c(np.zeros(np.shape(lt)))
        k = 1
        while float(lqh) * k * k > math.log(ctx.tiny) - 5:
            tail = tail + (-1) ** (k + 1) * m.exp(lqh * k * k) * m.cos(k * x)
            k += 1
        return m.log(2 * tail) + (n + 1) * m.c(lt)

    val = integrate_halfline(log_f, 1.0, "theta", ctx)
    scale = float(ctx.q) ** (-n * (n + 1) / 2)
    return compare("uniform0", {"n": n}, val, 0.0, tol, zero_scale=scale)
