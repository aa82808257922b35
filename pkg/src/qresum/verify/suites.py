"""The registered suites and their parameter grids.

Structural identities run on ``q in {0.1, 0.3, 0.5, 0.7}``.  Checks of effects
of size ``q_hat`` (transform differences, monodromy) run on
``q in {0.005, 0.01, 0.05}`` in double precision.  Other suites pin the base at
which their grid satisfies every hypothesis.
"""

from __future__ import annotations

import cmath
import math

from ..context import BranchedComplex as BC
from ..context import make_context
from ..identities import default_points, identity_eval
from ..laplace import TransformKind, blpower, blpower_general, blpower_lambda, log_qpoch_scaled, sw_orthogonality, table1_verify, uniform0
from ..qfuncs import theta_q
from ..report import VerificationReport, compare
from ..stokes import pqc, pqd, removable_limit, stokes_monodromy, transform_difference, uq_difference_closed_form
from ..uq import (
    METHODS,
    PK_VARIANTS,
    cf_gap,
    connection_confluent,
    connection_infinity,
    estimate_Mq,
    monodromy_jump,
    ode_residual,
    pk_multiplier,
    recurrence_residuals,
    remainder_and_bound,
    u_ratio,
    uq,
    wronskian_residual,
    y2,
    y_infinity,
)
from .registry import Suite, register

STRUCTURAL_Q = (0.1, 0.3, 0.5, 0.7)
SMALL_Q = (0.005, 0.01, 0.05)

E, TH = TransformKind.E(), TransformKind.Theta()


def _kinds(*lams):
    return [E, TH] + [TransformKind.Discrete(lam) for lam in lams]


def _twin(ctx):
    """Extended-precision context with the same base, for O(q_hat) identities."""
    if ctx.precision == "extended":
        return ctx
    return make_context(ctx.q, precision="extended")


def _ident(ids, tols, extended_when=None):
    def build(ctx):
        out = []
        for ident in ids:
            use = ctx
            if extended_when and ident in extended_when and extended_when[ident](ctx):
                use = _twin(ctx)
            for p in default_points(ident, ctx.q):
                out.append((ident, lambda i=ident, p=p, c=use: identity_eval(i, p, c, tol=tols.get(i, 1e-9))))
        return out

    return build


# identities ---------------------------------------------------------------------

LEMMA21_IDS = ("partfrac1", "partfrac2", "partfrac2a", "theta_sumdiff", "theta_sumderiv", "elliptic", "eqab", "bridge", "theta_quotient")

register(
    Suite(
        "lemma21",
        "Partial fractions of 1/theta_q, log-derivative identities, Eqab, bridge and theta quotient",
        STRUCTURAL_Q,
        # the elliptic identity is O(q_hat) against O(1) terms; once q_hat < 1e-6 it needs extended precision
        _ident(LEMMA21_IDS, {}, {"elliptic": lambda c: float(c.q_hat) < 1e-6}),
    )
)

PQ_TOLS = {
    "pq_int": 1e-10,
    "pq_gauss_fourier": 1e-11,
    "pq_product_fourier": 1e-11,
    "pq_exp_fourier": 1e-11,
    "pq_reciprocal": 1e-11,
    "pq_period": 1e-12,
    "tan_recurrence": 1e-12,
    "tan_phi11": 1e-12,
    "tan_normalisation": 1e-12,
    "pq_minus": 1e-11,
    "theta4_fourier": 1e-11,
    "quasi_period": 1e-12,
    "reflection": 1e-12,
    "monodromy_E": 1e-12,
}

register(Suite("pq_identities", "The q-periodic function P_q: Fourier, Gaussian, product and reciprocal forms", STRUCTURAL_Q, _ident(tuple(PQ_TOLS), PQ_TOLS)))


# transforms ---------------------------------------------------------------------

Z_STD = (0.4, 0.7, 0.5 * cmath.exp(1j * math.pi / 6))


def _blpower(ctx):
    return [("blpower", lambda n=n, z=z, k=k: blpower(n, z, k, ctx, tol=1e-9)) for k in _kinds(0.7, 1.3) for n in range(4) for z in Z_STD]


register(Suite("blpower", "Transform of t^n for every kernel", (0.3, 0.5), _blpower))


def _table1(ctx):
    out = []
    zs = (0.6, 0.5 * cmath.exp(1j * math.pi / 6))
    for kind in _kinds(0.7, 1.3):
        pt = lambda z, **kw: {"kind": kind.kind, "lam": kind.lam, "z": z, **kw}  # noqa: E731
        # the operator rows move z to z/q, qz and 1/z; every image must stay in b < |z| < 1/a
        for z in (0.8, 0.8 * cmath.exp(1j * math.pi / 6)):
            for probe in ("poch_t", "poch_inv", "pair"):
                out.append(("table1_row1", lambda p=pt(z, n=1), pr=probe: table1_verify(1, p, ctx, probe=pr)))
                out.append(("table1_row2", lambda p=pt(z), pr=probe: table1_verify(2, p, ctx, probe=pr)))
                out.append(("table1_row3", lambda p=pt(z), pr=probe: table1_verify(3, p, ctx, probe=pr)))
            out.append(("table1_row1", lambda p=pt(z, n=3): table1_verify(1, p, ctx, probe="poch_inv")))
        for z in zs:
            for n in (0, 1, 3):
                out.append(("table1_row4", lambda p=pt(z, n=n): table1_verify(4, p, ctx)))
            # rows 5-7 need b < |z| < 1/a with the default a = 0.3, b = 0.2
            for row in (5, 6, 7):
                out.append((f"table1_row{row}", lambda p=pt(z), r=row: table1_verify(r, p, ctx)))
            if kind.kind != "lambda":
                for a, b in ((0.2, 0.3), (0.3, 0.2)):
                    out.append(("table1_row8", lambda p=pt(z, a=a, b=b): table1_verify(8, p, ctx)))
            for n in (1, 3):
                out.append(("table1_row9", lambda p=pt(z, n=n): table1_verify(9, p, ctx)))
            for rs in ((1, 1), (0, 1)):
                out.append(("table1_row10", lambda p=pt(z, r_s=rs): table1_verify(10, p, ctx)))
    return out


register(Suite("table1", "Operational table of the q-Laplace transforms, rows 1-10", (0.3, 0.5), _table1))


def _sw(ctx):
    out = []
    for kind in _kinds(0.7, 1.3):
        for n in range(7):
            for k in range(7):
                tol = 1e-8 if n == k else 1e-10
                out.append(("sw_orthogonality", lambda n=n, k=k, kind=kind, tol=tol: sw_orthogonality(n, k, kind, ctx, tol=tol)))
    return out


register(Suite("sw_orthogonality", "Stieltjes-Wigert orthogonality under every kernel, n, k <= 6", (0.5,), _sw))


# U_q ---------------------------------------------------------------------------------

AB_STD = ((0.15, 0.15), (0.15, 0.3), (0.3, 0.15), (0.3, 0.3))
Z_UQ = (0.2, 0.5, 1.0, 0.5 * cmath.exp(1j * math.pi / 4))


def _crossrep_point(kind, a, b, z, ctx):
    ref = uq(kind, a, b, z, ctx, method="symmetric")
    rec = {"kind": kind.label, "a": a, "b": b, "z": z, "reference": "symmetric"}
    out = []
    for method in METHODS:
        if method == "symmetric":
            continue
        val = uq(kind, a, b, z, ctx, method=method)
        out.append(compare(f"uq_{method}", {**rec, "method": method}, val, ref, 1e-8))
    return out


def _crossrep(ctx):
    return [
        ("uq_crossrep", lambda k=k, a=a, b=b, z=z: _crossrep_point(k, a, b, z, ctx)) for k in _kinds(1.3) for a, b in AB_STD for z in Z_UQ
    ]


register(Suite("uq_crossrep", "Every representation of U_q against the symmetric one", (0.3, 0.5), _crossrep))


def _residual_report(ident, rec, rel, tol):
    return compare(ident, rec, rel, 0.0, tol, zero_scale=1.0, note="residual relative to the largest term")


def _ode_wronskian(ctx):
    a, b = 0.3, 0.2
    out = []
    for z in (0.4, 0.5 * cmath.exp(1j * math.pi / 4)):
        for kind in _kinds(1.3):
            fn = lambda w, k=kind: uq(k, a, b, w, ctx)  # noqa: E731
            out.append(("ode_residual", lambda fn=fn, z=z, k=kind: _residual_report("ode_uq", {"kind": k.label, "z": z}, ode_residual(fn, a, b, z, ctx)[0], 1e-8)))
            for pairing in ("E", "theta"):
                out.append(("wronskian", lambda k=kind, z=z, p=pairing: wronskian_residual(k, a, b, z, ctx, pairing=p)))
        for ker in ("E", "theta"):
            fn = lambda w, k=ker: y2(k, a, b, w, ctx)  # noqa: E731
            out.append(("ode_y2", lambda fn=fn, z=z, k=ker: _residual_report("ode_y2", {"kernel": k, "z": z}, ode_residual(fn, a, b, z, ctx)[0], 1e-8)))
            out.append(("y2_forms", lambda z=z, k=ker: compare("y2_forms", {"kernel": k, "z": z}, y2(k, a, b, z, ctx, form=1), y2(k, a, b, z, ctx, form=2), 1e-10)))
    for which in (3, 4):
        fn = lambda w, wh=which: y_infinity(wh, a, b, w, ctx)  # noqa: E731
        out.append(("ode_y_infinity", lambda fn=fn, wh=which: _residual_report("ode_y_infinity", {"which": wh, "z": 20.0}, ode_residual(fn, a, b, 20.0, ctx)[0], 1e-8)))
    # terminating a = q^-1: the identity reduces to polynomial algebra
    for ker in ("E", "theta"):
        out.append(("wronskian", lambda k=ker: wronskian_residual(k, 1 / ctx.q, b, 0.4, ctx)))
    return out


register(Suite("uq_ode_wronskian", "q-difference equation and Wronskian for U_q, y2 and the solutions at infinity", (0.3, 0.5), _ode_wronskian))


def _zoom(ctx, a, b, zs):
    # keep |q/(abz)| < 1 whatever the base
    f = max(1.0, 1.5 * ctx.q / (a * b * min(abs(complex(BC.promote(z).value)) for z in zs)))
    return [BC.promote(z) * f for z in zs]


def _connection(ctx):
    a, b = 0.25, 0.15
    zs = _zoom(ctx, a, b, (12.0, 20.0, BC(15.0, 0.5)))
    out = []
    for kind in _kinds(1.1, 0.7):
        for variant in PK_VARIANTS[kind.kind]:
            for z in zs:
                out.append(("connection_infinity", lambda k=kind, v=variant, z=z: connection_infinity(k, a, b, z, ctx, variant=v, tol=1e-7)))
    # internal agreement of the alternative multipliers at a = q^alpha, z = q^zeta
    q = ctx.q
    for alpha, zeta in ((0.3 + 0.1j, 0.7), (0.45, 0.2 - 0.3j)):
        aa = BC.from_log(alpha * math.log(q))
        zz = BC.from_log(zeta * math.log(q))
        rec = {"alpha": alpha, "zeta": zeta}
        out.append(("pk_E_vs_E2", lambda aa=aa, zz=zz, rec=rec: compare("pk_E_vs_E2", rec, pk_multiplier(E, aa, zz, ctx, "E"), pk_multiplier(E, aa, zz, ctx, "E2"), 1e-10)))
        for v in ("theta2", "theta3"):
            out.append((f"pk_theta1_vs_{v}", lambda aa=aa, zz=zz, rec=rec, v=v: compare(f"pk_theta1_vs_{v}", rec, pk_multiplier(TH, aa, zz, ctx, "theta1"), pk_multiplier(TH, aa, zz, ctx, v), 1e-10)))
    return out


register(Suite("connection_infinity", "Connection of U_q to the solutions at infinity", (0.3,), _connection))


def _confluent(ctx):
    a = 0.25
    out = []
    for kind in _kinds(1.1):
        for m in range(3):
            # abz = 0.6 keeps q/(abz) = q/0.6 inside the unit disc
            z = 0.6 / (a * a * ctx.q**m)
            out.append(("connection_confluent", lambda k=kind, m=m, z=z: connection_confluent(k, a, m, z, ctx, tol=1e-6)))
    return out


register(Suite("connection_confluent", "Confluent connection formula b = a q^m, m = 0, 1, 2", (0.3,), _confluent))


# Stokes phenomena ------------------------------------------------------------------

LAM_D = 1.3
DIFF_FLOOR = 1e-9


def _difference_report(ident, rec, lhs, rhs, tol):
    if max(abs(lhs), abs(rhs)) > DIFF_FLOOR:
        return compare(ident, rec, lhs, rhs, tol)
    return compare(ident, rec, lhs, rhs, tol, zero_scale=DIFF_FLOOR, note="difference below 1e-9; absolute check")


def _uq_difference(which, a, b, z, ctx):
    other = E if which == "c" else TransformKind.Discrete(LAM_D)
    lhs = complex(uq(TH, a, b, z, ctx)) - complex(uq(other, a, b, z, ctx))
    rhs = uq_difference_closed_form(which, a, b, z, ctx, lam=LAM_D)
    return _difference_report(f"uq_difference_{which}", {"a": a, "b": b, "z": z, "lam": LAM_D}, lhs, rhs, 1e-6)


def _borel_difference(which, name, log_s, z, ctx):
    lhs, rhs = transform_difference(which, log_s, z, ctx, lam=LAM_D)
    return _difference_report(f"transform_difference_{which}", {"S": name, "z": z, "lam": LAM_D}, lhs, rhs, 1e-6)


def _near_point(which, m, ctx, form=1):
    zz = ctx.q**m * (1 + 1e-7)
    P = pqc(zz, ctx) if which == "c" else pqd(zz, LAM_D, ctx)
    near = P / complex(theta_q(-zz, ctx))
    lim = removable_limit(which, m, ctx, lam=LAM_D, form=form)
    return compare(f"removable_limit_{which}", {"m": m, "form": form, "offset": 1e-7}, lim, near, 1e-5)


def _differences(ctx):
    a, b = 0.3, 0.2
    zs = (0.4, BC(0.3, 1.0), BC(0.6, -2.5))
    borel = {
        "one": lambda t, lt: 0 * lt,
        "(-0.3t;q)": lambda t, lt: log_qpoch_scaled(0.3, lt, ctx),
    }
    out = []
    for which in "cd":
        for z in zs:
            out.append((f"uq_difference_{which}", lambda w=which, z=z: _uq_difference(w, a, b, z, ctx)))
        for name, ls in borel.items():
            for z in (0.4, BC(0.3, 1.0), ctx.q):
                out.append((f"transform_difference_{which}", lambda w=which, n=name, ls=ls, z=z: _borel_difference(w, n, ls, z, ctx)))
        for m in (0, 1, 2):
            out.append((f"removable_limit_{which}", lambda w=which, m=m: _near_point(w, m, ctx)))
    for m in (0, 1, 2):
        out.append(("removable_limit_d", lambda m=m: _near_point("d", m, ctx, form=2)))
    for z in zs:
        out.append(("pqc_forms", lambda z=z: compare("pqc_forms", {"z": z}, pqc(z, ctx), pqc(z, ctx, method="integral"), 1e-10)))
    return out


register(Suite("stokes_differences", "Differences between the transforms and their closed forms", SMALL_Q, _differences, small_q=True))


def _monodromy(ctx):
    a, b = 0.3, 0.2
    out = []
    for z in (0.4, BC(0.3, 1.0), BC(0.5, -0.7)):
        out.append(("stokes_monodromy_c", lambda z=z: stokes_monodromy("c", z, ctx, tol=1e-6)))
        for lam in (0.7, 1.3):
            out.append(("stokes_monodromy_d", lambda z=z, lam=lam: stokes_monodromy("d", z, ctx, lam=lam, tol=1e-10)))
    for kind in ("E", "theta"):
        for z in (0.5, 0.4, BC(0.3, 0.8)):
            out.append(("monodromy", lambda k=kind, z=z: monodromy_jump(k, a, b, z, ctx, tol=1e-6)))
    return out


register(Suite("stokes_monodromy", "Jumps of U_q and of the Stokes functions across a full turn", SMALL_Q, _monodromy, small_q=True))


# bounds, recurrences, appendix --------------------------------------------------------

BOUND_RADII = (0.05, 0.1, 0.2, 0.4)
BOUND_ARGS = (0.0, math.pi / 4, -math.pi / 3, 3 * math.pi / 4, -0.9 * math.pi)


def _bound_point(kind, a, b, z, ctx, Mq):
    value = uq(kind, a, b, z, ctx)
    out = []
    for N in range(5, 13):
        r = remainder_and_bound(kind, a, b, z, N, ctx, Mq=Mq, value=value)
        rec = {"kind": r.kind, "N": N, "z": z, "zone": r.zone, "Mq": Mq}
        rel = r.remainder / r.bound
        out.append(VerificationReport("remainder_bound", rec, complex(r.remainder), complex(r.bound), r.remainder, rel, r.holds, "rel_err holds |R_N| / bound", 1.0))
    return out


def _bounds(ctx):
    a, b = 0.3, 0.2
    Mq = estimate_Mq(a, b, ctx)
    zs = [BC(r, t) for r in BOUND_RADII for t in BOUND_ARGS]
    return [("remainder_bound", lambda k=k, z=z: _bound_point(k, a, b, z, ctx, Mq)) for k in _kinds(1.0) for z in zs]


register(Suite("error_bounds", "Remainders of the asymptotic series against their bounds, N = 5..12", (0.5,), _bounds))


def _cf_nonterminating(a, b, z, ctx):
    g = cf_gap(a, b, z, ctx)
    rec = {"a": a, "b": b, "z": z, "depth": g.depth}
    out = [
        VerificationReport(
            "cf_gap", rec, complex(g.even), complex(g.odd), g.gap, g.gap / abs(g.even), g.gap > 1e-6, "pass means the even and odd limits differ by more than 1e-6", 1e-6
        )
    ]
    for kind in _kinds(1.3):
        ratio = complex(u_ratio(kind, a, b, z, ctx))
        for parity, lim in (("even", g.even), ("odd", g.odd)):
            d = abs(lim - ratio)
            out.append(
                VerificationReport(
                    f"cf_{parity}_vs_ratio",
                    {**rec, "kind": kind.label},
                    complex(lim),
                    ratio,
                    d,
                    d / abs(ratio),
                    d / abs(ratio) > 1e-6,
                    "pass means the limit differs from the ratio of resummed functions",
                    1e-6,
                )
            )
    return out


def _cf_terminating(n, b, z, ctx):
    a = ctx.q**-n
    g = cf_gap(a, b, z, ctx)
    return [compare("cf_terminating", {"n": n, "b": b, "z": z, "kind": k.label}, g.even, u_ratio(k, a, b, z, ctx), 1e-10) for k in _kinds(1.3)]


def _recurrences(ctx):
    a, b, z = 0.3, 0.2, 0.4
    out = [("recurrence", lambda k=k: recurrence_residuals(k, a, b, z, ctx, tol=1e-8)) for k in _kinds(0.9, 1.3)]
    out.append(("recurrence", lambda: recurrence_residuals(E, 0.3, 0.3, z, ctx, tol=1e-8)))
    out.append(("cf_gap", lambda: _cf_nonterminating(a, b, z, ctx)))
    for n in (1, 2, 3):
        out.append(("cf_terminating", lambda n=n: _cf_terminating(n, b, z, ctx)))
    return out


register(Suite("recurrences_cf", "Contiguous relations and the continued fraction", (0.5,), _recurrences))


def _appendix(ctx):
    out = [("uniform0", lambda n=n: uniform0(n, ctx)) for n in range(3)]
    zs = (0.6, 0.5 * cmath.exp(1j * math.pi / 6))
    for s in (0.5, 0.3 + 0.4j, 1.7, -0.6):
        for z in zs:
            for k in (E, TH):
                out.append(("blpower_general", lambda s=s, z=z, k=k: blpower_general(s, z, k, ctx)))
            for lam in (0.7, 1.3):
                out.append(("blpower_lambda", lambda s=s, z=z, lam=lam: blpower_lambda(s, lam, z, ctx)))
    for p in default_points("partfrac2b", ctx.q):
        out.append(("partfrac2b", lambda p=p: identity_eval("partfrac2b", p, ctx)))
    return out


register(Suite("appendix", "Vanishing moments of 1 - P_q, general power moments and the squared-sine partial fractions", (0.05, 0.3, 0.5), _appendix))
