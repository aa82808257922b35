"""Kernels, quadrature engines and the three q-Laplace transforms."""

import cmath
import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qresum import BranchedComplex, ConstraintViolation, PoleAtLattice, make_context
from qresum.laplace import (
    TransformKind,
    blpower,
    blpower_general,
    blpower_lambda,
    log_qpoch_scaled,
    qlaplace,
    sw_orthogonality,
    table1_verify,
    uniform0,
)
from qresum.quad import ContourSpec, kernel, mb_line_integral
from qresum.series import PhiParams, log_phi


def rel(a, b):
    return abs(complex(a) - complex(b)) / max(abs(complex(b)), 1e-300)


def mono(n):
    return lambda t, lt: n * lt


KINDS = [TransformKind.E(), TransformKind.Theta(), TransformKind.Discrete(0.7), TransformKind.Discrete(1.3)]


def test_kernel_at_sqrt_q():
    ctx = make_context(0.5)
    assert complex(kernel("E", math.sqrt(0.5), ctx)) == pytest.approx(ctx.c_q, rel=1e-15)


def test_transform_kind_validation():
    with pytest.raises(Exception):
        TransformKind("bogus")
    with pytest.raises(Exception):
        TransformKind("lambda")
    assert TransformKind.parse("theta").kind == "theta"


@pytest.mark.parametrize("kind", KINDS, ids=lambda k: k.label)
@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_monomials(kind, n):
    q, z = 0.5, 0.7
    ctx = make_context(q)
    val = qlaplace(kind, mono(n), z, ctx)
    assert rel(val, q ** (-n * (n - 1) / 2) * z**n) < 1e-10


@settings(max_examples=20, deadline=None)
@given(
    q=st.floats(0.2, 0.7),
    r=st.floats(0.2, 2.0),
    arg=st.floats(-2.0, 2.0),
    kind=st.sampled_from(["E", "theta"]),
)
def test_kernel_normalisation_property(q, r, arg, kind):
    ctx = make_context(q)
    assert abs(complex(qlaplace(kind, mono(0), BranchedComplex(r, arg), ctx)) - 1) < 1e-9


def test_discrete_lambda_independence_on_polynomials():
    ctx = make_context(0.5)
    f = lambda t, lt: np.log(1 + 0.3 * np.exp(lt) - 0.2 * np.exp(2 * lt) + 0j)  # noqa: E731
    a = qlaplace(TransformKind.Discrete(0.7), f, 0.4, ctx)
    b = qlaplace(TransformKind.Discrete(1.3), f, 0.4, ctx)
    assert rel(a, b) < 1e-11
    assert rel(a, 1 + 0.3 * 0.4 - 0.2 * 0.4**2 / 0.5) < 1e-11


def test_discrete_pole_at_minus_lambda():
    ctx = make_context(0.5)
    with pytest.raises(PoleAtLattice):
        qlaplace(TransformKind.Discrete(0.7), mono(1), BranchedComplex(0.7, math.pi), ctx)


def test_blpower_general_e_half_integer():
    q, z, s = 0.5, 0.7, 0.5
    ctx = make_context(q)
    lhs = qlaplace("E", lambda t, lt: s * lt, z, ctx)
    assert rel(lhs, q ** (-s * (s - 1) / 2) * z**s) < 1e-9
    assert blpower_general(0.3 + 0.4j, 0.5 * cmath.exp(0.4j), "E", ctx).passed


def test_blpower_general_theta_against_mpmath():
    q, z, s = 0.5, 0.7, 0.5
    ctx = make_context(q)
    lhs = qlaplace("theta", lambda t, lt: s * lt, z, ctx)
    th = mp.qp(q, q) * mp.qp(q ** (1 - s), q) * mp.qp(q**s, q)
    ref = complex(-(z**s) * mp.pi * th / (mp.qp(q, q) ** 3 * mp.log(q) * mp.sin(mp.pi * s)))
    assert rel(lhs, ref) < 1e-9
    assert blpower_general(-0.6, 0.4, "theta", ctx).passed


@pytest.mark.parametrize("lam", [0.7, 1.3])
def test_blpower_lambda(lam):
    ctx = make_context(0.5)
    assert blpower_lambda(0.3 + 0.4j, lam, 0.45, ctx).passed


@pytest.mark.parametrize("kind", ["E", "theta", TransformKind.Discrete(1.3)])
def test_blpower_reports(kind):
    ctx = make_context(0.3)
    for n in range(4):
        assert blpower(n, 0.5 * cmath.exp(1j * math.pi / 6), kind, ctx).passed


@pytest.mark.parametrize("kind", KINDS, ids=lambda k: k.label)
def test_row5_against_mpmath(kind):
    q, a, z = 0.5, 0.4, 0.6
    ctx = make_context(q)
    val = qlaplace(kind, lambda t, lt: log_qpoch_scaled(a, lt, ctx), z, ctx)
    assert rel(val, 1 / mp.qp(a * z, q)) < 1e-9


@pytest.mark.parametrize("kind", KINDS, ids=lambda k: k.label)
def test_row7_against_mpmath(kind):
    q, a, b, z = 0.5, 0.3, 0.2, 0.5
    ctx = make_context(q)
    val = qlaplace(kind, lambda t, lt: log_qpoch_scaled(a, lt, ctx) + log_qpoch_scaled(b * q, -lt, ctx), z, ctx)
    ref = mp.qp(a * b, q) / (mp.qp(a * z, q) * mp.qp(b / z, q))
    assert rel(val, ref) < 1e-9


@pytest.mark.parametrize("n", [1, 2, 3])
def test_row9_against_mpmath(n):
    q, z = 0.5, 0.6
    ctx = make_context(q)
    val = qlaplace("E", lambda t, lt: log_phi(PhiParams([q**-n], [0.0]), -np.exp(lt) * q**n, ctx), z, ctx)
    assert rel(val, mp.qp(z, q, n)) < 1e-9


@pytest.mark.parametrize("row", [2, 4, 6])
def test_table_rows_report(row):
    ctx = make_context(0.5)
    point = {"kind": "E", "z": 0.6 if row == 2 else 0.5, "n": 3}
    assert table1_verify(row, point, ctx, tol=1e-9).passed


def test_table_row6_constraint():
    ctx = make_context(0.5)
    with pytest.raises(ConstraintViolation):
        table1_verify(6, {"kind": "E", "z": 0.1, "b": 0.2}, ctx)


def test_table_row8_needs_continuous_kernel():
    ctx = make_context(0.5)
    with pytest.raises(ConstraintViolation):
        table1_verify(8, {"kind": "lambda", "lam": 0.9, "z": 0.5}, ctx)


def test_stieltjes_wigert_moments():
    q = 0.5
    ctx = make_context(q)
    for kind in ("E", "theta"):
        assert sw_orthogonality(0, 0, kind, ctx).lhs == pytest.approx(1.0, rel=1e-10)
        assert abs(sw_orthogonality(0, 1, kind, ctx).lhs) < 1e-10
    r = sw_orthogonality(2, 2, TransformKind.Discrete(0.9), ctx)
    assert r.lhs == pytest.approx(1 / (q**2 * (1 - q) * (1 - q**2)), rel=1e-8)


@pytest.mark.parametrize("q", [0.05, 0.3, 0.5])
def test_uniform0_vanishes(q):
    ctx = make_context(q)
    for n in range(3):
        r = uniform0(n, ctx)
        assert r.passed
        assert r.abs_err <= 1e-9 * q ** (-n * (n + 1) / 2)


def test_mellin_barnes_line_integral():
    # inverse Mellin transform of the gamma function
    ctx = make_context(0.5)
    x = 0.8
    lg = np.vectorize(lambda s: complex(mp.loggamma(s)), otypes=[complex])
    val = mb_line_integral(lambda s: lg(s) - s * math.log(x), ContourSpec(sigma=0.7), ctx)
    assert rel(complex(val) / (2j * math.pi), math.exp(-x)) < 1e-10


def test_extended_precision_monomial():
    ctx = make_context(0.5, precision="extended")
    val = qlaplace("E", lambda t, lt: 2 * lt, 0.7, ctx)
    with mp.workdps(50):
        ref = mp.mpf(1) / 2 ** -1 * (mp.mpf(7) / 10) ** 2
        assert abs(val - ref) < mp.mpf(10) ** -30
