"""Context, q-Pochhammer, theta, E_q and P_q."""

import cmath
import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qresum import BranchedComplex, OutOfRange, PoleAtParameter, make_context
from qresum.qfuncs import (
    e_q,
    jacobi_theta,
    p_q,
    p_q_exp_form,
    p_q_from_t,
    p_q_gaussian,
    p_q_product,
    p_q_reciprocal,
    p_q_reciprocal_coeff,
    qpoch,
    qpoch_inf,
    qq_inf,
    theta_q,
    theta_q_logderiv,
    theta_q_series,
)

qs = st.floats(0.05, 0.9)
taus = st.complex_numbers(min_magnitude=0.2, max_magnitude=3.0, allow_nan=False, allow_infinity=False)


def rel(a, b):
    return abs(complex(a) - complex(b)) / max(abs(complex(b)), 1e-300)


# context ------------------------------------------------------------------


def test_context_constants():
    ctx = make_context(0.5)
    assert ctx.ln_q == pytest.approx(-0.6931471805599453, rel=1e-15)
    assert ctx.c_q == pytest.approx(1 / math.sqrt(2 * math.pi * math.log(2)), rel=1e-15)
    assert ctx.q_hat == pytest.approx(math.exp(2 * math.pi**2 / math.log(0.5)), rel=1e-15)


@pytest.mark.parametrize("q", [0.0, 1.0, -0.3, 1.5, float("nan")])
def test_context_rejects_bad_q(q):
    with pytest.raises(OutOfRange):
        make_context(q)


def test_context_is_immutable():
    ctx = make_context(0.5)
    with pytest.raises(AttributeError):
        ctx.q = 0.3


def test_precision_env_default(monkeypatch):
    monkeypatch.setenv("QRESUM_PRECISION", "extended")
    assert make_context(0.5).precision == "extended"
    monkeypatch.setenv("QRESUM_PRECISION", "double")
    assert make_context(0.5).precision == "double"


def test_branched_complex_keeps_sheet():
    z = BranchedComplex(0.4, 0.3)
    w = z.rotate(1)
    assert w.arg == pytest.approx(0.3 + 2 * math.pi)
    assert abs(w.value - z.value) < 1e-15
    assert w.log().imag - z.log().imag == pytest.approx(2 * math.pi)
    assert BranchedComplex.from_complex(-1).arg == pytest.approx(math.pi)


# q-Pochhammer ---------------------------------------------------------------


def test_qpoch_inf_trivial_values():
    ctx = make_context(0.5)
    assert complex(qpoch_inf(0.0, ctx)) == 1
    assert complex(qpoch_inf(1.0, ctx)) == 0


def test_qpoch_inf_against_truncated_product():
    ctx = make_context(0.5)
    oracle = 1.0
    for k in range(200):
        oracle *= 1 - 0.5 * 0.5**k
    assert rel(qpoch_inf(0.5, ctx), oracle) < 1e-13


@settings(max_examples=40, deadline=None)
@given(q=qs, a=st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False))
def test_qpoch_inf_matches_mpmath(q, a):
    ctx = make_context(q)
    ref = complex(mp.qp(a, q))
    assert abs(complex(qpoch_inf(a, ctx)) - ref) <= 1e-11 * max(1.0, abs(ref))


def test_qpoch_finite_and_negative_index():
    ctx = make_context(0.5)
    assert complex(qpoch(0.7, 0, ctx)) == 1
    assert complex(qpoch(0.7, 1, ctx)) == pytest.approx(0.3)
    assert complex(qpoch(0.3, -1, ctx)) == pytest.approx(1 / (1 - 0.6), rel=1e-14)


def test_qpoch_complex_index_ratio():
    ctx = make_context(0.4)
    nu = 0.5 + 0.25j
    ref = complex(mp.qp(0.3, 0.4) / mp.qp(0.3 * mp.power(0.4, nu), 0.4))
    assert rel(qpoch(0.3, nu, ctx), ref) < 1e-12


def test_qpoch_pole():
    ctx = make_context(0.5)
    with pytest.raises(PoleAtParameter):
        qpoch(0.25, -3, ctx)


# theta ---------------------------------------------------------------------


def test_theta_zero_at_minus_one():
    ctx = make_context(0.5)
    assert complex(theta_q(BranchedComplex(1.0, math.pi), ctx)) == 0


@settings(max_examples=40, deadline=None)
@given(q=st.floats(0.1, 0.8), tau=taus)
def test_theta_product_vs_bilateral_series(q, tau):
    ctx = make_context(q)
    a, b = complex(theta_q(tau, ctx)), complex(theta_q_series(tau, ctx))
    assert abs(a - b) <= 1e-12 * max(1.0, abs(b))


@settings(max_examples=40, deadline=None)
@given(q=st.floats(0.1, 0.8), tau=taus)
def test_theta_quasi_periodicity(q, tau):
    ctx = make_context(q)
    lhs = complex(theta_q(q * tau, ctx)) * tau
    rhs = complex(theta_q(tau, ctx))
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(rhs))


def test_theta_matches_mpmath_triple_product():
    ctx = make_context(0.3)
    tau = 0.4 + 0.9j
    ref = complex(mp.qp(0.3, 0.3) * mp.qp(-tau, 0.3) * mp.qp(-0.3 / tau, 0.3))
    assert rel(theta_q(tau, ctx), ref) < 1e-13


def test_theta_logderiv_finite_difference():
    ctx = make_context(0.5)
    tau, h = 0.37 + 0.2j, 1e-6
    fd = tau * (complex(theta_q(tau + h, ctx)) - complex(theta_q(tau - h, ctx))) / (2 * h) / complex(theta_q(tau, ctx))
    assert rel(theta_q_logderiv(tau, ctx), fd) < 1e-8


# E_q -----------------------------------------------------------------------


def test_eq_special_values():
    q = 0.5
    ctx = make_context(q)
    assert complex(e_q(math.sqrt(q), ctx)) == pytest.approx(1.0, rel=1e-15)
    assert complex(e_q(q**2, ctx)) == pytest.approx(q**1.125, rel=1e-14)


@pytest.mark.parametrize("tau", [0.37, 0.2 + 0.5j])
def test_eq_functional_equations(tau):
    ctx = make_context(0.5)
    f = lambda t: complex(e_q(t, ctx))  # noqa: E731
    assert rel(f(1 / tau), tau * f(tau)) < 1e-13
    assert rel(f(0.5 * tau), tau * f(tau)) < 1e-13


def test_eq_is_multivalued():
    ctx = make_context(0.5)
    z = BranchedComplex(0.4, 0.3)
    assert rel(e_q(z, ctx), e_q(z.rotate(1), ctx)) > 1e-3


# P_q -----------------------------------------------------------------------


@pytest.mark.parametrize("q", [0.1, 0.3, 0.5, 0.7])
def test_pq_product_equals_fourier(q):
    ctx = make_context(q)
    assert rel(p_q_product(0.42, ctx), p_q(0.42, ctx)) < 1e-12


def test_pq_gaussian_equals_fourier():
    ctx = make_context(0.1)
    assert rel(p_q_gaussian(0.3, ctx), p_q_from_t(0.3, ctx)) < 1e-12


@settings(max_examples=30, deadline=None)
@given(q=st.floats(0.05, 0.8), t=st.floats(-2, 2))
def test_pq_three_forms_agree(q, t):
    ctx = make_context(q)
    f = complex(p_q_from_t(t, ctx))
    assert abs(complex(p_q_gaussian(t, ctx)) - f) < 1e-11
    assert abs(complex(p_q_exp_form(t, ctx)) - f) < 1e-11
    assert abs(complex(p_q_reciprocal(t, ctx)) * f - 1) < 1e-11


def test_pq_integral_trapezoid():
    ctx = make_context(0.5)
    t = np.arange(64) / 64
    assert abs(np.mean(np.asarray(p_q_from_t(t, ctx))) - 1) < 1e-10


def test_pq_is_q_periodic():
    ctx = make_context(0.3)
    tau = 0.42 + 0.1j
    assert rel(p_q(0.3 * tau, ctx), p_q(tau, ctx)) < 1e-13


def test_reciprocal_coefficient_recurrence_and_normalisation():
    ctx = make_context(0.2)
    qh = ctx.q_hat
    a = [p_q_reciprocal_coeff(n, ctx) for n in range(12)]
    for n in range(11):
        assert abs(qh ** (2 * n + 2) * a[n + 1] + a[n] - 1) < 1e-13
    assert all(0 < x <= 1 for x in a)
    total, poch = 0.0, 1.0
    for n in range(11):
        if n:
            poch *= 1 - qh ** (2 * n)
        total += (-1) ** n * qh ** (n * (n + 1)) * a[n] / poch
    assert rel(total, complex(qq_inf(ctx, base=qh * qh)) ** 2) < 1e-12


def test_pq_minus_half_period():
    q, t = 0.15, 0.3
    ctx = make_context(q)
    qh = ctx.q_hat
    lhs = p_q(BranchedComplex(q**t, math.pi), ctx)
    rhs = -1j * cmath.exp(1j * math.pi * t) * qh**-0.25 * complex(jacobi_theta(1, math.pi * t, qh, ctx))
    assert rel(lhs, rhs) < 1e-12


def test_jacobi_thetas_against_mpmath():
    ctx = make_context(0.5)
    nome = 0.3
    assert rel(jacobi_theta(4, 0.7, nome, ctx), mp.jtheta(4, 0.7, nome)) < 1e-14
    assert rel(jacobi_theta(1, 0.7, nome, ctx), mp.jtheta(1, 0.7, nome)) < 1e-14
    assert abs(complex(jacobi_theta(1, 0.0, nome, ctx))) == 0


def test_theta4_at_zero_is_pq_at_t_zero():
    ctx = make_context(0.5)
    assert rel(jacobi_theta(4, 0.0, ctx.q_hat, ctx), p_q_from_t(0.0, ctx)) < 1e-15


def test_extended_precision_theta():
    ctx = make_context(0.5, precision="extended")
    mp.mp.dps = 50
    tau = mp.mpf(3) / 10
    ref = mp.qp(mp.mpf(1) / 2, mp.mpf(1) / 2) * mp.qp(-tau, mp.mpf(1) / 2) * mp.qp(-mp.mpf(1) / 2 / tau, mp.mpf(1) / 2)
    got = theta_q(0.3, ctx)
    assert abs(got - ref) < mp.mpf(10) ** -40
    mp.mp.dps = 15
