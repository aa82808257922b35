"""Basic hypergeometric series, formal series and the q-Borel map."""

import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qresum import DivergentSeries, PoleAtParameter, make_context
from qresum.qfuncs import qpoch_inf, qpoch_n
from qresum.series import PhiParams, log_phi, phi, phi20_coeffs, psi, psi_q, qborel, stieltjes_wigert, terminating_degree


def rel(a, b):
    return abs(complex(a) - complex(b)) / max(abs(complex(b)), 1e-300)


def test_phi_at_zero_is_one():
    ctx = make_context(0.5)
    assert complex(phi(PhiParams([0.3, 0.2], [0.7]), 0.0, ctx)) == 1


def test_q_binomial_theorem():
    ctx = make_context(0.5)
    lhs = phi(PhiParams([0.4], []), 0.3, ctx)
    rhs = complex(qpoch_inf(0.4 * 0.3, ctx)) / complex(qpoch_inf(0.3, ctx))
    assert rel(lhs, rhs) < 1e-12


@settings(max_examples=30, deadline=None)
@given(q=st.floats(0.1, 0.8), a=st.floats(-2, 2), z=st.floats(-0.9, 0.9))
def test_q_binomial_property(q, a, z):
    ctx = make_context(q)
    rhs = complex(mp.qp(a * z, q) / mp.qp(z, q))
    assert abs(complex(phi(PhiParams([a], []), z, ctx)) - rhs) <= 1e-11 * max(1, abs(rhs))


def test_terminating_2phi0():
    q, b, z = 0.5, 0.2, 0.4
    ctx = make_context(q)
    assert terminating_degree(1 / q, ctx) == 1
    assert rel(phi(PhiParams([1 / q, b], []), z, ctx), 1 + (1 - b) * z / q) < 1e-14


def test_phi_matches_mpmath_qhyper():
    ctx = make_context(0.3)
    ref = complex(mp.qhyper([0.4, 0.2j], [0.6], 0.3, 0.5))
    assert rel(phi(PhiParams([0.4, 0.2j], [0.6]), 0.5, ctx), ref) < 1e-13


def test_log_phi_consistent():
    ctx = make_context(0.5)
    p = PhiParams([0.3], [0.7])
    assert rel(np.exp(complex(log_phi(p, 2.0 + 1j, ctx))), phi(p, 2.0 + 1j, ctx)) < 1e-12


def test_divergent_without_termination():
    ctx = make_context(0.5)
    with pytest.raises(DivergentSeries):
        phi(PhiParams([0.3, 0.2], []), 0.4, ctx)
    with pytest.raises(DivergentSeries):
        phi(PhiParams([0.3, 0.2], [0.5]), 1.5, ctx)


def test_lower_parameter_pole():
    ctx = make_context(0.5)
    with pytest.raises(PoleAtParameter):
        phi(PhiParams([0.3], [1 / 0.5**2]), 0.4, ctx)


def test_ramanujan_1psi1():
    q, a, b, z = 0.5, 0.6, 0.3, 0.8
    ctx = make_context(q)
    p = lambda x: complex(mp.qp(x, q))  # noqa: E731
    rhs = p(q) * p(b / a) * p(a * z) * p(q / (a * z)) / (p(b) * p(q / a) * p(z) * p(b / (a * z)))
    assert rel(psi(PhiParams([a], [b]), z, ctx), rhs) < 1e-12


def test_psi_with_lower_q_is_one_sided():
    ctx = make_context(0.5)
    # lower parameter q makes every n < 0 term vanish
    lhs = psi(PhiParams([0.9], [0.5]), 0.8, ctx)
    rhs = phi(PhiParams([0.9], []), 0.8, ctx)
    assert rel(lhs, rhs) < 1e-13


def test_psi_region_violation():
    ctx = make_context(0.5)
    with pytest.raises(DivergentSeries):
        psi(PhiParams([0.3], [0.5]), 0.4 / 0.3 * 2, ctx)


def test_phi20_coefficients():
    q, a, b = 0.5, 0.3, 0.2
    ctx = make_context(q)
    c = phi20_coeffs(a, b, 31, ctx).coeffs
    assert complex(c[0]) == 1
    assert rel(c[1], -(1 - a) * (1 - b) / (1 - q)) < 1e-15
    ratios = [abs(complex(c[n + 1]) / complex(c[n])) * q**n for n in range(5, 30)]
    assert max(ratios) / min(ratios) < 1.1


def test_phi20_coefficients_clamp():
    ctx = make_context(0.5)
    s = phi20_coeffs(0.3, 0.2, 200, ctx)
    assert s.clamped and len(s) < 200


def test_qborel_gives_2phi1_coefficients():
    q, a, b = 0.5, 0.3, 0.2
    ctx = make_context(q)
    B = qborel(phi20_coeffs(a, b, 12, ctx), ctx).coeffs
    for n in range(12):
        ref = complex(mp.qp(a, q, n) * mp.qp(b, q, n) / mp.qp(q, q, n)) * (-1) ** n
        assert rel(B[n], ref) < 1e-13


def test_qborel_trivial_cases():
    ctx = make_context(0.5)
    from qresum.series import FormalSeries

    s = qborel(FormalSeries([1.0, 0, 0], 3), ctx)
    assert s.coeffs == [1.0, 0, 0]
    s = qborel(FormalSeries([0, 0, 1.0], 3), ctx)
    assert s.coeffs[2] == 0.5


def test_stieltjes_wigert_low_degrees():
    q, x = 0.5, 0.7
    ctx = make_context(q)
    assert complex(stieltjes_wigert(0, x, ctx)) == 1
    assert rel(stieltjes_wigert(1, x, ctx), (1 - q * x) / (1 - q)) < 1e-15


@pytest.mark.parametrize("n", [2, 3, 5])
def test_stieltjes_wigert_leading_coefficient(n):
    q = 0.5
    ctx = make_context(q)
    xs = np.arange(n + 1, dtype=float)
    ys = np.array([complex(stieltjes_wigert(n, x, ctx)).real for x in xs])
    lead = np.polyfit(xs, ys, n)[0]
    assert lead == pytest.approx((-1) ** n * q ** (n * n) / complex(qpoch_n(q, n, ctx)).real, rel=1e-8)


def test_psi_q_values():
    q = 0.5
    ctx = make_context(q)
    assert complex(psi_q(0.0, ctx)) == 0
    ref = sum(q ** (l + 1) / (1 - q ** (l + 1)) for l in range(100))
    assert rel(psi_q(q, ctx), ref) < 1e-14
    with pytest.raises(PoleAtParameter):
        psi_q(2.0, ctx)


def test_extended_precision_phi():
    ctx = make_context(0.5, precision="extended")
    with mp.workdps(50):
        ref = mp.qhyper([mp.mpf(3) / 10], [mp.mpf(7) / 10], mp.mpf(1) / 2, mp.mpf(2) / 5)
        got = phi(PhiParams([0.3], [0.7]), 0.4, ctx)
        assert abs(got - ref) < mp.mpf(10) ** -40
    assert not math.isnan(float(mp.re(got)))
