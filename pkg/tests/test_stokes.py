"""Stokes functions, transform differences and their removable values."""

import math

import mpmath as mp
import numpy as np
import pytest

from qresum import BranchedComplex, GrowthViolation, make_context
from qresum.laplace import TransformKind, log_qpoch_scaled
from qresum.qfuncs import theta_q
from qresum.stokes import (
    cauchy_heine_reconstruct,
    check_growth,
    pqc,
    pqd,
    removable_limit,
    stokes_monodromy,
    transform_difference,
    uq_difference_closed_form,
)
from qresum.uq import uq


def rel(a, b):
    return abs(complex(a) - complex(b)) / max(abs(complex(b)), 1e-300)


def test_pqc_trivial_values():
    ctx = make_context(0.05)
    assert abs(pqc(1.0, ctx)) == 0
    assert abs(pqc(1 / 0.37, ctx) + pqc(0.37, ctx)) < 1e-15


@pytest.mark.parametrize("z", [0.42, BranchedComplex(0.3, 1.0)])
def test_pqc_series_vs_integral(z):
    ctx = make_context(0.05)
    assert rel(pqc(z, ctx, method="series"), pqc(z, ctx, method="integral")) < 1e-9


def test_pqd_vanishes_at_one():
    ctx = make_context(0.3)
    assert pqd(1.0, 0.7, ctx) == 0


def test_pqd_lambda_difference_against_mpmath():
    q, z, l1, l2 = 0.3, 0.4, 0.7, 1.3
    ctx = make_context(q)

    def ld(x):
        th = lambda t: mp.qp(q, q) * mp.qp(-t, q) * mp.qp(-q / t, q)  # noqa: E731
        return complex(x * mp.diff(th, x) / th(x))

    ref = ld(l1) - ld(l1 / z) - ld(l2) + ld(l2 / z)
    assert rel(pqd(z, l1, ctx) - pqd(z, l2, ctx), ref) < 1e-10


def test_pqd_q_periodic_in_lambda():
    # the value is O(q_hat) while each term is O(1), so compare absolutely
    ctx = make_context(0.3)
    assert abs(pqd(0.4, 0.3 * 0.7, ctx) - pqd(0.4, 0.7, ctx)) < 1e-11


@pytest.mark.parametrize("which,m,lam", [("c", 0, None), ("c", 2, None), ("d", 1, 0.8)])
def test_removable_limit_matches_nearby_point(which, m, lam):
    ctx = make_context(0.05)
    z = 0.05**m * (1 + 1e-7)
    P = pqc(z, ctx) if which == "c" else pqd(z, lam, ctx)
    near = P / complex(theta_q(-z, ctx))
    assert rel(removable_limit(which, m, ctx, lam=lam), near) < 1e-5


def test_removable_limit_forms_and_ratio():
    ctx = make_context(0.05)
    assert rel(removable_limit("d", 1, ctx, lam=0.8, form=1), removable_limit("d", 1, ctx, lam=0.8, form=2)) < 1e-12
    for m in range(3):
        ratio = removable_limit("c", m + 1, ctx) / removable_limit("c", m, ctx)
        assert ratio == pytest.approx(-(0.05**m), rel=1e-12)


def test_discrete_jump_is_constant():
    ctx = make_context(0.05)
    for z, lam in ((0.4, 0.7), (BranchedComplex(2.0, 0.3), 1.3)):
        r = stokes_monodromy("d", z, ctx, lam=lam)
        assert r.passed
        assert abs(r.lhs - 2j * math.pi / math.log(0.05)) < 1e-10


def test_continuous_jump():
    ctx = make_context(0.05)
    assert stokes_monodromy("c", 0.5, ctx, tol=1e-9).passed


def test_continuous_jump_vanishes_with_q():
    jumps = [abs(stokes_monodromy("c", 0.5, make_context(q)).lhs) for q in (0.3, 0.1, 0.05)]
    assert jumps[0] > jumps[1] > jumps[2]


def test_growth_check():
    ctx = make_context(0.05)
    with pytest.raises(GrowthViolation):
        check_growth(lambda t, lt: np.asarray(t, dtype=complex), ctx)
    check_growth(lambda t, lt: log_qpoch_scaled(0.3, lt, ctx), ctx)


def test_cauchy_heine_reconstruction_against_mpmath():
    # direct quadrature and lattice sum with S(t) = (-a t;q)_inf
    q, a, z, lam = 0.05, 0.3, 0.4, 0.9
    ctx = make_context(q)
    s = lambda t, lt: log_qpoch_scaled(a, lt, ctx)  # noqa: E731
    th = lambda t: mp.qp(q, q) * mp.qp(-t, q) * mp.qp(-q / t, q)  # noqa: E731
    f = lambda t: mp.qp(a * t, q) / (th(t) * (t + z))  # noqa: E731
    g = lambda u: f(mp.exp(u)) * mp.exp(u)  # noqa: E731
    ref_theta = complex(-mp.quad(g, mp.linspace(-60, 60, 121)) / mp.log(q))
    assert rel(cauchy_heine_reconstruct(s, z, "theta", ctx), ref_theta) < 1e-9
    ref_lam = complex(mp.nsum(lambda n: f(q**n * lam) * q**n * lam, [-mp.inf, mp.inf]))
    assert rel(cauchy_heine_reconstruct(s, z, TransformKind.Discrete(lam), ctx), ref_lam) < 1e-9


@pytest.mark.parametrize("z", [0.4, BranchedComplex(0.3, 1.0)])
def test_difference_constant_s(z):
    ctx = make_context(0.05)
    one = lambda t, lt: np.zeros(np.shape(t), dtype=complex)  # noqa: E731
    lhs, rhs = transform_difference("c", one, z, ctx)
    assert rel(lhs, rhs) < 1e-8


def test_difference_pochhammer_s():
    ctx = make_context(0.05)
    s = lambda t, lt: log_qpoch_scaled(0.3, lt, ctx)  # noqa: E731
    lhs, rhs = transform_difference("d", s, 0.4, ctx, lam=0.9)
    assert rel(lhs, rhs) < 1e-7


def test_difference_at_removable_point():
    ctx = make_context(0.05)
    one = lambda t, lt: np.zeros(np.shape(t), dtype=complex)  # noqa: E731
    lhs, rhs = transform_difference("c", one, 0.05, ctx)
    assert rel(lhs, rhs) < 1e-5


@pytest.mark.parametrize("q", [0.005, 0.01, 0.05])
def test_uq_differences(q):
    ctx = make_context(q)
    a, b, z, lam = 0.3, 0.2, 0.4, 1.3
    ut = complex(uq("theta", a, b, z, ctx))
    for which, other in (("c", "E"), ("d", TransformKind.Discrete(lam))):
        diff = ut - complex(uq(other, a, b, z, ctx))
        closed = uq_difference_closed_form(which, a, b, z, ctx, lam=lam)
        if abs(diff) > 1e-9:
            assert rel(diff, closed) < 1e-6
        else:
            assert abs(diff - closed) < 1e-9
