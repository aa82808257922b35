"""The resummed 2phi0, its companion solutions, connection formulas, bounds and recurrences."""

import cmath
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qresum import BadAbscissa, BranchedComplex, ConstraintViolation, InvalidN, PoleAtLattice, PoleAtParameter, make_context
from qresum.laplace import TransformKind
from qresum.uq import (
    METHODS,
    cf_alpha,
    cf_convergent,
    cf_gap,
    connection_confluent,
    connection_infinity,
    connection_rhs,
    estimate_Mq,
    k0,
    kernel_at,
    monodromy_jump,
    ode_residual,
    partial_sum,
    pk_multiplier,
    recurrence_residuals,
    remainder_and_bound,
    u_ratio,
    uq,
    wronskian_residual,
    y2,
    y_infinity,
)

Q, A, B, Z = 0.5, 0.3, 0.2, 0.4
KINDS = ["E", "theta", TransformKind.Discrete(1.3)]


def rel(a, b):
    return abs(complex(a) - complex(b)) / max(abs(complex(b)), 1e-300)


@pytest.fixture(scope="module")
def ctx():
    return make_context(Q)


# representations ------------------------------------------------------------------


@pytest.mark.parametrize("kind", KINDS + [TransformKind.Discrete(0.7)], ids=str)
@pytest.mark.parametrize("method", ["borel", "phi11", "symmetric"])
def test_terminating_case_is_a_polynomial(ctx, kind, method):
    val = uq(kind, 1 / Q, B, Z, ctx, method=method)
    assert rel(val, 1 + (1 - B) * Z / Q) < 1e-10


@pytest.mark.parametrize("kind", KINDS, ids=str)
def test_all_methods_agree(ctx, kind):
    ref = uq(kind, A, B, Z, ctx, method="symmetric")
    for method in METHODS:
        assert rel(uq(kind, A, B, Z, ctx, method=method), ref) < 1e-8, method


def test_mellin_barnes_matches_symmetric_and_is_real(ctx):
    mb = complex(uq("E", A, B, Z, ctx, method="mellin_barnes"))
    assert rel(mb, uq("E", A, B, Z, ctx, method="symmetric")) < 1e-8
    assert abs(mb.imag) < 1e-10


def test_mellin_barnes_bad_abscissa(ctx):
    with pytest.raises(BadAbscissa):
        uq("E", A, B, Z, ctx, method="mellin_barnes", sigma=0.3)


def test_method_range_violation(ctx):
    with pytest.raises(ConstraintViolation):
        uq("E", 1.5, B, Z, ctx, method="cauchy_heine")


def test_discrete_pole(ctx):
    lam = 1.3
    with pytest.raises(PoleAtLattice):
        uq(TransformKind.Discrete(lam), A, B, BranchedComplex(lam * Q, math.pi), ctx)


def test_asymptotic_to_partial_sum(ctx):
    z = 0.02
    val = complex(uq("E", A, B, z, ctx))
    assert abs(val - partial_sum(A, B, z, 6, ctx)) < 10 * abs(partial_sum(A, B, z, 7, ctx) - partial_sum(A, B, z, 6, ctx))


@settings(max_examples=10, deadline=None)
@given(r=st.floats(0.1, 1.0), arg=st.floats(-2.5, 2.5), kind=st.sampled_from(["E", "theta"]))
def test_symmetric_vs_phi11_property(ctx, r, arg, kind):
    z = BranchedComplex(r, arg)
    a = uq(kind, A, B, z, ctx, method="symmetric")
    b = uq(kind, A, B, z, ctx, method="phi11")
    assert rel(a, b) < 1e-8


# q-difference equation --------------------------------------------------------------


def test_y2_forms_agree(ctx):
    for kind in ("E", "theta"):
        assert rel(y2(kind, A, B, Z, ctx, form=1), y2(kind, A, B, Z, ctx, form=2)) < 1e-10


def test_y3_y4_swap(ctx):
    z = 10.0
    assert rel(y_infinity(3, A, B, z, ctx), y_infinity(4, B, A, z, ctx)) < 1e-15


def test_y3_lower_parameter_pole(ctx):
    # a q / b = q^-1
    with pytest.raises(PoleAtParameter):
        y_infinity(3, 0.1, 0.1 * Q * Q, 1000.0, ctx)


@pytest.mark.parametrize(
    "fn,z",
    [
        (lambda w, c: uq("E", A, B, w, c), Z),
        (lambda w, c: uq("theta", A, B, w, c), Z),
        (lambda w, c: y2("E", A, B, w, c), Z),
        (lambda w, c: y2("theta", A, B, w, c), Z),
        (lambda w, c: y_infinity(3, A, B, w, c), 10.0),
        (lambda w, c: y_infinity(4, A, B, w, c), 10.0),
    ],
    ids=["U_E", "U_theta", "y2_E", "y2_theta", "y3", "y4"],
)
def test_ode_residuals(ctx, fn, z):
    r, _ = ode_residual(lambda w: fn(w, ctx), A, B, z, ctx)
    assert r < 1e-8


@pytest.mark.parametrize("kind", KINDS, ids=str)
def test_wronskian(ctx, kind):
    assert wronskian_residual(kind, A, B, Z, ctx).passed


def test_wronskian_terminating(ctx):
    r = wronskian_residual("E", 1 / Q, B, Z, ctx)
    assert r.rel_err < 1e-12


@pytest.mark.parametrize("kind", ["E", "theta"])
def test_monodromy_small_q(kind):
    c = make_context(0.01)
    z = 0.5
    r = monodromy_jump(kind, A, B, z, c, tol=1e-6)
    assert r.passed
    # order of magnitude set by the kernel at -qz
    scale = 2 * math.pi * abs(complex(k0(A, B, c))) * abs(complex(kernel_at(kind, BranchedComplex(0.01 * z, math.pi), c)))
    assert 0.1 < abs(r.lhs) / scale < 10


# connection formulas ----------------------------------------------------------------


def test_pk_lambda_trivial_at_a_one():
    c = make_context(0.3)
    assert abs(pk_multiplier(TransformKind.Discrete(1.1), 1.0, 12.0, c) - 1) < 1e-14


@pytest.mark.parametrize("alpha,zeta", [(0.3 + 0.1j, 0.7), (0.45, 0.2 - 0.3j)])
def test_pk_variants_agree(alpha, zeta):
    c = make_context(0.2)
    lq = math.log(0.2)
    a, z = BranchedComplex.from_log(alpha * lq), BranchedComplex.from_log(zeta * lq)
    assert rel(pk_multiplier("E", a, z, c, "E"), pk_multiplier("E", a, z, c, "E2")) < 1e-10
    t1 = pk_multiplier("theta", a, z, c, "theta1")
    assert rel(t1, pk_multiplier("theta", a, z, c, "theta2")) < 1e-10
    assert rel(t1, pk_multiplier("theta", a, z, c, "theta3")) < 1e-10


@pytest.mark.parametrize("kind", ["E", "theta", TransformKind.Discrete(1.1)], ids=str)
def test_connection_at_infinity(kind):
    c = make_context(0.3)
    r = connection_infinity(kind, 0.25, 0.15, 12.0, c, tol=1e-7)
    assert r.passed
    assert abs(pk_multiplier(kind, 0.25, 12.0, c) - 1) < 0.5


def test_connection_needs_large_z():
    c = make_context(0.3)
    with pytest.raises(ConstraintViolation):
        connection_rhs("E", 0.25, 0.15, 8.0, c)


@pytest.mark.parametrize("m", [0, 1])
def test_confluent_connection(m):
    c = make_context(0.3)
    a = 0.25
    assert connection_confluent("E", a, m, 0.6 / (a * a * 0.3**m), c, tol=1e-6).passed


# error bounds ---------------------------------------------------------------------


@pytest.mark.parametrize("kind", ["E", "theta", TransformKind.Discrete(1.0)], ids=str)
def test_bound_half_plane(ctx, kind):
    Mq = estimate_Mq(A, B, ctx)
    z = 0.1 * cmath.exp(0.5j)
    value = uq(kind, A, B, z, ctx)
    for N in range(5, 13):
        rep = remainder_and_bound(kind, A, B, z, N, ctx, Mq=Mq, value=value)
        assert rep.zone == "half-plane" and rep.holds


def test_bound_sector_e(ctx):
    z = BranchedComplex(0.2, 3 * math.pi / 4)
    rep = remainder_and_bound("E", A, B, z, 6, ctx)
    assert rep.zone == "sector-E" and rep.holds


def test_bound_invalid_n(ctx):
    with pytest.raises(InvalidN):
        remainder_and_bound("E", A, B, Z, 0, ctx)


def test_mq_estimate(ctx):
    m1 = estimate_Mq(A, B, ctx)
    m2 = estimate_Mq(A, B, ctx, rays=25)
    assert 0 < m1 < math.inf
    assert abs(m2 - m1) <= 0.05 * m1
    assert 0 < estimate_Mq(0.0, 0.0, ctx) < math.inf


# recurrences and the continued fraction ----------------------------------------------


@pytest.mark.parametrize("kind,a,b", [("E", A, B), ("E", 0.3, 0.3), (TransformKind.Discrete(0.9), A, B)], ids=str)
def test_contiguous_relations(ctx, kind, a, b):
    assert all(r.passed for r in recurrence_residuals(kind, a, b, Z, ctx, tol=1e-8))


def test_first_convergent(ctx):
    assert cf_convergent(1, A, B, Z, ctx) == pytest.approx(1 + cf_alpha(1, A, B, ctx) * Z)
    assert cf_alpha(1, A, B, ctx) == pytest.approx((1 - A) / Q)


def test_terminating_fraction_equals_ratio(ctx):
    g = cf_gap(1 / Q, B, Z, ctx)
    assert g.terminating
    assert rel(g.even, u_ratio("E", 1 / Q, B, Z, ctx)) < 1e-10


def test_non_terminating_fraction_misses_ratio(ctx):
    g = cf_gap(A, B, Z, ctx)
    assert g.gap > 1e-6
    for kind in KINDS:
        r = u_ratio(kind, A, B, Z, ctx)
        assert abs(g.even - r) > 1e-6 and abs(g.odd - r) > 1e-6
