"""Identity evaluators on their default points and trivial cases."""

import pytest

from qresum import make_context
from qresum.identities import IDENTITIES, default_points, identity_eval


@pytest.mark.parametrize("identity_id", sorted(IDENTITIES))
@pytest.mark.parametrize("q", [0.3, 0.5])
def test_identity_holds_on_default_points(identity_id, q):
    ctx = make_context(q)
    for point in default_points(identity_id, q):
        r = identity_eval(identity_id, point, ctx, tol=1e-9)
        assert r.passed, (point, r.rel_err, r.note)


def test_theta_sumdiff_equal_arguments_vanish():
    r = identity_eval("theta_sumdiff", {"x": 0.4, "y": 0.4}, make_context(0.5))
    assert abs(complex(r.lhs)) == 0 and abs(complex(r.rhs)) < 1e-15


def test_eqab_with_unit_parameters_is_one():
    r = identity_eval("eqab", {"a": 1.0, "b": 1.0, "t": 0.7}, make_context(0.5))
    assert abs(complex(r.lhs) - 1) < 1e-15 and abs(complex(r.rhs) - 1) < 1e-15


def test_unknown_identity():
    with pytest.raises(KeyError):
        identity_eval("nope", {}, make_context(0.5))
