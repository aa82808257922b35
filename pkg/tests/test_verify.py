"""Suite registry, runner and small-q policy."""

import json
import math

import pytest

from qresum import UnknownSuite, make_context
from qresum.verify import SUITES, run_suite


def test_registry_lists_every_suite():
    assert {"lemma21", "blpower", "table1", "stokes_differences", "appendix"} <= set(SUITES)


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_suite("bogus")


def test_blpower_suite_passes():
    res = run_suite("blpower", qs=[0.5])
    assert res.passed and res.n_pass == len(res.reports) > 0


def test_runs_are_deterministic():
    a = run_suite("lemma21", qs=[0.3])
    b = run_suite("lemma21", qs=[0.3], parallelism=4)
    da = json.dumps([r.to_dict() for r in a.reports], sort_keys=True)
    db = json.dumps([r.to_dict() for r in b.reports], sort_keys=True)
    assert da == db


def test_small_q_suite_downgrades_in_double():
    res = run_suite("stokes_monodromy", ctx=make_context(0.5))
    assert res.notes and "too large for double precision" in res.notes[0]
    assert all(r.point.get("q", 0.05) <= 0.05 for r in res.reports)


def test_summary_fields():
    s = run_suite("sw_orthogonality").summary()
    assert s["fail"] == 0 and s["total"] == s["pass"]
    assert all(not math.isnan(v) for v in s["worst_rel_err"].values())
