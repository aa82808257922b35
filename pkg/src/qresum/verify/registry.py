"""Suite registry and the runner that evaluates grid points concurrently.

A suite is a named builder that turns a list of contexts into an ordered list of
checks.  Each check is a zero-argument callable returning one report or a list
of reports.  Checks run on a thread pool; results are collected by check index,
so the report order never depends on scheduling.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

from ..context import make_context
from ..errors import QResumError, UnknownSuite
from ..report import VerificationReport

__all__ = ["Suite", "SuiteResult", "SUITES", "register", "run_suite", "suite_contexts"]

# q at or below which double precision resolves effects of size q_hat
SMALL_Q_DOUBLE = 0.05


@dataclass(frozen=True)
class Suite:
    """A named grid of checks.

    Attributes
    ----------
    id : str
    description : str
    qs : tuple of float
        Default bases.
    build : callable
        ``build(ctx) -> list of (label, thunk)``; called once per context.
    small_q : bool
        The suite observes effects of size ``q_hat`` and needs small ``q`` in
        double precision.
    """

    id: str
    description: str
    qs: tuple
    build: Callable
    small_q: bool = False


@dataclass
class SuiteResult:
    suite: str
    reports: list
    notes: list = field(default_factory=list)

    @property
    def n_pass(self):
        return sum(r.passed for r in self.reports)

    @property
    def n_fail(self):
        return len(self.reports) - self.n_pass

    @property
    def passed(self):
        return self.n_fail == 0 and bool(self.reports)

    def worst(self):
        """Largest relative error per identity id, in first-seen order."""
        out = {}
        for r in self.reports:
            v = r.rel_err
            if r.identity_id not in out or math.isnan(v) or v > out[r.identity_id]:
                out[r.identity_id] = v
        return out

    def summary(self):
        return {
            "suite": self.suite,
            "total": len(self.reports),
            "pass": self.n_pass,
            "fail": self.n_fail,
            "worst_rel_err": self.worst(),
            "notes": list(self.notes),
        }


SUITES: dict[str, Suite] = {}


def register(suite):
    SUITES[suite.id] = suite
    return suite


def suite_contexts(suite, ctx=None, qs=None, precision=None, eps=None):
    """Contexts a suite runs on, plus notes on any change of grid.

    Without ``ctx`` the suite runs on ``qs`` (default: its own bases) with the
    given precision and ``eps``.  With ``ctx`` its base and policy are used.  A
    small-q suite asked to run in double precision at ``q > 0.05`` drops those
    bases, falling back to its own grid when none remain, where the effects are
    resolvable.
    """
    if ctx is not None:
        qs, precision, eps, max_terms = [ctx.q], ctx.precision, ctx.eps, ctx.max_terms
    else:
        qs, max_terms = list(qs) if qs else list(suite.qs), 10_000
    contexts = [make_context(q, eps=eps, max_terms=max_terms, precision=precision) for q in qs]
    if ctx is not None:
        contexts = [ctx]
    notes = []
    if suite.small_q:
        big = [c.q for c in contexts if c.precision == "double" and c.q > SMALL_Q_DOUBLE]
        if big:
            contexts = [c for c in contexts if c.q not in big]
            if not contexts:
                contexts = [make_context(q, eps=eps, max_terms=max_terms, precision=precision) for q in suite.qs]
            used = [c.q for c in contexts]
            notes.append(f"q in {big} is too large for double precision in this suite; using q in {used}")
    return contexts, notes


def _failure(label, exc):
    nan = float("nan")
    return VerificationReport(label, {}, complex(nan, nan), complex(nan, nan), nan, nan, False, f"{type(exc).__name__}: {exc}")


def _execute(label, thunk):
    try:
        out = thunk()
    except (QResumError, ArithmeticError, ValueError) as exc:
        return [_failure(label, exc)]
    return list(out) if isinstance(out, (list, tuple)) else [out]


def run_suite(suite_id, ctx=None, parallelism=1, qs=None, precision=None, eps=None):
    """Run a registered suite.

    Parameters
    ----------
    suite_id : str
    ctx : QContext, optional
        Overrides the suite's bases (see :func:`suite_contexts`).
    parallelism : int
        Worker threads for the grid points.
    qs : sequence of float, optional
        Bases replacing the suite's own when ``ctx`` is not given.
    precision, eps : optional
        Context policy for those bases.

    Returns
    -------
    SuiteResult

    Raises
    ------
    UnknownSuite
    """
    if suite_id not in SUITES:
        raise UnknownSuite(f"unknown suite {suite_id!r}; registered: {', '.join(SUITES)}")
    suite = SUITES[suite_id]
    contexts, notes = suite_contexts(suite, ctx, qs=qs, precision=precision, eps=eps)
    checks = [c for cx in contexts for c in suite.build(cx)]
    if parallelism > 1:
        with ThreadPoolExecutor(max_workers=parallelism) as pool:
            chunks = list(pool.map(lambda c: _execute(*c), checks))
    else:
        chunks = [_execute(*c) for c in checks]
    reports = [r for chunk in chunks for r in chunk]
    return SuiteResult(suite_id, reports, notes)
