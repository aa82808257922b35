"""Named verification suites and their runner."""

from . import suites as _suites  # noqa: F401  (registers the suites)
from .registry import SUITES, Suite, SuiteResult, register, run_suite, suite_contexts

__all__ = ["SUITES", "Suite", "SuiteResult", "register", "run_suite", "suite_contexts"]
