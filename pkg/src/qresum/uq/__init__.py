"""The resummed confluent series ``2phi0(a, b; -; q, z)`` and its invariants."""

from .bounds import BoundReport, estimate_Mq, partial_sum, remainder_and_bound
from .connection import PK_VARIANTS, confluent_rhs, connection_confluent, connection_infinity, connection_rhs, pk_multiplier
from .methods import METHODS, default_method, k0, mb_abscissa, uq
from .recurrences import CFGap, cf_alpha, cf_convergent, cf_gap, recurrence_residuals, u_ratio
from .solutions import kernel_at, monodromy_closed_form, monodromy_jump, ode_residual, wronskian_residual, y2, y_infinity

__all__ = [
    "METHODS",
    "default_method",
    "k0",
    "mb_abscissa",
    "uq",
    "kernel_at",
    "y2",
    "y_infinity",
    "ode_residual",
    "wronskian_residual",
    "monodromy_closed_form",
    "monodromy_jump",
    "PK_VARIANTS",
    "pk_multiplier",
    "connection_rhs",
    "connection_infinity",
    "confluent_rhs",
    "connection_confluent",
    "BoundReport",
    "partial_sum",
    "estimate_Mq",
    "remainder_and_bound",
    "recurrence_residuals",
    "cf_alpha",
    "cf_convergent",
    "u_ratio",
    "CFGap",
    "cf_gap",
]
