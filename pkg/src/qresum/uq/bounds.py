"""Remainders of the truncated asymptotic series and their rigorous bounds.

``R_N(z) = U(z) - sum_{n<N} (a, b;q)_n/(q;q)_n q^{-n(n-1)/2} (-z)^n``.  The bound
has the shape ``|z|^N |K0| M_q q^{-N(N-1)/2} / (c q^N;q)_inf`` times a factor
depending on the sector and the kernel, where ``c = max(|a|, |b|)`` and ``M_q``
bounds ``|u(t)| / (-c q |t|;q)_inf`` on the right half-plane.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..context import BranchedComplex
from ..errors import InvalidN
from ..laplace import TransformKind
from ..qfuncs import qpoch_inf, qpoch_n, qq_inf
from .methods import k0, u_log, uq

__all__ = ["BoundReport", "partial_sum", "estimate_Mq", "remainder_and_bound"]

MQ_SAFETY = 1.25


@dataclass
class BoundReport:
    N: int
    z: complex
    kind: str
    zone: str
    remainder: float
    bound: float
    Mq: float

    @property
    def holds(self):
        return self.remainder <= self.bound


def partial_sum(a, b, z, N, ctx):
    """``sum_{n<N} (a, b;q)_n/(q;q)_n q^{-n(n-1)/2} (-z)^n``."""
    q = ctx.q
    total = 0j
    for n in range(N):
        c = complex(qpoch_n(a, n, ctx)) * complex(qpoch_n(b, n, ctx)) / complex(qpoch_n(q, n, ctx))
        total += c * q ** (-n * (n - 1) / 2) * (-z) ** n
    return total


def estimate_Mq(a, b, ctx, rays=13, radii=None):
    """Grid estimate of ``sup |u(t)| / (-c q |t|;q)_inf`` over ``Re t >= 0``, times 1.25.

    The supremum is sampled on ``rays`` directions in ``[-pi/2, pi/2]`` and on
    ``|t|`` from 1e-3 to 1e3.
    """
    m = ctx.m
    q = ctx.q
    c = max(abs(complex(a)), abs(complex(b)))
    radii = np.logspace(-3, 3, 121) if radii is None else np.asarray(radii)
    ul = u_log(a, b, ctx)
    best = 0.0
    for ang in np.linspace(-math.pi / 2, math.pi / 2, rays):
        lt = np.log(radii) + 1j * ang
        t = np.exp(lt)
        lu = np.asarray(m.c(ul(m.c(t), m.c(lt))), dtype=complex).real
        den = np.log(np.abs(np.asarray(qpoch_inf(-c * q * radii, ctx), dtype=complex)))
        best = max(best, float(np.max(np.exp(lu - den))))
    return MQ_SAFETY * best


def remainder_and_bound(kind, a, b, z, N, ctx, Mq=None, method=None, value=None):
    """Remainder ``|R_N(z)|`` and its bound for the zone containing ``z``.

    Zones: ``Re z >= 0`` uses the half-plane bound.  Otherwise the sector bound
    of the kernel applies: a Gaussian factor ``exp(-xi^2 / (2 ln q))`` with
    ``xi = |arg z| - pi/2`` for E, the same times a constant for theta, and
    ``1/|sin xi|`` for the discrete transform with ``lam > 0``.

    Raises
    ------
    InvalidN
        ``N`` is not a positive integer, or ``N <= 1 - ln c / ln q`` for the
        continuous kernels.

    ``value`` may carry a precomputed ``U(z)`` so that sweeps over ``N`` reuse it.
    """
    kind = TransformKind.parse(kind) if not isinstance(kind, TransformKind) else kind
    q = ctx.q
    lq = math.log(q)
    c = max(abs(complex(a)), abs(complex(b)))
    if int(N) != N or N < 1:
        raise InvalidN(f"N must be a positive integer, got {N!r}")
    if kind.kind != "lambda" and not N > 1 - math.log(c) / lq:
        raise InvalidN(f"N={N} must exceed 1 - ln c/ln q = {1 - math.log(c) / lq:.3f}")
    zb = BranchedComplex.promote(z)
    zc = complex(zb.value)
    Mq = estimate_Mq(a, b, ctx) if Mq is None else Mq
    U = complex(uq(kind, a, b, zb, ctx, method=method)) if value is None else complex(value)
    R = abs(U - partial_sum(a, b, zc, N, ctx))
    base = abs(zc) ** N * abs(complex(k0(a, b, ctx))) * Mq * q ** (-N * (N - 1) / 2) / abs(complex(qpoch_inf(c * q**N, ctx)))
    phi = abs(zb.arg)
    if zc.real >= 0:
        zone, bound = "half-plane", base
    else:
        xi = phi - math.pi / 2
        if kind.kind == "E":
            zone, bound = "sector-E", base * math.exp(-(xi**2) / (2 * lq))
        elif kind.kind == "theta":
            qh = float(ctx.q_hat)
            const = (1 + math.sqrt(qh)) / ((1 - math.sqrt(qh)) * complex(qq_inf(ctx, base=qh * qh)).real ** 3)
            zone, bound = "sector-theta", base * math.exp(-(xi**2) / (2 * lq)) * const
        else:
            zone, bound = "sector-lambda", base / abs(math.sin(xi))
    return BoundReport(N, zc, kind.label, zone, R, bound, Mq)
