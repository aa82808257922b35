"""Quadrature for the three transforms and for Mellin-Barnes lines.

Integrands are passed as *log handles*: ``log_f(t, lt)`` receives backend
arrays of points ``t`` and their unwrapped logarithms ``lt`` and returns
``log f(t)``.  Working in log space keeps factors such as ``(-a t;q)_inf`` and
``1/theta_q(t/z)`` representable far into the tails where each alone would
overflow.

Half-line integrals use the trapezoid rule in ``u = ln|t|`` on a ray
``t = exp(u + i*zeta)``.  The kernels decay like Gaussians in ``u`` so the rule
converges geometrically; the step is halved until two estimates agree.  Nodes
are generated outward from the kernel centre and a side stops after five
consecutive nodes below ``ctx.tiny`` times the largest node seen.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .context import BranchedComplex, as_log
from .errors import NoConvergence, PoleAtLattice, PoleOnRay
from .qfuncs import log_e_q, log_theta_q

__all__ = [
    "QuadratureSpec",
    "ContourSpec",
    "QuadDiagnostics",
    "log_kernel",
    "kernel",
    "integrate_halfline",
    "bilateral_lattice_sum",
    "check_lattice_point",
    "mb_line_integral",
    "log_handle",
    "negative_lattice_poles",
]

BLOCK = 64
STREAK = 5
CLIP = 0.75 * math.pi


@dataclass
class QuadratureSpec:
    """Trapezoid controls for half-line integrals.

    ``ray_angle`` overrides the automatic choice of integration ray.
    """

    step: float = 0.05
    max_halvings: int = 6
    ray_angle: float | None = None
    residue_nodes: int = 64


@dataclass
class ContourSpec:
    """Vertical line ``Re s = sigma`` for Mellin-Barnes integrals."""

    sigma: float
    step: float = 0.05
    max_halvings: int = 6


@dataclass
class QuadDiagnostics:
    nodes: int = 0
    step: float = 0.0
    last_increment: float = 0.0
    ray_angle: float = 0.0
    residues: int = 0
    history: list = field(default_factory=list)


def log_handle(f, ctx):
    """Wrap a value handle ``f(t)`` as a log handle; zeros map to ``-inf``."""

    def lf(t, lt):
        with np.errstate(divide="ignore", invalid="ignore"):
            return ctx.m.log(ctx.m.c(f(t)))

    return lf


def log_kernel(kind, L, ctx):
    """Log of the continuous kernel at ``exp(L)``: ``c_q E_q`` or ``-1/(ln q theta_q)``."""
    m = ctx.m
    if kind == "E":
        return m.c(log_e_q(L, ctx)) + m.log(m.c(ctx.c_q))
    if kind == "theta":
        return m.log(m.c(-1 / ctx.ln_q)) - m.c(log_theta_q(L, ctx))
    raise ValueError(f"unknown kernel kind {kind!r}")


def kernel(kind, tau, ctx):
    """Kernel value ``kappa(tau)`` for ``kind`` in ``{"E", "theta"}``."""
    L = as_log(tau, ctx)
    return ctx.m.scalar(ctx.m.exp(log_kernel(kind, ctx.m.c(L), ctx)))


def _maxre(x, m):
    r = np.asarray(m.re(x), dtype=float)
    r = r[np.isfinite(r)]
    return float(r.max()) if r.size else -np.inf


def _nodes(m, centre, j, h):
    """Points ``centre + j*h``, formed in backend arithmetic so the spacing is exact."""
    if m.name == "double":
        return centre + j * h
    c = m.num(centre)
    return np.array([c + m.mp.mpf(float(x)) * h for x in np.atleast_1d(j)], dtype=object)


def _walk(log_h, centre, h, ctx, diag):
    """Trapezoid nodes ``centre + j*h`` walked outward in blocks.

    Returns the node offsets ``j`` and the log values, both as lists of arrays.
    """
    m = ctx.m
    ltiny = math.log(ctx.tiny)
    js, vals = [], []
    best = -np.inf
    for direction in (1, -1):
        start = 0 if direction > 0 else -1
        streak = 0
        done = False
        while not done:
            j = start + direction * np.arange(BLOCK)
            v = m.c(log_h(_nodes(m, centre, j, h)))
            re = np.asarray(m.re(v), dtype=float)
            re = np.where(np.isnan(re), -np.inf, re)
            top = _maxre(v, m)
            best = max(best, top)
            js.append(j)
            vals.append(v)
            for r in re:
                streak = streak + 1 if r <= best + ltiny else 0
                if streak >= STREAK:
                    done = True
                    break
            start = int(j[-1]) + direction
            if abs(start) * h > 4000:
                raise NoConvergence("integrand does not decay along the ray", diag.__dict__)
    return np.concatenate(js), np.concatenate(vals)


def _logsum(v, ctx):
    """``log`` free sum of ``exp(v)`` with a common scale; returns (sum, scale)."""
    m = ctx.m
    M = _maxre(v, m)
    if not np.isfinite(M):
        return m.num(0), 0.0
    # an integer scale is exact in both backends, so exp(v - M) * exp(M) loses nothing
    M = float(math.floor(M))
    with np.errstate(all="ignore"):
        w = m.exp(v - M)
    w = np.where(np.asarray(m.isfinite(w), dtype=bool), w, 0)
    return sum(w.tolist()) if m.name == "extended" else complex(np.sum(w)), M


def _trapezoid(log_h, centre, ctx, step, max_halvings, diag):
    """Trapezoid sum ``h * sum exp(log_h)`` with halving until converged."""
    m = ctx.m
    h = step if m.name == "double" else m.num(step)
    js, vals = _walk(log_h, centre, h, ctx, diag)
    lo, hi = int(js.min()), int(js.max())
    s, M = _logsum(vals, ctx)
    est = s * m.exp(m.num(M)) * h
    absum = float(np.sum(np.exp(np.asarray(m.re(vals), dtype=float) - M))) * math.exp(M) * h if np.isfinite(M) else 0.0
    diag.nodes = len(js)
    for _ in range(max_halvings):
        mids = m.c(log_h(_nodes(m, centre, np.arange(lo, hi) + 0.5, h)))
        s2, M2 = _logsum(mids, ctx)
        new = est / 2 + s2 * m.exp(m.num(M2)) * h / 2
        h /= 2
        diag.nodes += len(mids)
        inc = abs(complex(new - est))
        diag.history.append(inc)
        est = new
        lo, hi = 2 * lo, 2 * hi
        scale = max(abs(complex(est)), 1e-3 * absum)
        if inc <= ctx.eps * scale:
            diag.step = float(h)
            diag.last_increment = inc
            return est
    diag.step = float(h)
    diag.last_increment = diag.history[-1] if diag.history else float("nan")
    raise NoConvergence("trapezoid rule did not converge", dict(diag.__dict__))


def negative_lattice_poles(ctx, first=0):
    """Pole set of ``1/(-t;q)_inf``: ``n -> ln|t_n|`` with ``t_n = -q**-(n+first)``."""
    lq = math.log(ctx.q)
    return lambda n: -(n + first) * lq


def _choose_ray(kind, phi, ctx, have_poles):
    """Ray angle and the odd multiples of pi whose pole lines are crossed."""
    if kind == "E":
        clipped = max(-CLIP, min(CLIP, phi))
        # the real-ray route loses about (phi - zeta)^2 / (2|ln q|) nats to cancellation
        if not have_poles or (phi - clipped) ** 2 / (2 * abs(float(ctx.ln_q))) < math.log(1e4):
            return clipped, []
    elif abs(phi) < 1.7 * math.pi:
        return max(-CLIP, min(CLIP, phi)), []
    if not have_poles:
        raise PoleOnRay("continuation past the pole line needs the integrand's pole set")
    sgn = 1 if phi > 0 else -1
    zeta = phi
    odd = (abs(zeta) / math.pi - 1) / 2
    if abs(odd - round(odd)) * 2 * math.pi < 0.25 * math.pi:
        zeta = sgn * ((2 * round(odd) + 1) * math.pi - 0.25 * math.pi)
    crossed = []
    k = 1
    while k * math.pi < abs(zeta):
        crossed.append(sgn * k * math.pi)
        k += 2
    return zeta, crossed


def integrate_halfline(log_f, z, kind, ctx, spec=None, poles=None, diagnostics=False):
    """``int_0^inf f(t) kappa(t/z) dt/t`` for the E or theta kernel.

    Parameters
    ----------
    log_f : callable
        Log handle ``(t, lt) -> log f(t)``.
    z : BranchedComplex or complex
        Evaluation point; its unwrapped argument selects the sheet.
    kind : {"E", "theta"}
    ctx : QContext
    spec : QuadratureSpec, optional
    poles : callable, optional
        ``n -> ln|t_n|`` for the poles of ``f`` on the rays ``arg t = pi (mod 2 pi)``,
        ``n = 0, 1, ...`` ordered outward.  Needed to continue past those rays;
        the crossed poles contribute numerically computed residues.
    diagnostics : bool
        Also return a :class:`QuadDiagnostics`.

    Returns
    -------
    complex, or (complex, QuadDiagnostics)

    Raises
    ------
    PoleOnRay
        The requested ray passes within 1e-6 of a kernel pole.
    NoConvergence
    """
    spec = spec or QuadratureSpec()
    m = ctx.m
    z = BranchedComplex.promote(z)
    lz = as_log(z, ctx)
    phi = float(z.arg)
    diag = QuadDiagnostics()
    if spec.ray_angle is not None:
        zeta, crossed = float(spec.ray_angle), []
        if kind == "theta":
            off = (zeta - phi - math.pi) / (2 * math.pi)
            if abs(off - round(off)) * 2 * math.pi < 1e-6:
                raise PoleOnRay("integration ray meets a pole of 1/theta_q(t/z)")
    else:
        zeta, crossed = _choose_ray(kind, phi, ctx, poles is not None)
    diag.ray_angle = zeta
    izeta = m.c(1j * m.num(zeta)) if m.name == "extended" else 1j * zeta
    centre = math.log(z.modulus) + 0.5 * float(ctx.ln_q)
    ln_q = ctx.ln_q

    def log_h(u):
        u = m.c(u)
        lt = u + izeta
        t = m.exp(lt)
        return m.c(log_f(t, lt)) + log_kernel(kind, lt - lz, ctx)

    total = _trapezoid(log_h, centre, ctx, spec.step, spec.max_halvings, diag)
    for arg in crossed:
        sgn = 1 if arg > 0 else -1
        total = total + sgn * 2j * math.pi * _residue_sum(log_f, lz, kind, ctx, arg, poles, z, spec, diag)
    total = m.scalar(total)
    return (total, diag) if diagnostics else total


def _residue_sum(log_f, lz, kind, ctx, arg, poles, z, spec, diag):
    """Sum of residues of ``f(t) kappa(t/z)/t`` over the poles on the ray ``arg``."""
    m = ctx.m
    N = spec.residue_nodes
    theta = 2 * math.pi * np.arange(N) / N
    total = 0
    best = 0.0
    streak = 0
    n = 0
    q = ctx.q
    while streak < STREAK:
        lr = poles(n)
        lc = complex(lr, arg)
        rho = 0.35 * (1 - q)
        if kind == "theta":
            # kernel poles at t = -q^k z: keep them well outside the circle
            kk = round((lr - math.log(z.modulus)) / math.log(q))
            for k in (kk - 1, kk, kk + 1):
                d = abs(1 - cmath_exp(complex(math.log(z.modulus) + k * math.log(q) - lr, z.arg + math.pi - arg)))
                rho = min(rho, 0.35 * d) if d > 1e-300 else rho
        w = rho * np.exp(1j * theta)
        lt = m.c(lc + np.log1p(w))
        t = m.exp(lt)
        v = m.c(log_f(t, lt)) + log_kernel(kind, lt - lz, ctx) - lt + m.c(lc + np.log(w))
        s, M = _logsum(v, ctx)
        r = s * m.exp(m.num(M)) / N
        total = total + r
        mag = abs(complex(r))
        best = max(best, mag)
        streak = streak + 1 if mag <= ctx.tiny * best else 0
        n += 1
        diag.residues += 1
        if n > ctx.max_terms:
            raise NoConvergence("residue series did not settle", dict(diag.__dict__))
    return total


def cmath_exp(w):
    return complex(math.exp(w.real) * math.cos(w.imag), math.exp(w.real) * math.sin(w.imag))


def _on_minus_lattice(lw, ctx):
    """``True`` when ``exp(lw)`` lies within 1e-8 (relative) of some ``-q^n``."""
    k = lw.real / math.log(ctx.q)
    off = (lw.imag - math.pi) / (2 * math.pi)
    return abs(off - round(off)) < 1e-8 / (2 * math.pi) and abs(k - round(k)) < 1e-8 / abs(math.log(ctx.q))


def check_lattice_point(lam, ctx):
    """Reject a discrete-transform point ``lam`` on ``{-q^n}``.

    Raises
    ------
    PoleAtLattice
    """
    lam = BranchedComplex.promote(lam)
    if _on_minus_lattice(lam.log(), ctx):
        raise PoleAtLattice(f"λ on excluded lattice -q^n (|λ|={lam.modulus:g}, arg λ={lam.arg:g}, q={ctx.q:g})")


def bilateral_lattice_sum(log_f, lam, z, ctx, diagnostics=False):
    """``sum_{n in Z} f(q^n lam) / theta_q(q^n lam / z)``.

    Raises
    ------
    PoleAtLattice
        ``lam`` or ``z`` lies within 1e-8 (relative) of a point ``-q^n`` or
        ``-q^n lam`` respectively.
    """
    m = ctx.m
    check_lattice_point(lam, ctx)
    lam = BranchedComplex.promote(lam)
    z = BranchedComplex.promote(z)
    llam = as_log(lam, ctx)
    lz = as_log(z, ctx)
    # poles where lam q^n / z = -q^k
    w = complex(llam) - complex(lz) if m.name == "double" else complex(m.mp.mpc(llam) - lz)
    if _on_minus_lattice(w, ctx):
        raise PoleAtLattice("z lies on the pole lattice -q^n lam")
    diag = QuadDiagnostics()
    centre = round((math.log(z.modulus) - math.log(lam.modulus)) / math.log(ctx.q))

    def log_h(n):
        n = np.asarray(n, dtype=np.int64)
        lt = llam + m.c(n.astype(object) if m.name == "extended" else n) * ctx.ln_q
        t = m.exp(lt)
        return m.c(log_f(t, lt)) - m.c(log_theta_q(lt - lz, ctx))

    js, vals = _walk(lambda x: log_h(np.rint(x).astype(np.int64)), float(centre), 1.0, ctx, diag)
    s, M = _logsum(vals, ctx)
    diag.nodes = len(js)
    total = m.scalar(s * m.exp(m.num(M)))
    return (total, diag) if diagnostics else total


def mb_line_integral(log_g, spec, ctx, diagnostics=False):
    """``int g(s) ds`` upward along ``Re s = sigma``; the ``1/(2 pi i)`` is left to the caller.

    ``log_g(s)`` receives backend arrays of points ``s`` and returns ``log g(s)``.
    """
    m = ctx.m
    sigma = spec.sigma
    diag = QuadDiagnostics()

    def log_h(tau):
        if m.name == "double":
            s = m.c(sigma + 1j * np.asarray(tau, dtype=float))
        else:
            sb = m.num(sigma)
            s = np.array([m.mp.mpc(sb, x) for x in np.atleast_1d(tau)], dtype=object)
        return m.c(log_g(s))

    total = _trapezoid(log_h, 0.0, ctx, spec.step, spec.max_halvings, diag)
    total = m.scalar(1j * total)
    return (total, diag) if diagnostics else total
