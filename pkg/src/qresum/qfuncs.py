"""q-Pochhammer symbols, the theta function, the Gaussian kernel and the bridge P_q.

Functions accept scalars or arrays.  Multivalued quantities (``e_q``, ``p_q``)
read the unwrapped argument from a :class:`~qresum.context.BranchedComplex`;
plain complex inputs use the principal branch.  The ``log_*`` variants take the
logarithm of the argument directly and return a logarithm, which is what the
quadrature kernels use to stay clear of overflow.
"""

from __future__ import annotations

import math

import numpy as np

from .context import BranchedComplex, as_log
from .errors import PoleAtParameter, TruncationFailure

__all__ = [
    "nterms",
    "qpoch_inf",
    "log_qpoch_inf",
    "qpoch",
    "qpoch_n",
    "theta_q",
    "log_theta_q",
    "theta_q_series",
    "theta_q_logderiv",
    "theta_q_logderiv2",
    "theta_q_deriv",
    "e_q",
    "log_e_q",
    "p_q",
    "p_q_from_t",
    "p_q_product",
    "p_q_gaussian",
    "p_q_exp_form",
    "p_q_reciprocal_coeff",
    "p_q_reciprocal",
    "jacobi_theta",
    "jacobi_theta1_prime",
    "qq_inf",
]

ZERO_FACTOR = 1e-15


def _out(x, ctx):
    return ctx.m.scalar(x)


def _fourier_terms(ln_w, growth, ctx):
    """Number of terms ``n`` after which ``n*n*ln_w + growth*n`` stays below log(tiny)."""
    a = -float(ln_w)
    tol = -math.log(ctx.tiny)
    n = (growth + math.sqrt(growth * growth + 4 * a * tol)) / (2 * a)
    n = math.ceil(n) + 1
    if n > ctx.max_terms:
        raise TruncationFailure("Fourier series needs too many terms")
    return n


def nterms(ctx, amax=1.0, tol=None):
    """Smallest ``N`` with ``amax * q**N < tol``; raises when above ``max_terms``."""
    tol = ctx.tiny if tol is None else tol
    amax = float(amax)
    if amax <= tol:
        return 1
    n = math.ceil((math.log(tol) - math.log(amax)) / math.log(ctx.q)) + 1
    if n > ctx.max_terms:
        raise TruncationFailure(f"{n} product terms needed, cap is {ctx.max_terms}")
    return max(n, 1)


def qq_inf(ctx, base=None):
    """``(q;q)_inf``, or ``(base;base)_inf`` for another real nome."""
    if base is None:
        return _qq_cache(ctx)
    return _out(_prod_inf(ctx.m.c(base), base, ctx), ctx)


def _qq_cache(ctx):
    key = "_qq_inf"
    val = ctx.__dict__.get(key)
    if val is None:
        val = _out(_prod_inf(ctx.m.c(ctx.qv), ctx.qv, ctx), ctx)
        object.__setattr__(ctx, key, val)
    return val


def _prod_inf(a, base, ctx):
    """Direct product (a;base)_inf with a geometric log-tail correction."""
    m = ctx.m
    amax = float(np.max(m.absf(a))) if np.size(a) else 0.0
    bf = float(base)
    tol = ctx.tiny
    if amax <= tol:
        n = 1
    else:
        n = math.ceil((math.log(tol) - math.log(amax)) / math.log(bf)) + 1
        if n > ctx.max_terms:
            raise TruncationFailure(f"{n} product terms needed, cap is {ctx.max_terms}")
    out = m.c(np.ones(np.shape(a)))
    p = a
    for _ in range(n):
        out = out * (1 - p)
        p = p * base
    # sum_{k>=n} log(1 - a base^k) ~ -a base^n / (1 - base)
    return out * m.exp(-p / (1 - base))


def qpoch_inf(a, ctx):
    """``(a;q)_inf`` as a truncated product.

    Factors smaller than 1e-15 in modulus are reported as an exact zero.

    Examples
    --------
    >>> from qresum import make_context
    >>> ctx = make_context(0.5)
    >>> abs(qpoch_inf(1.0, ctx))
    0.0
    """
    m = ctx.m
    a = m.c(a)
    amax = float(np.max(m.absf(a))) if np.size(a) else 0.0
    if amax > 1e12:
        val = m.exp(log_qpoch_inf(a, ctx))
    else:
        val = _prod_inf(a, ctx.qv, ctx)
    hit = _vanishing_factor(a, ctx)
    if np.any(hit):
        val = np.where(hit, m.c(0), val) if np.ndim(val) else m.c(0)
    return _out(val, ctx)


def _vanishing_factor(a, ctx):
    """True where ``a = q**-k`` for some ``k >= 0`` to working precision."""
    m = ctx.m
    af = np.asarray(m.absf(a))
    hit = np.zeros(af.shape, dtype=bool)
    good = af >= 1.0 - 1e-12
    if not np.any(good):
        return hit
    k = np.round(np.log(np.where(good, af, 1.0)) / -math.log(ctx.q))
    for kk in np.unique(k[good]):
        sel = good & (k == kk)
        dist = m.absf(1 - a * ctx.qv ** int(kk))
        hit |= sel & (np.asarray(dist) < ZERO_FACTOR)
    return hit


def log_qpoch_inf(a, ctx, log_a=None):
    """``log (a;q)_inf`` summed factor by factor (imaginary part not reduced).

    ``log_a`` may be passed instead of ``a`` when ``|a|`` would overflow.
    """
    m = ctx.m
    if log_a is not None:
        log_a = m.c(log_a)
        lmax = float(np.max(np.asarray(m.re(log_a), dtype=float))) if np.size(log_a) else -np.inf
        a = None
    else:
        a = m.c(a)
        amax = float(np.max(m.absf(a))) if np.size(a) else 0.0
        lmax = math.log(amax) if amax > 0 else -np.inf
    tol = ctx.tiny
    lq = math.log(ctx.q)
    n = 1 if lmax <= math.log(tol) else math.ceil((math.log(tol) - lmax) / lq) + 1
    if n > ctx.max_terms:
        raise TruncationFailure(f"{n} product terms needed, cap is {ctx.max_terms}")
    shape = np.shape(log_a) if a is None else np.shape(a)
    acc = m.c(np.zeros(shape))
    with np.errstate(all="ignore"):
        for k in range(n):
            term = m.exp(log_a + k * ctx.ln_q) if a is None else a * ctx.qv**k
            acc = acc + m.log1p(-term)
        tail = m.exp(log_a + n * ctx.ln_q) if a is None else a * ctx.qv**n
    return _out(acc - tail / (1 - ctx.qv), ctx)


def qpoch(a, nu, ctx):
    """``(a;q)_nu = (a;q)_inf / (a q**nu;q)_inf`` for complex ``nu``.

    Integer ``nu`` uses the finite product, negative integers the reciprocal
    ``1/(a q**nu;q)_{-nu}``.
    """
    if isinstance(nu, (int, np.integer)) or (np.isreal(nu) and float(np.real(nu)).is_integer() and abs(float(np.real(nu))) < 10_000):
        n = int(np.real(nu))
        if n >= 0:
            return qpoch_n(a, n, ctx)
        den = qpoch_n(ctx.m.c(a) * ctx.qv**n, -n, ctx)
        if np.any(ctx.m.absf(den) == 0):
            raise PoleAtParameter(f"(a;q)_nu has a pole: a*q**nu lies on q**-k (nu={nu})")
        return _out(1 / ctx.m.c(den), ctx)
    m = ctx.m
    shifted = m.c(a) * m.exp(m.c(nu) * ctx.ln_q)
    den = qpoch_inf(shifted, ctx)
    if np.any(m.absf(den) == 0):
        raise PoleAtParameter(f"(a;q)_nu has a pole: a*q**nu lies on q**-k (nu={nu})")
    return _out(m.c(qpoch_inf(a, ctx)) / m.c(den), ctx)


def qpoch_n(a, n, ctx):
    """Finite product ``(1-a)(1-aq)...(1-aq**(n-1))``."""
    m = ctx.m
    a = m.c(a)
    out = m.c(np.ones(np.shape(a)))
    for k in range(int(n)):
        out = out * (1 - a * ctx.qv**k)
    return _out(out, ctx)


# theta function --------------------------------------------------------------


def _reduce(L, ctx):
    """Split ``L = k ln q + L0`` with ``|exp(L0)|`` in ``[q, 1)``."""
    m = ctx.m
    re = m.re(L)
    k = np.ceil(np.asarray(re / ctx.ln_q, dtype=float)) - 1.0
    L0 = L - k.astype(object if m.name == "extended" else float) * ctx.ln_q
    return k.astype(np.int64), L0


def _theta_annulus(tau0, ctx):
    m = ctx.m
    q = ctx.qv
    n = nterms(ctx, 1.0)
    out = m.c(np.full(np.shape(tau0), 1.0))
    inv = 1 / tau0
    for k in range(n):
        qk = q**k
        out = out * (1 - qk * q) * (1 + tau0 * qk) * (1 + inv * qk * q)
    return out


def log_theta_q(L, ctx):
    """``log theta_q(exp(L))`` for backend log arrays ``L``.

    The value is reduced into the annulus ``q <= |tau| < 1`` and the
    quasi-periodicity factor is applied exactly in log form.  Zeros give
    ``-inf`` in the real part.
    """
    m = ctx.m
    L = m.c(L)
    k, L0 = _reduce(L, ctx)
    tau0 = m.exp(L0)
    with np.errstate(all="ignore"):
        base = m.log(_theta_annulus(tau0, ctx))
    kk = k.astype(object) if m.name == "extended" else k
    # theta(q^k tau0) = theta(tau0) tau0^{-k} q^{-k(k-1)/2}
    return _out(base - kk * L0 - (kk * (kk - 1) // 2) * ctx.ln_q, ctx)


def _tau_log(tau, ctx):
    if isinstance(tau, BranchedComplex):
        return as_log(tau, ctx)
    return ctx.m.log(ctx.m.c(tau))


def theta_q(tau, ctx):
    """``theta_q(tau) = (q, -tau, -q/tau; q)_inf``.

    Single valued, so a :class:`BranchedComplex` contributes only its value.
    Exact zero on ``tau = -q**n``.

    Examples
    --------
    >>> from qresum import make_context
    >>> ctx = make_context(0.5)
    >>> theta_q(-1.0, ctx)
    0j
    """
    m = ctx.m
    L = _tau_log(tau, ctx)
    k, L0 = _reduce(m.c(L), ctx)
    tau0 = m.exp(L0)
    d1 = m.absf(1 + tau0)
    d2 = m.absf(1 + ctx.qv / tau0)
    with np.errstate(all="ignore"):
        val = m.exp(log_theta_q(L, ctx))
    zero = (np.asarray(d1) < ZERO_FACTOR) | (np.asarray(d2) < ZERO_FACTOR)
    if np.any(zero):
        val = np.where(zero, m.c(0), m.c(val)) if np.ndim(val) else m.c(0)
    return _out(val, ctx)


def theta_q_series(tau, ctx):
    """Bilateral series ``sum q**C(n,2) tau**n``, truncated by the max-term rule."""
    m = ctx.m
    t = m.c(complex(tau) if isinstance(tau, BranchedComplex) else tau)
    total = m.c(np.ones(np.shape(t)))
    biggest = 1.0
    tol = ctx.tiny
    for sign in (1, -1):
        small = 0
        n = 1 if sign == 1 else -1
        while small < 5:
            term = ctx.qv ** (n * (n - 1) // 2) * t**n
            total = total + term
            mag = float(np.max(m.absf(term)))
            biggest = max(biggest, mag)
            small = small + 1 if mag < tol * biggest else 0
            n += sign
            if abs(n) > ctx.max_terms:
                raise TruncationFailure("bilateral theta series did not settle")
    return _out(total, ctx)


def _series_moments(tau0, ctx, powers):
    """Sums ``sum n**p q**C(n,2) tau0**n`` for each p, for ``|tau0|`` in the annulus."""
    m = ctx.m
    nmax = int(math.sqrt(2 * -math.log(ctx.tiny) / -math.log(ctx.q))) + 4
    sums = [m.c(np.zeros(np.shape(tau0))) for _ in powers]
    for n in range(-nmax, nmax + 1):
        term = ctx.qv ** (n * (n - 1) // 2) * tau0**n
        for i, p in enumerate(powers):
            sums[i] = sums[i] + (n**p) * term
    return sums


def theta_q_logderiv(tau, ctx):
    """``tau theta_q'(tau) / theta_q(tau)``.

    Computed from the term-wise differentiated bilateral series in the annulus
    and shifted by ``-k`` for ``tau = q**k tau0``.
    """
    m = ctx.m
    L = m.c(_tau_log(tau, ctx))
    k, L0 = _reduce(L, ctx)
    tau0 = m.exp(L0)
    _check_pole(tau0, ctx)
    s0, s1 = _series_moments(tau0, ctx, (0, 1))
    kk = k.astype(object) if m.name == "extended" else k
    return _out(s1 / s0 - kk, ctx)


def theta_q_logderiv2(tau, ctx):
    """``tau d/dtau`` of the log-derivative; invariant under ``tau -> q tau``."""
    m = ctx.m
    L = m.c(_tau_log(tau, ctx))
    _, L0 = _reduce(L, ctx)
    tau0 = m.exp(L0)
    _check_pole(tau0, ctx)
    s0, s1, s2 = _series_moments(tau0, ctx, (0, 1, 2))
    r = s1 / s0
    return _out(s2 / s0 - r * r, ctx)


def theta_q_deriv(tau, ctx):
    """``theta_q'(tau)`` (plain derivative)."""
    m = ctx.m
    t = m.c(complex(tau) if isinstance(tau, BranchedComplex) else tau)
    return _out(m.c(theta_q(tau, ctx)) * m.c(theta_q_logderiv(tau, ctx)) / t, ctx)


def _check_pole(tau0, ctx):
    m = ctx.m
    d = np.minimum(np.asarray(m.absf(1 + tau0)), np.asarray(m.absf(tau0 + ctx.qv)))
    if np.any(d < 1e-8):
        raise PoleAtParameter("theta_q vanishes at this point (tau = -q**n)")


# E_q and P_q ------------------------------------------------------------------


def log_e_q(L, ctx):
    """``log E_q`` from ``L = log tau`` (unwrapped)."""
    m = ctx.m
    d = m.c(L) - ctx.ln_q / 2
    return _out(d * d / (2 * ctx.ln_q), ctx)


def e_q(tau, ctx):
    """``E_q(tau) = exp((ln tau - ln(q)/2)**2 / (2 ln q))`` on the log surface.

    Examples
    --------
    >>> from qresum import make_context
    >>> ctx = make_context(0.3)
    >>> round(abs(e_q(0.3 ** 0.5, ctx)), 12)
    1.0
    """
    return _out(ctx.m.exp(ctx.m.c(log_e_q(as_log(tau, ctx), ctx))), ctx)


def p_q_from_t(t, ctx):
    """Fourier form ``sum (-1)**n q_hat**(n*n) exp(2 n pi i t)`` for complex ``t``."""
    m = ctx.m
    t = m.c(t)
    y = float(np.max(np.abs(np.asarray(m.im(t), dtype=float)))) if np.size(t) else 0.0
    lqh = 2 * math.pi**2 / math.log(ctx.q)
    total = m.c(np.ones(np.shape(t)))
    for n in range(1, _fourier_terms(lqh, 2 * math.pi * y, ctx) + 1):
        w = ctx.q_hat ** (n * n) * (-1) ** n
        ph = 2 * n * m.pi * 1j * t
        total = total + w * (m.exp(ph) + m.exp(-ph))
    return _out(total, ctx)


def p_q(tau, ctx):
    """q-periodic bridge ``P_q(tau)`` via its theta_4 Fourier series.

    Multivalued through the unwrapped argument of ``tau``.
    """
    L = as_log(tau, ctx)
    return p_q_from_t(ctx.m.c(L) / ctx.ln_q, ctx)


def p_q_product(tau, ctx):
    """Product form ``-ln(q) C_q E_q(tau) theta_q(tau)``."""
    m = ctx.m
    val = -ctx.ln_q * ctx.c_q * m.c(e_q(tau, ctx)) * m.c(theta_q(tau, ctx))
    return _out(val, ctx)


def p_q_gaussian(t, ctx):
    """Gaussian-sum form ``-ln(q) C_q sum q**((t - 1/2 + n)**2 / 2)``."""
    m = ctx.m
    t = m.c(t)
    total = m.c(np.zeros(np.shape(t)))
    width = int(math.sqrt(2 * -math.log(ctx.tiny) / -math.log(ctx.q))) + 3
    y = float(np.max(np.abs(np.asarray(m.im(t), dtype=float)))) if np.size(t) else 0.0
    x0 = int(round(float(np.mean(np.asarray(m.re(t), dtype=float))))) if np.size(t) else 0
    width += int(y) + 1
    for n in range(-x0 - width, -x0 + width + 1):
        d = t - 0.5 + n
        total = total + m.exp(d * d * ctx.ln_q / 2)
    return _out(-ctx.ln_q * ctx.c_q * total, ctx)


def p_q_exp_form(t, ctx):
    """Exponential form ``(qh**2;qh**2)_inf exp(sum cos(2 pi n t)/(n sinh(n ln qh)))``."""
    m = ctx.m
    t = m.c(t)
    qh = ctx.q_hat
    lqh = m.log(qh) if m.name == "extended" else math.log(qh)
    total = m.c(np.zeros(np.shape(t)))
    n = 1
    # terms fall like qh**n
    nmax = max(2, math.ceil(math.log(ctx.tiny) / float(lqh)) + 2)
    while n <= nmax:
        total = total + m.cos(2 * m.pi * n * t) / (n * m.sinh(n * lqh))
        n += 1
    pref = qq_inf(ctx, base=qh * qh)
    return _out(pref * m.exp(total), ctx)


def p_q_reciprocal_coeff(n, ctx):
    """Coefficient ``a~_n = sum_m (-1)**m q_hat**(m (m + 2n + 1))`` of ``1/P_q``."""
    qh = ctx.q_hat
    total = 0
    m = 0
    while True:
        term = qh ** (m * (m + 2 * n + 1))
        if m > 0 and abs(float(term)) < ctx.tiny:
            break
        total = total + (-1) ** m * term
        m += 1
    return total


def p_q_reciprocal(t, ctx):
    """``1/P_q(q**t)`` from the cosine series with coefficients ``a~_n``."""
    m = ctx.m
    t = m.c(t)
    qh = ctx.q_hat
    y = float(np.max(np.abs(np.asarray(m.im(t), dtype=float)))) if np.size(t) else 0.0
    total = m.c(np.full(np.shape(t), 1.0)) * p_q_reciprocal_coeff(0, ctx)
    lqh = 2 * math.pi**2 / math.log(ctx.q)
    if lqh + 2 * math.pi * y >= 0:
        raise TruncationFailure("1/P_q cosine series diverges this far off the real t axis")
    nmax = math.ceil(math.log(ctx.tiny) / (lqh + 2 * math.pi * y)) + 1
    for n in range(1, nmax + 1):
        total = total + 2 * p_q_reciprocal_coeff(n, ctx) * qh**n * m.cos(2 * n * m.pi * t)
    return _out(total / qq_inf(ctx, base=qh * qh) ** 3, ctx)


# classical Jacobi thetas ---------------------------------------------------------


def jacobi_theta(kind, u, nome, ctx):
    """Classical ``theta_1`` or ``theta_4`` with nome ``0 < nome < 1``.

    ``theta_4(u) = 1 + 2 sum (-1)**n nome**(n*n) cos(2 n u)`` and
    ``theta_1(u) = 2 sum (-1)**n nome**((n+1/2)**2) sin((2n+1) u)``.
    """
    m = ctx.m
    u = m.c(u)
    nf = float(nome)
    if not 0 < nf < 1:
        raise ValueError("nome must lie in (0, 1)")
    y = float(np.max(np.abs(np.asarray(m.im(u), dtype=float)))) if np.size(u) else 0.0
    ln_nome = math.log(nf)
    nome = m.num(nome) if m.name == "extended" and not hasattr(nome, "_mpf_") else nome
    nmax = _fourier_terms(ln_nome, 2 * y + 1, ctx)
    if kind == 4:
        total = m.c(np.ones(np.shape(u)))
        for n in range(1, nmax + 1):
            total = total + 2 * (-1) ** n * nome ** (n * n) * m.cos(2 * n * u)
        return _out(total, ctx)
    if kind == 1:
        total = m.c(np.zeros(np.shape(u)))
        for n in range(nmax + 1):
            total = total + 2 * (-1) ** n * nome ** ((n + 0.5) ** 2) * m.sin((2 * n + 1) * u)
        return _out(total, ctx)
    raise ValueError("kind must be 1 or 4")


def jacobi_theta1_prime(u, nome, ctx):
    """``d theta_1 / du`` by term-wise differentiation."""
    m = ctx.m
    u = m.c(u)
    y = float(np.max(np.abs(np.asarray(m.im(u), dtype=float)))) if np.size(u) else 0.0
    ln_nome = math.log(float(nome))
    total = m.c(np.zeros(np.shape(u)))
    if m.name == "extended" and not hasattr(nome, "_mpf_"):
        nome = m.num(nome)
    for n in range(_fourier_terms(ln_nome, 2 * y + 3, ctx) + 1):
        total = total + 2 * (-1) ** n * nome ** ((n + 0.5) ** 2) * (2 * n + 1) * m.cos((2 * n + 1) * u)
    return _out(total, ctx)
