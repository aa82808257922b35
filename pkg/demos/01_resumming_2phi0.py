"""
Resumming a divergent 2phi0
===========================

The series 2phi0(a, b; -; q, z) has coefficients growing like q^(-n(n-1)/2),
so it diverges for every z != 0.  Its q-Borel transform converges, and a
q-Laplace transform maps it back to a function.  Three kernels are available
and they give three different functions with the same asymptotic series.
"""

import cmath

from qresum import make_context
from qresum.laplace import TransformKind
from qresum.uq import METHODS, partial_sum, uq

ctx = make_context(0.5)
a, b, z = 0.3, 0.2, 0.4

# the partial sums first settle down and then blow up
for N in (2, 4, 6, 8, 12, 16):
    print(f"N = {N:2d}  partial sum = {partial_sum(a, b, z, N, ctx).real:+.6e}")

# every representation of one resummation agrees
for kind in (TransformKind.E(), TransformKind.Theta(), TransformKind.Discrete(1.3)):
    vals = {m: complex(uq(kind, a, b, z, ctx, method=m)) for m in METHODS}
    spread = max(abs(v - vals["symmetric"]) for v in vals.values())
    print(f"{kind.label:>12s}  U = {vals['symmetric'].real:.15f}  spread over methods {spread:.1e}")

# at small |z| the asymptotic series is accurate and the kernels nearly agree
w = 0.05 * cmath.exp(0.3j)
print("small z:", complex(uq("E", a, b, w, ctx)), partial_sum(a, b, w, 6, ctx))
