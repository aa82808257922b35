"""
A continued fraction with two limits
====================================

The ratio of contiguous 2phi0 series has a formal continued fraction.  When
the series terminates (a = q^-n) the fraction is finite and equals the ratio
of polynomials.  Otherwise its even and odd convergents settle on two
different limits and neither is the ratio of the resummed functions.
"""

from qresum import make_context
from qresum.uq import cf_convergent, cf_gap, u_ratio

q = 0.5
ctx = make_context(q)
b, z = 0.2, 0.4

g = cf_gap(1 / q, b, z, ctx)
print("terminating:", g.even, "ratio:", complex(u_ratio("E", 1 / q, b, z, ctx)))

a = 0.3
for n in range(1, 13):
    print(f"convergent {n:2d}: {complex(cf_convergent(n, a, b, z, ctx)).real:.12f}")

g = cf_gap(a, b, z, ctx)
print(f"even limit {complex(g.even).real:.12f}  odd limit {complex(g.odd).real:.12f}  gap {g.gap:.3e}")
for kind in ("E", "theta"):
    print(f"U-ratio ({kind}): {complex(u_ratio(kind, a, b, z, ctx)).real:.12f}")
