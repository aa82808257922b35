"""
The q-Stokes phenomenon
=======================

The theta and E resummations differ by a q-exponentially small term.  For
small q it is visible in double precision and matches a closed form built
from the q-periodic function P_q^(c).  Going once around z = 0 changes the
discrete Stokes function by exactly 2 pi i / ln q.
"""

import math

from qresum import make_context
from qresum.stokes import pqc, stokes_monodromy, uq_difference_closed_form
from qresum.uq import uq

a, b, z = 0.3, 0.2, 0.4
for q in (0.005, 0.01, 0.05):
    ctx = make_context(q)
    diff = complex(uq("theta", a, b, z, ctx)) - complex(uq("E", a, b, z, ctx))
    closed = uq_difference_closed_form("c", a, b, z, ctx)
    print(f"q = {q:<6}  U_theta - U_E = {diff.real:+.10e}  closed form = {closed.real:+.10e}  q_hat = {ctx.q_hat:.2e}")

ctx = make_context(0.05)
# P_q^(c) is q-periodic and odd under z -> 1/z
print("P_q^(c)(0.37) =", complex(pqc(0.37, ctx)), " P_q^(c)(1/0.37) =", complex(pqc(1 / 0.37, ctx)))

r = stokes_monodromy("d", 0.4, ctx, lam=0.7)
print("jump of P_q^(d):", r.lhs, " 2 pi i / ln q =", 2j * math.pi / math.log(0.05))
