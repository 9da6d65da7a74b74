"""
Deformed algebra: q-exponentials, q-logarithms and conformable subtraction
==========================================================================

The deformation order alpha and the entropic index q are tied by q = 2 - alpha.
"""

import numpy as np

from deformcalc import DeformParam, SupportError
from deformcalc.algebra import csub, qexp, qln, stretched_exp

p = DeformParam(0.5)
print("alpha =", p.alpha, " q =", p.q())

# e_q(x) = [1 + (1 - q) x]^(1/(1 - q)); q = 1 is the ordinary exponential
x = np.linspace(-1.0, 1.0, 5)
for q in (0.5, 1.0, 1.5):
    print(f"qexp({q}, x) =", np.round(qexp(q, x), 6))

# the q-logarithm inverts it on the support
y = qexp(1.5, x)
print("qln(1.5, qexp(1.5, x)) - x =", np.abs(qln(1.5, y) - x).max())

# continuity in q: no jump when crossing q = 1
for q in (1 - 1e-9, 1.0, 1 + 1e-9):
    print(f"qexp({q!r}, 1) = {qexp(q, 1.0)!r}")

# outside the support 1 + (1 - q) x > 0 the function does not exist...
try:
    qexp(2.0, 1.5)
except SupportError as err:
    print("SupportError:", err)

# ...unless the Tsallis cutoff is requested explicitly
print("qexp(2, 1.5, cutoff=True) =", qexp(2.0, 1.5, cutoff=True))

# the deformed increment: y = x + eps x^(1-alpha) gives back eps
xv, eps = 2.0, 1e-3
print("csub:", csub(xv + eps * xv ** (1 - p.alpha), xv, p))

# the stretched exponential exp(x^alpha / alpha)
print("stretched_exp(0.5, [1, 4]) =", stretched_exp(0.5, np.array([1.0, 4.0])))
