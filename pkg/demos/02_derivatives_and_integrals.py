"""
Conformable, dual conformable and fractal derivatives
=====================================================

Closed forms against their limit definitions, and the two integrals with
their fundamental theorems.
"""

import math

from deformcalc import (
    cd,
    cd_integral,
    cd_limit,
    chen,
    dcd,
    dcd_antiderivative_strict,
    dcd_integral_paper,
    dcd_limit,
)
from deformcalc.verifier import ftc_dual_comparison


def square(x):
    return x * x


# D^alpha f = x^(1-alpha) f'      D~^alpha f = f^(alpha-1) f'      chen = D^alpha f / alpha
print(f"{'alpha':>6} {'cd':>12} {'cd (limit)':>12} {'dcd':>12} {'dcd (limit)':>12} {'chen':>12}")
for alpha in (0.3, 0.5, 1.0, 1.5):
    print(
        f"{alpha:6.2f} {cd(square, alpha, 4.0):12.6f} {cd_limit(square, alpha, 4.0):12.6f} "
        f"{dcd(square, alpha, 4.0):12.6f} {dcd_limit(square, alpha, 4.0):12.6f} {chen(square, alpha, 4.0):12.6f}"
    )

# expressions work too and bring an exact symbolic derivative along
print("cd('exp(x)', 0.7, 1.2) =", cd("exp(x)", 0.7, 1.2))

# the duality: cd of f times dcd of its inverse, at matching points, is 1
for alpha in (0.3, 1.5):
    print(f"alpha={alpha}: cd(exp)(x) * dcd(log)(exp(x)) =", cd(math.exp, alpha, 1.3) * dcd(math.log, alpha, math.exp(1.3)))

# conformable integral: int_a^b f(x) x^(alpha-1) dx, with the weight singularity at 0 handled
print("I^0.5 of 1 over [0, 4] =", cd_integral(lambda x: 1.0, 0.5, 0.0, 4.0))
H = lambda t: cd_integral(math.cos, 0.5, 0.0, t)  # noqa: E731
print("D^0.5 I^0.5 cos at 2 =", cd(H, 0.5, 2.0), " cos(2) =", math.cos(2.0))

# two dual integrals: the literal int f^(2-alpha) and the strict antiderivative
print("literal dual integral of x over [1, 2] at alpha=0 =", dcd_integral_paper(lambda x: x, 0.0, 1.0, 2.0))
Hs = lambda t: dcd_antiderivative_strict(lambda s: s, 0.5, 1.0, 1.0, t)  # noqa: E731
print("D~ of the strict antiderivative of x at 1.5 =", dcd(Hs, 0.5, 1.5))
print("fundamental theorem residuals for f = x, alpha = 0.5:", ftc_dual_comparison(lambda t: t, 0.5, (1.0, 2.0)))
