"""
Eigenfunctions of the two derivatives
=====================================

D^alpha y = lambda y is solved by a stretched exponential; D~^alpha F = lambda F
by a q-exponential with q = 2 - alpha, which blows up in finite x for alpha < 1.
"""

import numpy as np

from deformcalc.algebra import dcd_eigenfunction
from deformcalc.solvers import residual, solve_cd_eigen, solve_dcd_eigen

g = solve_cd_eigen(0.5, 1.0, 0.1, 1.0, 2.0, steps=8)
print("cd eigen, alpha=0.5:")
for x, y in zip(g.nodes, g.values):
    print(f"  x={x:.4f}  y={y:.6f}  closed form={np.exp(2 * (np.sqrt(x) - np.sqrt(0.1))):.6f}")

# RK4 against the q-exponential
for alpha in (0.5, 1.0, 2.0):
    g = solve_dcd_eigen(alpha, 1.0, 1.0, 1.5, steps=512)
    exact = dcd_eigenfunction(alpha, 1.0, g.nodes)
    err = np.max(np.abs(g.values / exact - 1))
    print(f"dcd eigen alpha={alpha}: nodes={len(g)} max rel error={err:.2e} event={g.event}")

# alpha = 0.5: F = (1 - x/2)^-2, singular at x = 2
g = solve_dcd_eigen(0.5, 1.0, 1.0, 3.0, steps=1024)
print("stopped at x =", g.nodes[-1], "->", g.event.kind, "estimated at", g.event.estimate)

# self-consistency against the defining equation
print("residual of the linear case (alpha=2):", residual(solve_dcd_eigen(2.0, 1.0, 1.0, 1.0), "dcd-eigen", 2.0))

# convergence: halving the step cuts the error roughly 16x
errs = []
for n in (32, 64, 128):
    g = solve_dcd_eigen(0.5, 1.0, 1.0, 1.0, steps=n)
    errs.append(np.max(np.abs(g.values / dcd_eigenfunction(0.5, 1.0, g.nodes) - 1)))
print("error ratios:", [round(float(a / b), 2) for a, b in zip(errs, errs[1:])])
