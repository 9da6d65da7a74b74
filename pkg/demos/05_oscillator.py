"""
The deformed oscillator
=======================

x'' = -omega^2 x^(3-2 alpha) - (alpha-1) x'^2 / x conserves
E = 1/2 (x^(alpha-1) x')^2 + 1/2 omega^2 x^2.
"""

import numpy as np

from deformcalc.solvers import OscillatorConfig, residual, solve_oscillator

for alpha in (0.8, 0.9, 1.0, 1.1):
    tr = solve_oscillator(OscillatorConfig(alpha, omega=1.0, x0=1.0, v0=0.0, t_end=3.0))
    drift = np.max(np.abs(tr.E / tr.E[0] - 1))
    ev = tr.event
    print(
        f"alpha={alpha}: {len(tr)} nodes, energy drift {drift:.1e}, "
        f"{ev.kind} near t={ev.estimate:.4f}" if ev else f"alpha={alpha}: no event"
    )

# alpha = 1 is the harmonic oscillator
tr = solve_oscillator(OscillatorConfig(1.0, 2.0, 1.0, 0.0, 0.7, steps=512))
print("max |x - cos 2t| on [0, 0.7]:", np.max(np.abs(tr.x - np.cos(2 * tr.t))))
print("residual in the defining equation:", residual(tr, "oscillator", 1.0, omega=2.0))
