import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from deformcalc import DomainError, dcd
from deformcalc.algebra import dcd_eigenfunction
from deformcalc.solvers import (
    BLOW_UP,
    SUPPORT_EXIT,
    ZERO_CROSSING,
    GridFunction,
    OscillatorConfig,
    Trajectory,
    oscillator_energy,
    residual,
    solve_cd_eigen,
    solve_dcd_eigen,
    solve_oscillator,
)


def max_rel(a, b):
    a, b = np.asarray(a), np.asarray(b)
    return float(np.max(np.abs(a - b) / np.abs(b)))


class TestCdEigen:
    def test_classical(self):
        g = solve_cd_eigen(1, 1, 0.1, 1, 2.0)
        assert max_rel(g.values, np.exp(g.nodes - 0.1)) <= 1e-14
        assert residual(g, "cd-eigen", 1) <= 1e-8

    def test_half_order_at_one(self):
        g = solve_cd_eigen(0.5, 1, 0.1, math.exp(2 * math.sqrt(0.1)), 1.0)
        assert g.nodes[-1] == 1.0
        assert g.values[-1] == pytest.approx(math.exp(2.0), rel=1e-14)
        assert g.values[-1] / g.values[0] == pytest.approx(math.exp(2 * (1 - math.sqrt(0.1))), rel=1e-14)

    def test_initial_condition_exact(self):
        g = solve_cd_eigen(0.3, 2.0, 0.7, 1.234, 3.0)
        assert g.values[0] == 1.234 and g.nodes[0] == 0.7

    @pytest.mark.parametrize("x0, x_end", [(0.0, 1.0), (-1.0, 1.0), (1.0, 0.5)])
    def test_domain(self, x0, x_end):
        with pytest.raises(DomainError):
            solve_cd_eigen(0.5, 1, x0, 1, x_end)


class TestDcdEigen:
    def test_linear_case(self):
        g = solve_dcd_eigen(2, 1, 1, 3.0)
        assert g.event is None
        assert max_rel(g.values, 1 + g.nodes) <= 1e-13
        assert residual(g, "dcd-eigen", 2) <= 1e-6

    def test_classical_limit(self):
        g = solve_dcd_eigen(1, 2, 1, 1.5)
        assert max_rel(g.values, np.exp(2 * g.nodes)) <= 1e-6

    def test_blow_up_before_singular_point(self):
        g = solve_dcd_eigen(0.5, 1, 1, 3.0, steps=1024)
        assert g.event is not None and g.event.kind == BLOW_UP
        assert g.nodes[-1] < 2.0
        assert g.event.at == g.nodes[-1]
        assert g.event.estimate == pytest.approx(2.0, rel=1e-3)
        # accuracy degrades only in the last steps before the singularity
        mask = g.nodes <= 1.8
        assert max_rel(g.values[mask], (1 - g.nodes[mask] / 2) ** -2) <= 1e-6

    def test_negative_rate_decays_without_event(self):
        g = solve_dcd_eigen(0.5, -1.0, 1, 5.0)
        assert g.event is None
        assert max_rel(g.values, (1 + g.nodes / 2) ** -2) <= 1e-6

    def test_support_exit(self):
        # q = 0.5: F = (1 - x/2)^2 reaches zero at x = 2
        g = solve_dcd_eigen(1.5, -1.0, 1, 3.0)
        assert g.event is not None and g.event.kind == SUPPORT_EXIT
        assert g.nodes[-1] < 2.0
        assert g.event.estimate == pytest.approx(2.0, rel=1e-3)

    @pytest.mark.parametrize("alpha", [0.3, 0.5, 0.8, 1.2])
    @pytest.mark.parametrize("lam", [0.5, 1.0, 2.0])
    def test_matches_q_exponential(self, alpha, lam):
        x_end = 0.9 / ((1 - alpha) * lam) if alpha < 1 else 2.0
        g = solve_dcd_eigen(alpha, lam, 1.0, x_end, steps=1024)
        assert g.event is None
        assert max_rel(g.values, dcd_eigenfunction(alpha, lam, g.nodes)) <= 1e-6

    def test_interpolated_eigen_relation(self):
        g = solve_dcd_eigen(0.5, 1.0, 1.0, 1.8, steps=1024)
        spline = g.interpolant()
        worst = 0.0
        for t in np.linspace(0.05, 1.75, 40):
            F = lambda s: float(spline(s))  # noqa: E731
            worst = max(worst, abs(dcd(F, 0.5, t) - float(spline(t))) / float(spline(t)))
        assert worst <= 1e-4

    def test_convergence_order(self):
        errs = []
        for n in (32, 64):
            g = solve_dcd_eigen(0.5, 1.0, 1.0, 1.0, steps=n)
            errs.append(max_rel(g.values, dcd_eigenfunction(0.5, 1.0, g.nodes)))
        assert errs[0] / errs[1] >= 8

    def test_domain(self):
        with pytest.raises(DomainError):
            solve_dcd_eigen(0.5, 1, 0.0, 1.0)
        with pytest.raises(DomainError):
            solve_dcd_eigen(0.5, 1, 1.0, 0.0)

    @settings(max_examples=40, deadline=None)
    @given(st.floats(0.2, 0.95), st.floats(0.3, 3.0))
    def test_event_always_precedes_singularity(self, alpha, lam):
        x_star = 1 / ((1 - alpha) * lam)
        g = solve_dcd_eigen(alpha, lam, 1.0, 2 * x_star, steps=256)
        assert g.event is not None
        assert g.nodes[-1] < x_star


class TestOscillator:
    def test_classical_cosine(self):
        tr = solve_oscillator(OscillatorConfig(1.0, 2.0, 1.0, 0.0, 3.0))
        assert tr.event is not None and tr.event.kind == ZERO_CROSSING
        assert tr.event.estimate == pytest.approx(math.pi / 4, abs=1e-6)
        assert tr.t[-1] <= math.pi / 4
        mask = tr.t <= 0.7
        assert np.max(np.abs(tr.x[mask] - np.cos(2 * tr.t[mask]))) <= 1e-6

    def test_classical_energy(self):
        tr = solve_oscillator(OscillatorConfig(1.0, 2.0, 1.0, 0.0, 3.0))
        assert np.allclose(tr.E, 0.5 * tr.v**2 + 2 * tr.x**2, rtol=1e-15)
        assert np.max(np.abs(tr.E / tr.E[0] - 1)) <= 1e-10

    @pytest.mark.parametrize("alpha", [0.8, 0.9, 1.0, 1.1])
    def test_deformed_energy_conserved(self, alpha):
        tr = solve_oscillator(OscillatorConfig(alpha, 1.0, 1.0, 0.0, 3.0))
        assert len(tr) > 100
        assert np.max(np.abs(tr.E / tr.E[0] - 1)) <= 1e-6

    def test_energy_formula(self):
        assert oscillator_energy(0.5, 2.0, 4.0, 1.0) == pytest.approx(0.5 * 0.25 + 0.5 * 4 * 16)

    def test_convergence_order(self):
        def err(steps):
            tr = solve_oscillator(OscillatorConfig(1.0, 1.0, 1.0, 0.0, 1.0, steps=steps))
            return np.max(np.abs(tr.x - np.cos(tr.t)))

        assert err(16) / err(32) >= 8

    def test_outward_motion_runs_to_end(self):
        tr = solve_oscillator(OscillatorConfig(0.9, 1.0, 1.0, 0.5, 1.0, steps=256))
        assert tr.event is None and tr.t[-1] == pytest.approx(1.0)
        assert residual(tr, "oscillator", 0.9, omega=1.0) <= 1e-6

    def test_equilibrium_residual_is_zero(self):
        t = np.linspace(0, 1, 11)
        tr = Trajectory(t, np.full(11, 2.0), np.zeros(11), np.zeros(11))
        assert residual(tr, "oscillator", 0.7, omega=0.0) == 0.0
        tr2 = solve_oscillator(OscillatorConfig(0.7, 0.0, 2.0, 0.0, 1.0))
        assert tr2.event is None and np.all(tr2.x == 2.0)

    @pytest.mark.parametrize(
        "kwargs",
        [dict(x0=0.0), dict(omega=-1.0), dict(t_end=0.0), dict(steps=8), dict(steps=20.5)],
    )
    def test_config_validation(self, kwargs):
        base = dict(alpha=0.9, omega=1.0, x0=1.0, v0=0.0, t_end=1.0)
        base.update(kwargs)
        with pytest.raises(DomainError):
            OscillatorConfig(**base)


class TestContainers:
    def test_grid_validation(self):
        with pytest.raises(ValueError):
            GridFunction([0, 0], [1, 2])
        with pytest.raises(ValueError):
            GridFunction([0, 1], [1, math.nan])

    def test_residual_needs_nodes(self):
        with pytest.raises(ValueError):
            residual(GridFunction([0.0, 1.0], [1.0, 2.0]), "dcd-eigen", 1)
        with pytest.raises(ValueError):
            residual(GridFunction([0.0, 1.0, 2.0], [1.0, 2.0, 3.0]), "heat", 1)
