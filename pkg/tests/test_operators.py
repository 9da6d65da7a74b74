import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from deformcalc import (
    ConvergenceError,
    DomainError,
    LimitSchedule,
    NumericsError,
    QuadratureError,
    RealFunction,
    cd,
    cd_integral,
    cd_limit,
    chen,
    chen_limit,
    dcd,
    dcd_antiderivative_strict,
    dcd_eigenfunction,
    dcd_integral_paper,
    dcd_limit,
    stretched_exp,
)
from deformcalc.quadrature import adaptive_simpson
from deformcalc.symbolic import parse


def square(x):
    return x * x


SMOOTH = [
    (square, lambda x: 2 * x),
    (math.exp, math.exp),
    (lambda x: math.sin(x) + 2, math.cos),
    (math.log1p, lambda x: 1 / (1 + x)),
]


class TestClosedForms:
    def test_cd_classical(self):
        assert cd(square, 1, 3) == pytest.approx(6, rel=1e-10)

    def test_cd_half_order(self):
        # 4^0.5 * 8
        assert cd(square, 0.5, 4) == pytest.approx(16, rel=1e-10)

    def test_cd_stretched_exp_eigen(self):
        f = lambda x: stretched_exp(0.5, x)  # noqa: E731
        assert cd(f, 0.5, 1.0) == pytest.approx(math.exp(2.0), rel=1e-8)

    def test_dcd_classical(self):
        assert dcd(square, 1, 3) == pytest.approx(6, rel=1e-10)

    def test_dcd_linear_eigen(self):
        assert dcd(lambda x: 1 + x, 2, 3) == pytest.approx(4, rel=1e-10)

    def test_dcd_half_order(self):
        assert dcd(square, 0.5, 1) == pytest.approx(2, rel=1e-10)

    def test_chen_classical(self):
        assert chen(square, 1, 3) == pytest.approx(6, rel=1e-10)

    def test_chen_substitution(self):
        # u = x^0.5, x^2 = u^4, d(u^4)/du = 4 u^3 = 32 at u = 2
        assert chen(square, 0.5, 4) == pytest.approx(32, rel=1e-10)

    @pytest.mark.parametrize("alpha", [0.3, 0.9, 1.4])
    @pytest.mark.parametrize("f, df", SMOOTH)
    def test_chen_is_cd_over_alpha(self, f, df, alpha):
        for x in (0.6, 1.3, 2.9):
            assert chen(f, alpha, x) * alpha == pytest.approx(cd(f, alpha, x), rel=1e-12)

    def test_analytic_derivative_handle_is_used(self):
        rf = RealFunction(square, lambda x: 2 * x)
        assert cd(rf, 0.5, 4) == 16.0

    def test_expression_input(self):
        assert cd("x^2", 0.5, 4) == 16.0
        assert dcd(parse("x^2"), 1, 3) == 6.0

    @pytest.mark.parametrize("op", [cd, chen])
    @pytest.mark.parametrize("x", [0.0, -1.0])
    def test_x_domain(self, op, x):
        with pytest.raises(DomainError):
            op(square, 0.5, x)

    def test_dcd_negative_value(self):
        with pytest.raises(DomainError):
            dcd(lambda x: -1.0 - x, 0.5, 1.0)
        # an integer exponent is fine for negative f
        assert dcd(lambda x: -x, 2.0, 3.0) == pytest.approx(3.0, rel=1e-10)

    def test_non_finite_function(self):
        with pytest.raises(NumericsError):
            cd(lambda x: math.inf, 0.5, 1.0)


class TestLimitEvaluators:
    def test_cd_limit_classical(self):
        assert cd_limit(square, 1, 3) == pytest.approx(6, abs=1e-6)

    def test_cd_limit_half_order(self):
        assert cd_limit(square, 0.5, 4) == pytest.approx(16, rel=1e-4)

    def test_dcd_limit_examples(self):
        assert dcd_limit(square, 1, 3) == pytest.approx(6, abs=1e-6)
        assert dcd_limit(lambda x: 1 + x, 2, 3) == pytest.approx(4, rel=1e-4)

    @pytest.mark.parametrize("op", [cd_limit, dcd_limit])
    @pytest.mark.parametrize("alpha, x", [(0.3, 0.7), (1.0, 2.0), (1.6, 5.0)])
    def test_constants(self, op, alpha, x):
        assert op(lambda t: 2.5, alpha, x) == 0.0

    @pytest.mark.parametrize("alpha", [0.3, 0.5, 1.0, 1.5])
    @pytest.mark.parametrize("f, df", SMOOTH)
    def test_agree_with_closed_forms(self, f, df, alpha):
        for x in (0.5, 1.7, 3.0):
            assert cd_limit(f, alpha, x) == pytest.approx(cd(f, alpha, x), rel=1e-4)
            assert dcd_limit(f, alpha, x) == pytest.approx(dcd(f, alpha, x), rel=1e-4)
            assert chen_limit(f, alpha, x) == pytest.approx(chen(f, alpha, x), rel=1e-4)

    def test_divergence_detected(self):
        # a kink at x = 1: the one-sided quotients never settle towards a smooth limit
        f = lambda x: abs(x - 1.0) ** 0.5  # noqa: E731
        with pytest.raises(ConvergenceError):
            cd_limit(f, 1.0, 1.0)

    def test_schedule_validation(self):
        with pytest.raises(ValueError):
            LimitSchedule(eps0=0)
        with pytest.raises(ValueError):
            LimitSchedule(levels=1)
        with pytest.raises(ValueError):
            LimitSchedule(shrink=1.0)

    def test_custom_schedule(self):
        s = LimitSchedule(eps0=1e-1, levels=6, shrink=0.5)
        assert cd_limit(math.exp, 0.7, 1.2, s) == pytest.approx(cd(math.exp, 0.7, 1.2), rel=1e-8)


class TestQuadrature:
    @pytest.mark.parametrize(
        "f, a, b",
        [(math.sin, 0.0, math.pi), (math.exp, -1.0, 2.0), (lambda x: 1 / (1 + x * x), 0.0, 10.0), (math.sqrt, 0.0, 1.0)],
    )
    def test_against_scipy(self, f, a, b):
        ref, _ = integrate.quad(f, a, b, epsabs=1e-13, epsrel=1e-13)
        assert adaptive_simpson(f, a, b) == pytest.approx(ref, rel=1e-8, abs=1e-10)

    def test_reversed_limits(self):
        assert adaptive_simpson(math.exp, 1.0, 0.0) == pytest.approx(-(math.e - 1), rel=1e-10)

    def test_budget(self):
        with pytest.raises(QuadratureError):
            adaptive_simpson(lambda x: math.sin(1 / x), 1e-4, 1.0, abs_tol=1e-14, rel_tol=1e-14, max_intervals=64)


class TestIntegrals:
    def test_cd_integral_singular_weight(self):
        # b^alpha / alpha
        assert cd_integral(lambda x: 1.0, 0.5, 0, 4) == pytest.approx(4.0, rel=1e-12)

    def test_cd_integral_classical(self):
        assert cd_integral(lambda x: x, 1, 0, 2) == pytest.approx(2.0, rel=1e-12)

    @pytest.mark.parametrize("alpha", [0.3, 0.5, 1.5, 2.5])
    @pytest.mark.parametrize("a, b", [(0.0, 2.0), (0.5, 3.0)])
    def test_cd_integral_against_scipy(self, alpha, a, b):
        f = lambda x: math.cos(x) + 2  # noqa: E731
        ref, _ = integrate.quad(lambda x: f(x) * x ** (alpha - 1), a, b, epsabs=1e-13, epsrel=1e-12, limit=200)
        assert cd_integral(f, alpha, a, b) == pytest.approx(ref, rel=1e-8)

    def test_cd_integral_negative_bound(self):
        with pytest.raises(DomainError):
            cd_integral(lambda x: 1.0, 0.5, -1, 1)

    @pytest.mark.parametrize("alpha", [0.5, 1.0, 1.5])
    @pytest.mark.parametrize("f", [lambda x: 1.0, lambda x: x, lambda x: math.sin(x) + 2])
    def test_conformable_ftc(self, f, alpha):
        for x in np.linspace(0.6, 3.5, 7):
            got = cd(lambda t: cd_integral(f, alpha, 0.5, t), alpha, x)
            assert got == pytest.approx(f(x), rel=1e-6)

    def test_dcd_integral_paper_examples(self):
        assert dcd_integral_paper(lambda x: x, 1, 0, 2) == pytest.approx(2.0, rel=1e-14)
        assert dcd_integral_paper(lambda x: x, 0, 1, 2) == pytest.approx(7 / 3, rel=1e-14)
        assert dcd_integral_paper(lambda x: 4.0, 1, 0, 1) == pytest.approx(4.0, rel=1e-14)

    def test_dcd_integral_paper_negative_integrand(self):
        with pytest.raises(DomainError):
            dcd_integral_paper(lambda x: x - 1.5, 0.5, 1, 2)

    def test_strict_antiderivative_closed_form(self):
        # H^-0.5 H' = 1 with H(0) = 0 gives H = x^2 / 4
        for x in (0.5, 1.0, 3.0):
            H = dcd_antiderivative_strict(lambda s: 1.0, 0.5, 0.0, 0.0, x)
            assert H == pytest.approx(x * x / 4, rel=1e-12)
        H = lambda t: dcd_antiderivative_strict(lambda s: 1.0, 0.5, 0.0, 0.0, t)  # noqa: E731
        assert dcd(H, 0.5, 2.0) == pytest.approx(1.0, rel=1e-8)

    def test_strict_antiderivative_classical(self):
        H = dcd_antiderivative_strict(math.cos, 1.0, 0.0, 2.0, 1.0)
        assert H == pytest.approx(2.0 + math.sin(1.0), rel=1e-10)

    @pytest.mark.parametrize("alpha, lam", [(0.5, 1.0), (1.5, 2.0), (0.8, -1.0)])
    def test_strict_antiderivative_reproduces_eigenfunction(self, alpha, lam):
        f = lambda s: lam * dcd_eigenfunction(alpha, lam, s)  # noqa: E731
        for x in (0.2, 0.6, 0.9):
            H = dcd_antiderivative_strict(f, alpha, 0.0, 1.0, x)
            assert H == pytest.approx(dcd_eigenfunction(alpha, lam, x), rel=1e-8)

    def test_strict_antiderivative_leaves_branch(self):
        with pytest.raises(DomainError):
            dcd_antiderivative_strict(lambda s: -1.0, 0.5, 0.0, 1.0, 5.0)

    @pytest.mark.parametrize("alpha", [0.5, 1.0, 1.5])
    @pytest.mark.parametrize("f", [lambda x: 1.0, lambda x: x, lambda x: math.sin(x) + 2])
    def test_strict_ftc(self, f, alpha):
        for x in np.linspace(0.6, 3.5, 7):
            H = lambda t: dcd_antiderivative_strict(f, alpha, 0.5, 1.0, t)  # noqa: E731
            assert dcd(H, alpha, x) == pytest.approx(f(x), rel=1e-6)


@pytest.mark.parametrize("op", [cd, dcd, chen, cd_limit, dcd_limit, chen_limit])
def test_scalar_results_are_python_floats(op):
    assert type(op(square, 0.5, np.float64(2.0))) is float


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.floats(-3, 3), min_size=4, max_size=4),
    st.floats(-2, 2),
    st.floats(0.01, 3),
)
def test_simpson_exact_on_cubics(coefs, a, width):
    c0, c1, c2, c3 = coefs
    b = a + width
    F = lambda x: c0 * x + c1 * x**2 / 2 + c2 * x**3 / 3 + c3 * x**4 / 4  # noqa: E731
    got = adaptive_simpson(lambda x: c0 + c1 * x + c2 * x * x + c3 * x**3, a, b)
    assert got == pytest.approx(F(b) - F(a), rel=1e-12, abs=1e-12)
