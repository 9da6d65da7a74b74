import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from deformcalc import DeformParam, DomainError, SupportError, csub, dcd_eigenfunction, qexp, qln, stretched_exp


class TestDeformParam:
    def test_q_is_two_minus_alpha(self):
        assert DeformParam(0.3).q() == 2 - 0.3
        assert DeformParam.from_q(1.5).alpha == 0.5

    @pytest.mark.parametrize("alpha, classical", [(1.0, True), (1 + 1e-13, True), (1 - 1e-12, True), (1 + 1e-11, False), (0.5, False)])
    def test_classical_threshold(self, alpha, classical):
        assert DeformParam(alpha).is_classical() is classical

    @pytest.mark.parametrize("alpha", [0.0, -1.0, math.inf, math.nan])
    def test_rejects_invalid_orders(self, alpha):
        with pytest.raises(DomainError):
            DeformParam(alpha)


class TestConformableSubtraction:
    def test_classical_is_ordinary_subtraction(self):
        assert csub(5, 4, 1.0) == 1

    def test_half_order(self):
        # (5 - 4) / 4^0.5
        assert csub(5, 4, 0.5) == pytest.approx(0.5, rel=1e-15)

    @pytest.mark.parametrize("alpha", [0.2, 0.7, 1.3])
    def test_unit_weight_at_x_equal_one(self, alpha):
        assert csub(3.25, 1.0, alpha) == 2.25

    @pytest.mark.parametrize("x", [0.0, -2.0])
    def test_nonpositive_x(self, x):
        with pytest.raises(DomainError):
            csub(1.0, x, 0.5)

    @given(st.floats(-1e6, 1e6), st.floats(1e-3, 1e3))
    def test_alpha_one_exact(self, y, x):
        assert csub(y, x, 1.0) == y - x

    def test_vectorised(self):
        r = csub(np.array([2.0, 5.0]), np.array([1.0, 4.0]), 0.5)
        np.testing.assert_allclose(r, [1.0, 0.5])


class TestQExponential:
    def test_classical_limit(self):
        assert qexp(1, 1) == math.e

    def test_q_zero_is_linear(self):
        assert qexp(0, 3) == 4

    def test_q_two(self):
        # (1 - x)^-1 at x = 1/2
        assert qexp(2, 0.5) == pytest.approx(2.0, rel=1e-15)

    @pytest.mark.parametrize("q", [-1.0, 0.0, 0.5, 1.0, 1.0 + 1e-9, 2.0, 3.0])
    def test_value_one_at_origin(self, q):
        assert qexp(q, 0.0) == 1.0

    @pytest.mark.parametrize("q, x", [(2.0, 1.0), (2.0, 1.5), (0.0, -1.0), (0.5, -3.0)])
    def test_outside_support(self, q, x):
        with pytest.raises(SupportError):
            qexp(q, x)

    def test_cutoff_mode(self):
        assert qexp(0.5, -3.0, cutoff=True) == 0.0
        np.testing.assert_array_equal(qexp(0.0, np.array([-2.0, 1.0]), cutoff=True), [0.0, 2.0])

    @settings(max_examples=300)
    @given(st.floats(-5, 5), st.sampled_from([1 - 1e-9, 1 + 1e-9]))
    def test_continuous_at_q_one(self, x, q):
        assert abs(qexp(q, x) - math.exp(x)) <= 1e-6 * math.exp(x)

    def test_matches_closed_form_far_from_one(self):
        # direct evaluation of [1 + (1-q) x]^(1/(1-q))
        for q, x in [(0.3, 1.7), (1.7, 0.9), (-1.0, 0.4), (2.5, -3.0)]:
            assert qexp(q, x) == pytest.approx((1 + (1 - q) * x) ** (1 / (1 - q)), rel=1e-14)


class TestQLogarithm:
    def test_classical(self):
        assert qln(1, math.e) == 1.0

    def test_q_zero(self):
        assert qln(0, 4) == 3

    def test_q_two(self):
        assert qln(2, 2) == pytest.approx(0.5, rel=1e-15)

    def test_nonpositive(self):
        with pytest.raises(DomainError):
            qln(0.5, 0.0)

    @settings(max_examples=500)
    @given(st.floats(-1, 3), st.floats(0, 1))
    def test_roundtrip(self, q, t):
        # t parameterises x across the support, staying off its boundary
        if q < 1:
            lo, hi = max(-5.0, -0.99 / (1 - q)), 5.0
        elif q > 1:
            lo, hi = -5.0, min(5.0, 0.99 / (q - 1))
        else:
            lo, hi = -5.0, 5.0
        x = lo + t * (hi - lo)
        assert abs(qln(q, qexp(q, x)) - x) <= 1e-10 * max(abs(x), 1.0)


class TestStretchedExp:
    def test_classical(self):
        assert stretched_exp(1.0, 2.0) == pytest.approx(7.389056098930650, rel=1e-15)

    def test_half_order(self):
        # exp(1 / 0.5)
        assert stretched_exp(0.5, 1.0) == pytest.approx(7.389056098930650, rel=1e-15)

    @pytest.mark.parametrize("alpha", [0.1, 0.5, 1.0, 2.0])
    def test_initial_value(self, alpha):
        assert stretched_exp(alpha, 0.0) == 1.0

    def test_negative_x(self):
        with pytest.raises(DomainError):
            stretched_exp(0.5, -1.0)

    def test_overflow(self):
        with pytest.raises(OverflowError):
            stretched_exp(1.0, 1000.0)


class TestDcdEigenfunction:
    def test_alpha_two_linear(self):
        assert dcd_eigenfunction(2.0, 1.0, 3.0) == 4.0

    def test_classical(self):
        assert dcd_eigenfunction(1.0, 2.0, 1.0) == pytest.approx(math.exp(2.0), rel=1e-15)

    def test_half_order(self):
        # (1 - 0.5 * 1)^-2
        assert dcd_eigenfunction(0.5, 1.0, 1.0) == pytest.approx(4.0, rel=1e-14)

    def test_singular_point(self):
        # x* = 1 / ((1 - alpha) lambda) = 2
        with pytest.raises(SupportError):
            dcd_eigenfunction(0.5, 1.0, 2.0)
        with pytest.raises(SupportError):
            dcd_eigenfunction(0.5, 1.0, 3.0)
        assert dcd_eigenfunction(0.5, 1.0, 1.999) > 0

    @given(st.floats(0.1, 1.9), st.floats(-2, 2), st.floats(0, 0.9))
    def test_is_reparametrised_qexp(self, alpha, lam, t):
        x = t * min(3.0, 1 / ((1 - alpha) * lam)) if (1 - alpha) * lam > 0 else 3 * t
        assert dcd_eigenfunction(alpha, lam, x) == qexp(2 - alpha, lam * x)
