import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate, special

from haarvol.ballvol import (
    BallQuery,
    BallVolumeResult,
    ball_volume,
    ball_volume_exact_n1,
    ball_volume_integrand,
    ball_volume_quadrature,
    bessel_toeplitz_det,
)
from haarvol.errors import ConvergenceError, DomainError
from haarvol.estimators import mc_ball_volume


def _weyl_n2(eps):
    # independent oracle: integrate the n=2 Weyl density |e^{ia}-e^{ib}|^2 / (8 pi^2)
    # over the region sin^2(a/2) + sin^2(b/2) <= eps^2/4 by nested quad
    r = eps * eps / 4

    def inner(a):
        rest = r - math.sin(a / 2) ** 2
        if rest <= 0:
            return 0.0
        b_max = 2 * math.asin(min(1.0, math.sqrt(rest)))
        f = lambda b: 4 * math.sin((a - b) / 2) ** 2
        return integrate.quad(f, -b_max, b_max, epsabs=1e-13)[0]

    a_max = 2 * math.asin(min(1.0, math.sqrt(r)))
    return integrate.quad(inner, -a_max, a_max, epsabs=1e-12, limit=200)[0] / (8 * math.pi**2)


class TestQuery:
    def test_threshold(self):
        assert BallQuery(3, 1.0).threshold == pytest.approx(1.25)

    @pytest.mark.parametrize("n, eps", [(0, 1.0), (2, -0.1), (2, 3.0), (1.5, 1.0), (2, math.nan)])
    def test_domain(self, n, eps):
        with pytest.raises(DomainError):
            BallQuery(n, eps)

    def test_endpoint_rounding_is_clamped(self):
        assert BallQuery(3, 2 * math.sqrt(3) * (1 + 1e-16)).eps == 2 * math.sqrt(3)


class TestToeplitz:
    def test_examples(self):
        assert bessel_toeplitz_det(1, 3.0) == pytest.approx(special.j0(1.5), abs=1e-15)
        assert bessel_toeplitz_det(4, 0.0) == 1.0
        assert bessel_toeplitz_det(2, 2.0) == pytest.approx(special.j0(1) ** 2 + special.j1(1) ** 2, abs=1e-14)

    @given(st.integers(1, 6), st.floats(0.0, 120.0))
    def test_even(self, n, s):
        assert abs(bessel_toeplitz_det(n, -s) - bessel_toeplitz_det(n, s)) <= 1e-12

    def test_is_a_characteristic_function(self):
        # D_n(s) = E exp(i s sum cos(theta)/2) under Haar measure; check n=2 by quadrature over angles
        s = 3.7
        f = lambda a, b: np.cos(s * (np.cos(a) + np.cos(b)) / 2) * 4 * np.sin((a - b) / 2) ** 2
        val = integrate.dblquad(f, -np.pi, np.pi, -np.pi, np.pi, epsabs=1e-12)[0] / (8 * np.pi**2)
        assert bessel_toeplitz_det(2, s) == pytest.approx(val, abs=1e-10)

    def test_vectorized(self):
        s = np.linspace(0, 50, 7)
        assert np.allclose(bessel_toeplitz_det(3, s), [bessel_toeplitz_det(3, x) for x in s])

    def test_range(self):
        with pytest.raises(DomainError):
            bessel_toeplitz_det(2, 600.0)


def test_integrand_is_finite_at_zero():
    assert ball_volume_integrand(2, 1.2, 0.0) == pytest.approx(1.2**2 / 4)
    assert ball_volume_integrand(2, 1.2, 1e-9) == pytest.approx(1.2**2 / 4, rel=1e-6)


class TestValues:
    @pytest.mark.parametrize("eps, expected", [(math.sqrt(2), 0.5), (1.0, 1 / 3), (0.5, None)])
    def test_n1_law(self, eps, expected):
        exact = ball_volume_exact_n1(eps)
        if expected is not None:
            assert exact == pytest.approx(expected, abs=1e-15)
        assert ball_volume_quadrature(BallQuery(1, eps)) == pytest.approx(exact, abs=1e-6)

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_full_ball(self, n):
        assert abs(ball_volume_quadrature(BallQuery(n, 2 * math.sqrt(n))) - 1) < 1e-3

    @pytest.mark.parametrize("n", [2, 3])
    def test_small_ball(self, n):
        assert ball_volume_quadrature(BallQuery(n, 0.05)) < 1e-3

    @pytest.mark.parametrize("eps", [0.3, 0.9, 1.4142135623730951, 2.4, 2.7])
    def test_n2_against_weyl_quadrature(self, eps):
        assert ball_volume_quadrature(BallQuery(2, eps)) == pytest.approx(_weyl_n2(eps), abs=3e-6)

    def test_result_fields(self):
        r = ball_volume(BallQuery(2, 1.0))
        assert r.accelerator in ("wynn", "levin-u")
        assert 0 <= r.error_estimate < 1e-6
        assert r.s_final <= 400

    @pytest.mark.parametrize("n", [1, 2, 5])
    def test_endpoints_are_exact(self, n):
        assert ball_volume(BallQuery(n, 0.0)) == BallVolumeResult(0.0, 0.0, 0.0, "exact")
        assert ball_volume(BallQuery(n, 2 * math.sqrt(n))).value == 1.0


def _singular_gap(n, eps):
    c = n / 2 - eps * eps / 4
    return min(abs(c - (n / 2 - m)) for m in range(n + 1))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_monotone_in_eps(n):
    grid = np.linspace(0, 2 * math.sqrt(n), 21)[1:]
    values = []
    for eps in grid:
        try:
            values.append(ball_volume_quadrature(BallQuery(n, eps)))
        except ConvergenceError as exc:
            # only allowed right next to a singular point of the law of sum cos(theta)/2
            assert _singular_gap(n, eps) < 0.06
            assert exc.partial_value is not None and exc.error_bound is not None
    assert len(values) >= 16
    assert np.all(np.diff(values) >= -1e-6)


def test_convergence_error_carries_partial_result():
    with pytest.raises(ConvergenceError) as info:
        ball_volume(BallQuery(1, 0.3))
    assert abs(info.value.partial_value - ball_volume_exact_n1(0.3)) < 0.05


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("k", [0.5, 1.0, 1.5])
def test_against_monte_carlo(n, k):
    eps = k * math.sqrt(n)
    q = ball_volume_quadrature(BallQuery(n, eps))
    mc = mc_ball_volume(n, eps, 40_000, 1000 * n + int(10 * k))
    assert abs(q - mc.mean) <= 3 * mc.std_error + 1e-3
