import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import special as sp

from haarvol.errors import DomainError
from haarvol.special import (
    BESSEL_X_MAX,
    LogValue,
    bessel_j,
    bessel_j_orders,
    gamma_product,
    log_gamma,
    multivariate_gamma_complex,
    multivariate_gamma_real,
)


@pytest.mark.parametrize(
    "x, expected",
    [(1.0, 0.0), (2.0, 0.0), (0.5, 0.5723649429247001), (6.0, math.log(120.0))],
)
def test_log_gamma_known_values(x, expected):
    assert log_gamma(x) == pytest.approx(expected, abs=1e-13)


@pytest.mark.parametrize("x", [0.0, -1.0, -0.5, math.nan])
def test_log_gamma_rejects_nonpositive(x):
    with pytest.raises(DomainError):
        log_gamma(x)


def test_log_gamma_against_scipy_over_a_wide_range():
    xs = np.concatenate([np.linspace(1e-3, 1, 200), np.linspace(1, 400, 2000)])
    ours = np.array([log_gamma(x) for x in xs])
    ref = sp.gammaln(xs)
    assert np.all(np.abs(ours - ref) <= 2e-13 * np.maximum(1, np.abs(ref)))


def test_log_gamma_recurrence_random_sample():
    rng = np.random.default_rng(11)
    xs = rng.uniform(0.1, 100, 10_000)
    err = [abs(log_gamma(x + 1) - log_gamma(x) - math.log(x)) / max(1.0, abs(log_gamma(x + 1))) for x in xs]
    assert max(err) < 1e-12


@given(st.floats(1.5, 20.0).map(lambda v: round(2 * v) / 2))
def test_duplication_identity(n):
    # sqrt(pi) Gamma(2n-1) = 2^(2n-2) Gamma(n-1/2) Gamma(n)
    lhs = 0.5 * math.log(math.pi) + log_gamma(2 * n - 1)
    rhs = (2 * n - 2) * math.log(2) + log_gamma(n - 0.5) + log_gamma(n)
    assert abs(lhs - rhs) <= 1e-11 * max(1.0, abs(lhs))


class TestLogValue:
    def test_from_value_roundtrip(self):
        for x in (3.5, -2.0, 1e-300, 7e200):
            assert LogValue.from_value(x).linear() == pytest.approx(x, rel=1e-14)

    def test_zero(self):
        z = LogValue.from_value(0.0)
        assert z.sign == 0 and z.linear() == 0.0
        assert (z * LogValue.from_value(5)).sign == 0
        with pytest.raises(ZeroDivisionError):
            LogValue.one() / z

    def test_arithmetic(self):
        a, b = LogValue.from_value(-3.0), LogValue.from_value(4.0)
        assert (a * b).linear() == pytest.approx(-12.0)
        assert (a / b).linear() == pytest.approx(-0.75)
        assert (a**2).linear() == pytest.approx(9.0)
        assert (2 * b).linear() == pytest.approx(8.0)
        assert (1 / b).linear() == pytest.approx(0.25)

    def test_fractional_power_of_negative_is_rejected(self):
        with pytest.raises(DomainError):
            LogValue.from_value(-2.0) ** 0.5

    def test_linear_overflow_guard(self):
        big = LogValue(701.0)
        with pytest.raises(OverflowError):
            big.linear()
        assert big.as_dict() == {"log": 701.0, "sign": 1, "linear": None}

    def test_bad_sign(self):
        with pytest.raises(ValueError):
            LogValue(0.0, 2)

    def test_isclose(self):
        a = LogValue(1.0)
        assert a.isclose(LogValue(1.0 + 1e-13))
        assert not a.isclose(LogValue(1.0, -1))


def test_gamma_product_factorial_ratio():
    # 10! / (5! 5!) = 252
    assert gamma_product([11], [6, 6]).linear() == pytest.approx(252.0, rel=1e-13)


@pytest.mark.parametrize(
    "p, alpha, expected",
    [(1, 1.0, 1.0), (2, 1.0, math.pi), (2, 1.5, math.pi / 2)],
)
def test_multivariate_gamma_real(p, alpha, expected):
    assert multivariate_gamma_real(p, alpha).linear() == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize(
    "n, alpha, expected",
    [(1, 1.0, 1.0), (2, 2.0, math.pi), (3, 3.0, 2 * math.pi**3)],
)
def test_multivariate_gamma_complex(n, alpha, expected):
    assert multivariate_gamma_complex(n, alpha).linear() == pytest.approx(expected, rel=1e-12)


def test_multivariate_gamma_domain():
    with pytest.raises(DomainError):
        multivariate_gamma_real(3, 1.0)
    with pytest.raises(DomainError):
        multivariate_gamma_complex(3, 2.0)


class TestBessel:
    def test_against_scipy(self):
        x = np.concatenate([np.linspace(0, 14, 141), np.linspace(14.01, 240, 300)])
        table = bessel_j_orders(40, x)
        ref = sp.jv(np.arange(41)[:, None], x[None, :])
        # the ascending series cancels to ~3e-12 near its x = 14 cutoff
        assert np.max(np.abs(table - ref)) < 1e-11

    def test_scalar_and_negative_orders(self):
        assert bessel_j(0, 0.0) == 1.0
        assert bessel_j(3, 0.0) == 0.0
        assert bessel_j(2, -2.5) == pytest.approx(sp.jv(2, 2.5), abs=1e-15)
        with pytest.raises(DomainError):
            bessel_j(-3, 2.5)

    def test_out_of_range(self):
        with pytest.raises(DomainError):
            bessel_j(0, BESSEL_X_MAX * 1.01)

    @given(st.floats(0.1, 50.0))
    def test_three_term_recurrence(self, x):
        j = bessel_j_orders(13, x)
        k = np.arange(1, 13)
        assert np.max(np.abs(j[k - 1] + j[k + 1] - 2 * k / x * j[k])) < 1e-9

    @given(st.floats(0.0, 40.0))
    def test_sum_normalization(self, x):
        j = bessel_j_orders(60, x)
        assert abs(j[0] ** 2 + 2 * np.sum(j[1:] ** 2) - 1) < 1e-8

    def test_first_zero_of_j0(self):
        lo, hi = 2.0, 3.0
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            if bessel_j(0, lo) * bessel_j(0, mid) <= 0:
                hi = mid
            else:
                lo = mid
        assert abs(0.5 * (lo + hi) - 2.4048255577) < 1e-8
