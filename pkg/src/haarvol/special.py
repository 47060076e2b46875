"""Scalar special functions: log-gamma, multivariate gammas, Bessel J.

Every quantity that is a product or ratio of gamma functions is returned as a
:class:`LogValue` so that values such as ``Gamma(n**2)`` never overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "LogValue",
    "log_gamma",
    "gamma_product",
    "multivariate_gamma_real",
    "multivariate_gamma_complex",
    "bessel_j",
    "bessel_j_orders",
    "BESSEL_X_MAX",
]

LINEAR_LOG_LIMIT = 700.0

# Lanczos approximation, g = 7, nine coefficients.
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)

BESSEL_X_MAX = 250.0
_BESSEL_SERIES_MAX = 14.0
_RESCALE_AT = 1e250


@dataclass(frozen=True)
class LogValue:
    """A real number stored as ``sign * exp(log)``.

    ``sign == 0`` marks an exact zero and ``log`` is then ignored.
    """

    log: float
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0 or 1, got {self.sign!r}")

    @classmethod
    def from_value(cls, x: float) -> "LogValue":
        if x == 0:
            return cls(-math.inf, 0)
        return cls(math.log(abs(x)), 1 if x > 0 else -1)

    @classmethod
    def one(cls) -> "LogValue":
        return cls(0.0, 1)

    def __mul__(self, other):
        if not isinstance(other, LogValue):
            other = LogValue.from_value(other)
        if self.sign == 0 or other.sign == 0:
            return LogValue(-math.inf, 0)
        return LogValue(self.log + other.log, self.sign * other.sign)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, LogValue):
            other = LogValue.from_value(other)
        if other.sign == 0:
            raise ZeroDivisionError("division by a zero LogValue")
        if self.sign == 0:
            return self
        return LogValue(self.log - other.log, self.sign * other.sign)

    def __rtruediv__(self, other):
        return LogValue.from_value(other) / self

    def __pow__(self, p: float):
        if self.sign == 0:
            return self
        if self.sign < 0 and p != int(p):
            raise DomainError("non-integer power of a negative LogValue")
        sign = 1 if self.sign > 0 or int(p) % 2 == 0 else -1
        return LogValue(self.log * p, sign)

    def linear(self) -> float:
        """Return the value as a float; raises ``OverflowError`` past exp(700)."""
        if self.sign == 0:
            return 0.0
        if self.log > LINEAR_LOG_LIMIT:
            raise OverflowError(f"exp({self.log:.6g}) exceeds the linear-domain limit")
        return self.sign * math.exp(self.log)

    def __float__(self):
        return self.linear()

    def isclose(self, other: "LogValue", tol: float = 1e-12) -> bool:
        """Same sign and logs within ``tol`` (a relative tolerance on the value)."""
        if self.sign != other.sign:
            return False
        return self.sign == 0 or abs(self.log - other.log) <= tol

    def as_dict(self) -> dict:
        try:
            linear = self.linear()
        except OverflowError:
            linear = None
        return {"log": self.log, "sign": self.sign, "linear": linear}


def log_gamma(x: float) -> float:
    """Natural log of the gamma function for ``x > 0``.

    Lanczos approximation (g = 7, 9 terms); arguments below 1/2 are shifted up
    with ``Gamma(x) = Gamma(x + 1) / x``.
    """
    x = float(x)
    if not x > 0 or not math.isfinite(x):
        raise DomainError(f"log_gamma requires a finite x > 0, got {x!r}")
    if x < 0.5:
        return log_gamma(x + 1.0) - math.log(x)
    z = x - 1.0
    acc = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * math.log(t) - t + math.log(acc)


def gamma_product(numer=(), denom=()) -> LogValue:
    """``prod Gamma(numer) / prod Gamma(denom)`` as a LogValue."""
    log = math.fsum(log_gamma(a) for a in numer) - math.fsum(log_gamma(b) for b in denom)
    return LogValue(log, 1)


def multivariate_gamma_real(p: int, alpha: float) -> LogValue:
    r"""Real matrix-variate gamma :math:`\Gamma_p(\alpha)`.

    .. math:: \Gamma_p(\alpha) = \pi^{p(p-1)/4} \prod_{j=0}^{p-1} \Gamma(\alpha - j/2)

    Defined for ``alpha > (p - 1) / 2``.
    """
    if p < 1:
        raise DomainError("p must be >= 1")
    if not alpha > (p - 1) / 2:
        raise DomainError(f"Gamma_{p}(alpha) requires alpha > {(p - 1) / 2}, got {alpha}")
    g = gamma_product([alpha - j / 2 for j in range(p)])
    return LogValue(g.log + p * (p - 1) / 4 * math.log(math.pi))


def multivariate_gamma_complex(n: int, alpha: float) -> LogValue:
    r"""Complex matrix-variate gamma :math:`\tilde\Gamma_n(\alpha)`.

    .. math:: \tilde\Gamma_n(\alpha) = \pi^{n(n-1)/2} \prod_{j=0}^{n-1} \Gamma(\alpha - j)

    Defined for ``alpha > n - 1``.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    if not alpha > n - 1:
        raise DomainError(f"complex Gamma_{n}(alpha) requires alpha > {n - 1}, got {alpha}")
    g = gamma_product([alpha - j for j in range(n)])
    return LogValue(g.log + n * (n - 1) / 2 * math.log(math.pi))


def _bessel_series(kmax, x):
    # ascending series for every order 0..kmax; x >= 0, array
    h = x / 2.0
    h2 = h * h
    hmax = float(np.max(h)) if h.size else 0.0
    out = np.empty((kmax + 1,) + x.shape)
    lead = np.ones_like(x)
    for k in range(kmax + 1):
        if k > 0:
            lead = lead * h / k
        term = lead.copy()
        total = term.copy()
        j = 0
        while True:
            j += 1
            term = -term * h2 / (j * (j + k))
            total += term
            if j > hmax and np.all(np.abs(term) <= 1e-17 * np.abs(total) + 1e-300):
                break
        out[k] = total
    return out


def _bessel_miller(kmax, x):
    # downward recurrence normalized by J_0 + 2 sum J_{2k} = 1; x > 0, array
    xmax = float(np.max(x))
    start = kmax + 20 + math.ceil(xmax) + math.ceil(math.sqrt(40.0 * (xmax + kmax)))
    start += start % 2
    out = np.zeros((kmax + 1,) + x.shape)
    b_next = np.zeros_like(x)
    b = np.full_like(x, 1e-30)
    norm = np.zeros_like(x)
    two_over_x = 2.0 / x
    for m in range(start, 0, -1):
        b_prev = m * two_over_x * b - b_next
        b_next, b = b, b_prev
        # b now holds the unnormalized J_{m-1}
        if (m - 1) % 2 == 0 and m - 1 > 0:
            norm += 2.0 * b
        if m - 1 <= kmax:
            out[m - 1] = b
        big = np.abs(b) > _RESCALE_AT
        if np.any(big):
            scale = np.where(big, 1.0 / _RESCALE_AT, 1.0)
            b *= scale
            b_next *= scale
            norm *= scale
            out *= scale
    norm += b
    return out / norm


def bessel_j_orders(kmax: int, x) -> np.ndarray:
    """Bessel functions ``J_0 .. J_kmax`` at every point of ``x``.

    Returns an array of shape ``(kmax + 1,) + np.shape(x)``. Uses the ascending
    series for ``|x| <= 14`` and Miller's downward recurrence beyond.
    """
    if kmax < 0:
        raise DomainError("kmax must be >= 0")
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)) or np.any(np.abs(x) > BESSEL_X_MAX):
        raise DomainError(f"bessel_j requires finite |x| <= {BESSEL_X_MAX}")
    ax = np.abs(x)
    out = np.empty((kmax + 1,) + x.shape)
    small = ax <= _BESSEL_SERIES_MAX
    if np.any(small):
        out[:, small] = _bessel_series(kmax, ax[small])
    if np.any(~small):
        out[:, ~small] = _bessel_miller(kmax, ax[~small])
    if np.any(x < 0):
        # J_k(-x) = (-1)^k J_k(x)
        out[1::2] *= np.where(x < 0, -1.0, 1.0)
    return out


def bessel_j(k: int, x: float) -> float:
    r"""Bessel function of the first kind for integer order ``k >= 0``.

    .. math:: J_k(x) = \sum_{j \ge 0} \frac{(-1)^j}{j!\,\Gamma(j + k + 1)} (x/2)^{2j + k}

    Negative orders follow from :math:`J_{-k} = (-1)^k J_k`.
    """
    if k < 0:
        raise DomainError("order must be >= 0; use J_{-k} = (-1)^k J_k")
    return float(bessel_j_orders(k, x)[k])
