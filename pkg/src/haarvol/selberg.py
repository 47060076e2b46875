"""Selberg's integral and its relatives.

The family shares one integrand, ``prod_j w(x_j) |Delta(x)|^(2 gamma)``,
with different one-body weights ``w``:

* Jacobi, on ``[0, 1]``: ``x^(alpha-1) (1-x)^(beta-1)`` (:func:`selberg_integral`)
* Laguerre, on ``(0, inf)``: ``x^(alpha-1) e^(-x)`` (:func:`laguerre_selberg`)
* Gaussian, on ``R``: ``e^(-lambda x^2)`` (:func:`hermite_selberg`)

plus the fixed-trace simplex integral reached from the Laguerre case by a
Laplace transform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .special import LogValue, gamma_product, log_gamma

__all__ = [
    "SelbergParams",
    "selberg_integral",
    "aomoto_ratio",
    "laguerre_selberg",
    "hermite_selberg",
    "simplex_constant",
    "fixed_trace_from_laguerre",
]


def _positive_int(name, value):
    if isinstance(value, bool) or int(value) != value or int(value) < 1:
        raise DomainError(f"{name} must be a positive integer, got {value!r}")
    return int(value)


def _finite(name, value):
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class SelbergParams:
    """Parameters ``(N, alpha, beta, gamma)`` of the Selberg integral.

    Validated on construction: ``alpha, beta > 0`` and
    ``gamma > -min(1/N, alpha/(N-1), beta/(N-1))`` (no constraint on gamma
    when ``N = 1``).
    """

    N: int
    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        object.__setattr__(self, "N", _positive_int("N", self.N))
        for name in ("alpha", "beta", "gamma"):
            object.__setattr__(self, name, _finite(name, getattr(self, name)))
        if not (self.alpha > 0 and self.beta > 0):
            raise DomainError(f"alpha and beta must be > 0, got {self.alpha}, {self.beta}")
        if self.N > 1:
            bound = min(1.0 / self.N, self.alpha / (self.N - 1), self.beta / (self.N - 1))
            if not self.gamma > -bound:
                raise DomainError(f"gamma must be > {-bound:.6g} for N={self.N}, got {self.gamma}")

    @property
    def in_oracle_scope(self) -> bool:
        """True when brute-force quadrature can validate these parameters."""
        return self.N <= 3 and self.alpha >= 1 and self.beta >= 1 and self.gamma >= 0


def selberg_integral(p: SelbergParams) -> LogValue:
    r"""Closed form of

    .. math::

        S_N(\alpha, \beta, \gamma) = \int_{[0,1]^N}
        \prod_j x_j^{\alpha-1} (1-x_j)^{\beta-1} |\Delta(x)|^{2\gamma} \, dx

    .. math::

        S_N = \prod_{j=0}^{N-1}
        \frac{\Gamma(\alpha+j\gamma)\Gamma(\beta+j\gamma)\Gamma(1+(j+1)\gamma)}
             {\Gamma(\alpha+\beta+(N+j-1)\gamma)\Gamma(1+\gamma)}
    """
    a, b, g, N = p.alpha, p.beta, p.gamma, p.N
    numer, denom = [], []
    for j in range(N):
        numer += [a + j * g, b + j * g, 1 + g + j * g]
        denom += [a + b + g * (N + j - 1), 1 + g]
    return gamma_product(numer, denom)


def aomoto_ratio(p: SelbergParams, K: int) -> LogValue:
    """Moment ``<x_1 ... x_K>`` under the normalized Selberg density.

    ``prod_{j=1}^K (alpha + gamma (N - j)) / (alpha + beta + gamma (2N - j - 1))``.
    At ``K = N`` this is ``S_N(alpha + 1, beta, gamma) / S_N(alpha, beta, gamma)``.
    """
    K = _positive_int("K", K)
    if K > p.N:
        raise DomainError(f"K must satisfy 1 <= K <= N={p.N}, got {K}")
    a, b, g, N = p.alpha, p.beta, p.gamma, p.N
    terms = [
        (a + g * (N - j)) / (a + b + g * (2 * N - j - 1)) for j in range(1, K + 1)
    ]
    sign = 1
    for t in terms:
        if t == 0:
            return LogValue(-math.inf, 0)
        if t < 0:
            sign = -sign
    return LogValue(math.fsum(math.log(abs(t)) for t in terms), sign)


def _check_laguerre(N, alpha, gamma):
    N = _positive_int("N", N)
    alpha = _finite("alpha", alpha)
    gamma = _finite("gamma", gamma)
    if not alpha > 0:
        raise DomainError(f"alpha must be > 0, got {alpha}")
    if not gamma >= 0:
        raise DomainError(f"gamma must be >= 0, got {gamma}")
    return N, alpha, gamma


def laguerre_selberg(N: int, alpha: float, gamma: float) -> LogValue:
    r"""Laguerre-weight Selberg integral over :math:`(0, \infty)^N`.

    .. math::

        \int \prod_j x_j^{\alpha-1} e^{-x_j} |\Delta(x)|^{2\gamma} dx
        = \prod_{j=1}^{N} \frac{\Gamma(\alpha + (j-1)\gamma)\Gamma(1 + j\gamma)}{\Gamma(1+\gamma)}
    """
    N, alpha, gamma = _check_laguerre(N, alpha, gamma)
    numer, denom = [], []
    for j in range(1, N + 1):
        numer += [alpha + gamma * (j - 1), 1 + gamma * j]
        denom.append(1 + gamma)
    return gamma_product(numer, denom)


def hermite_selberg(N: int, gamma: float, lam: float) -> LogValue:
    r"""Gaussian-weight Selberg integral over :math:`\mathbb{R}^N`.

    .. math::

        \int \prod_j e^{-\lambda x_j^2} |\Delta(x)|^{2\gamma} dx
        = (2\pi)^{N/2} (2\lambda)^{-N(\gamma(N-1)+1)/2}
          \prod_{j=1}^N \frac{\Gamma(1 + j\gamma)}{\Gamma(1+\gamma)}
    """
    N = _positive_int("N", N)
    gamma = _finite("gamma", gamma)
    lam = _finite("lambda", lam)
    if not lam > 0:
        raise DomainError(f"lambda must be > 0, got {lam}")
    if not gamma >= 0:
        raise DomainError(f"gamma must be >= 0, got {gamma}")
    g = gamma_product([1 + gamma * j for j in range(1, N + 1)], [1 + gamma] * N)
    log = (
        N / 2 * math.log(2 * math.pi)
        - N * (gamma * (N - 1) + 1) / 2 * math.log(2 * lam)
        + g.log
    )
    return LogValue(log, 1)


def _check_simplex(N, alpha, beta):
    N = _positive_int("N", N)
    alpha = _finite("alpha", alpha)
    beta = _finite("beta", beta)
    if not alpha > 0:
        raise DomainError(f"alpha must be > 0, got {alpha}")
    if not beta >= 0:
        raise DomainError(f"beta must be >= 0, got {beta}")
    return N, alpha, beta


def simplex_constant(N: int, alpha: float, beta: float) -> LogValue:
    r"""Fixed-trace integral ``1 / C^(alpha, beta)_N``.

    .. math::

        \int_{\lambda_j \ge 0} \delta\Big(1 - \sum_j \lambda_j\Big)
        \prod_j \lambda_j^{\alpha-1} |\Delta(\lambda)|^{\beta} d\lambda
        = \frac{1}{\Gamma(\alpha N + \beta N(N-1)/2)}
          \prod_{j=1}^{N} \frac{\Gamma(1 + j\beta/2)\Gamma(\alpha + (j-1)\beta/2)}{\Gamma(1+\beta/2)}

    The integral runs over the full simplex, not one ordering chamber.
    """
    N, alpha, beta = _check_simplex(N, alpha, beta)
    h = beta / 2
    numer, denom = [], [alpha * N + beta * N * (N - 1) / 2]
    for j in range(1, N + 1):
        numer += [1 + j * h, alpha + (j - 1) * h]
        denom.append(1 + h)
    return gamma_product(numer, denom)


def fixed_trace_from_laguerre(N: int, alpha: float, beta: float) -> LogValue:
    """``1 / C^(alpha, beta)_N`` through the Laplace-transform bridge.

    The Laguerre integral with ``gamma = beta / 2`` is the Laplace transform of
    the fixed-trace integral at ``t = 1``; homogeneity of degree
    ``alpha N + beta N (N-1) / 2`` divides it by the corresponding gamma value.
    """
    N, alpha, beta = _check_simplex(N, alpha, beta)
    lag = laguerre_selberg(N, alpha, beta / 2)
    return LogValue(lag.log - log_gamma(alpha * N + beta * N * (N - 1) / 2), 1)
