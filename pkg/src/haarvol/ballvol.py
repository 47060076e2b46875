"""Haar volume of a Frobenius-norm ball around the identity in ``U(n)``.

With eigenangles ``theta_j`` of a Haar unitary ``U``,
``||U - 1||_F^2 = 4 sum sin^2(theta_j / 2) = 2n - 2 sum cos theta_j``. The
ball ``||U - 1||_F <= eps`` is therefore the event ``Y >= c`` for
``Y = sum_j cos(theta_j) / 2`` and ``c = n/2 - eps^2/4``. The characteristic
function of ``Y`` is the Toeplitz determinant
``D_n(s) = det[J_{i-j}(s/2)]`` (Heine / Andreief), and Gil-Pelaez inversion
gives

.. math::

    \\operatorname{vol}(B_\\varepsilon)
    = \\frac12 - \\frac1\\pi \\int_0^\\infty \\frac{\\sin(cs)}{s} D_n(s)\\, ds .

The integral converges only like an alternating series, slowly when ``c`` is
close to one of the points ``n/2 - m`` where the law of ``Y`` has
singularities. Partial integrals over ``[0, m pi]`` are accelerated with
Wynn's epsilon algorithm and the Levin u-transform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError
from .linalg import determinant
from .special import BESSEL_X_MAX, bessel_j_orders

__all__ = [
    "BallQuery",
    "BallVolumeResult",
    "bessel_toeplitz_det",
    "ball_volume_integrand",
    "ball_volume",
    "ball_volume_quadrature",
    "ball_volume_exact_n1",
]

S_MAX = 2.0 * BESSEL_X_MAX
GL_NODES = 16
WYNN_WINDOW = 21
LEVIN_WINDOW = 12
MIN_INTERVALS = 34
SLOW_PERIODS = 3
CHUNK_INTERVALS = 32
_FIRST_EXTRAPOLATION = 2 * LEVIN_WINDOW - 1

_GL_X, _GL_W = np.polynomial.legendre.leggauss(GL_NODES)


@dataclass(frozen=True)
class BallQuery:
    """Request for ``vol(B_eps)`` in ``U(n)``.

    Attributes
    ----------
    n : int
        Group dimension, ``n >= 1``.
    eps : float
        Frobenius radius in ``[0, 2 sqrt(n)]``.
    rel_tol : float
        Target error of the returned probability. Since the value lies in
        ``[0, 1]`` this is applied as an absolute tolerance.
    s_max_cap : float
        Largest integration limit tried before giving up.
    """

    n: int
    eps: float
    rel_tol: float = 1e-6
    s_max_cap: float = 400.0

    def __post_init__(self):
        if isinstance(self.n, bool) or int(self.n) != self.n or int(self.n) < 1:
            raise DomainError(f"n must be a positive integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        eps = float(self.eps)
        if not math.isfinite(eps) or eps < 0 or eps > 2 * math.sqrt(self.n) * (1 + 1e-15):
            raise DomainError(f"eps must lie in [0, 2 sqrt(n)] = [0, {2 * math.sqrt(self.n):.6g}], got {self.eps!r}")
        object.__setattr__(self, "eps", min(eps, 2 * math.sqrt(self.n)))
        if not self.rel_tol > 0:
            raise DomainError("rel_tol must be > 0")
        if not 0 < self.s_max_cap <= S_MAX:
            raise DomainError(f"s_max_cap must lie in (0, {S_MAX:g}]")

    @property
    def threshold(self) -> float:
        """``c = n/2 - eps^2/4``; the ball is ``sum cos(theta_j)/2 >= c``."""
        return self.n / 2 - self.eps**2 / 4


@dataclass(frozen=True)
class BallVolumeResult:
    """Integral value, error estimate, final limit ``s`` and the method used
    (``"wynn"``, ``"levin-u"`` or ``"exact"`` at the endpoints)."""

    value: float
    error_estimate: float
    s_final: float
    accelerator: str


def bessel_toeplitz_det(n: int, s):
    """``det[J_{i-j}(s/2)]_{i,j=1..n}``, for scalar or array ``s`` with ``|s| <= 500``.

    Equal to ``E exp(i s Y)`` for ``Y = sum cos(theta_j)/2`` under Haar measure.
    """
    if isinstance(n, bool) or int(n) != n or int(n) < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    n = int(n)
    s = np.asarray(s, dtype=float)
    if not np.all(np.isfinite(s)) or np.any(np.abs(s) > S_MAX):
        raise DomainError(f"bessel_toeplitz_det requires finite |s| <= {S_MAX:g}")
    j = bessel_j_orders(n - 1, s / 2.0)
    k = np.arange(n)
    diff = k[:, None] - k[None, :]
    sign = np.where((diff < 0) & (diff % 2 == 1), -1.0, 1.0)
    # J_{-k} = (-1)^k J_k
    a = np.moveaxis(j[np.abs(diff)], (0, 1), (-2, -1)) * sign
    d = determinant(a)
    return float(d) if np.ndim(d) == 0 else d


def ball_volume_integrand(n: int, eps: float, s):
    """``[sin(ns/2) + sin((eps^2/4 - n/2) s)] / s * D_n(s)``.

    Its integral over ``(0, inf)`` divided by ``pi`` is ``vol(B_eps)``. The value
    at ``s = 0`` is the limit ``eps^2 / 4``.
    """
    q = BallQuery(n, eps)
    s = np.asarray(s, dtype=float)
    b = q.eps**2 / 4 - q.n / 2
    tiny = np.abs(s) < 1e-8
    safe = np.where(tiny, 1.0, s)
    f = (np.sin(q.n * safe / 2) + np.sin(b * safe)) / safe * bessel_toeplitz_det(q.n, safe)
    f = np.where(tiny, q.eps**2 / 4, f)
    return float(f) if f.ndim == 0 else f


def ball_volume_exact_n1(eps: float) -> float:
    """Closed form for ``U(1)``: ``(2/pi) arcsin(eps/2)``."""
    eps = float(eps)
    if not 0 <= eps <= 2:
        raise DomainError("eps must lie in [0, 2] for n = 1")
    return 2 / math.pi * math.asin(eps / 2)


def _wynn(seq):
    # epsilon algorithm; last entry of the highest even column that stayed finite
    col_prev = [0.0] * len(seq)
    col = [float(x) for x in seq]
    best = col[-1]
    k = 0
    while len(col) > 1:
        new = []
        for i in range(len(col) - 1):
            d = col[i + 1] - col[i]
            if d == 0 or not math.isfinite(d):
                return best
            new.append(col_prev[i + 1] + 1.0 / d)
        col_prev, col = col, new
        k += 1
        if k % 2 == 0 and math.isfinite(col[-1]):
            best = col[-1]
    return best


def _levin_u(seq, beta=1.0):
    terms = np.diff(np.concatenate([[0.0], seq]))
    k = len(seq) - 1
    num = den = 0.0
    for j in range(k + 1):
        if terms[j] == 0:
            return float(seq[-1])
        w = (-1) ** j * math.comb(k, j) * ((beta + j) / (beta + k)) ** (k - 1)
        omega = (beta + j) * terms[j]
        num += w * seq[j] / omega
        den += w / omega
    return num / den


def _beat_gap(q, slow_only):
    # Y has singular points n/2 - m. Near one, D_n carries a component
    # exp(i s (n/2 - m)) decaying like s^(-(m^2 + (n-m)^2)/2) (stationary
    # phase with m angles at pi and n - m at 0), which beats against sin(cs)
    # at frequency |c - (n/2 - m)|. Returns the smallest nonzero beat
    # frequency, over the components decaying no faster than 1/s if
    # slow_only is set.
    c = q.threshold
    gaps = [
        abs(c - (q.n / 2 - m))
        for m in range(q.n + 1)
        if not slow_only or (m * m + (q.n - m) ** 2) / 2 <= 1
    ]
    gaps = [g for g in gaps if g > 1e-9]
    return min(gaps) if gaps else math.inf


def _interval_sums(q, start, count, per_interval):
    # integral of sin(cs) D_n(s) / s over [m pi, (m+1) pi] for m = start..start+count-1
    c = q.threshold
    h = math.pi / per_interval
    left = (start * per_interval + np.arange(count * per_interval)) * h
    s = left[:, None] + 0.5 * h * (_GL_X[None, :] + 1.0)
    f = np.sin(c * s) / s * bessel_toeplitz_det(q.n, s.ravel()).reshape(s.shape)
    panels = 0.5 * h * (f @ _GL_W)
    return panels.reshape(count, per_interval).sum(axis=1)


def ball_volume(q: BallQuery) -> BallVolumeResult:
    """Evaluate ``vol(B_eps)`` by oscillatory quadrature with series acceleration.

    Gauss-Legendre panels (16 nodes) of width at most
    ``min(pi / (2 max(n/2, |c|, 1)), 1)`` are summed per interval of length
    ``pi``. After every interval the partial values ``P_m`` are extrapolated by
    Wynn's epsilon algorithm (last 21 values) and by the Levin u-transform
    (last 12 values at spacing ``2 pi``). Each method's error is estimated
    from the spread of its last three extrapolants and the method with the
    smaller spread is used. The error estimate is then widened to the change
    since the estimate at ``3/4`` of the current length. The iteration stops
    once the estimate is below ``q.rel_tol`` and ``s`` has covered at least
    three beat periods of any slowly decaying singular component.

    Returns
    -------
    BallVolumeResult
        Unclamped value with its error estimate.

    Raises
    ------
    ConvergenceError
        If the criterion is not met by ``q.s_max_cap``. The exception carries
        the current extrapolated value and its error estimate.
    """
    # both endpoints are exact: a null set and the whole group
    if q.eps == 0:
        return BallVolumeResult(0.0, 0.0, 0.0, "exact")
    if q.eps == 2 * math.sqrt(q.n):
        return BallVolumeResult(1.0, 0.0, 0.0, "exact")
    c = q.threshold
    width = min(math.pi / (2 * max(q.n / 2, abs(c), 1.0)), 1.0)
    per_interval = max(1, math.ceil(math.pi / width - 1e-12))
    beat = 2 * math.pi * SLOW_PERIODS
    s_min = max(MIN_INTERVALS * math.pi, beat / _beat_gap(q, slow_only=True))
    s_levin_alone = beat / _beat_gap(q, slow_only=False)
    n_intervals = int(q.s_max_cap // math.pi)

    partial = []
    acc = []
    wynn_hist, levin_hist = [], []
    best = {}
    value = err = math.nan
    accel = "wynn"
    m = 0
    while m < n_intervals:
        count = min(CHUNK_INTERVALS, n_intervals - m)
        for piece in _interval_sums(q, m, count, per_interval):
            acc.append(piece)
            partial.append(0.5 - math.fsum(acc) / math.pi)
            m += 1
            if m < _FIRST_EXTRAPOLATION:
                continue
            wynn_hist.append(_wynn(partial[-WYNN_WINDOW:]))
            levin_hist.append(_levin_u(np.array(partial[::-2][:LEVIN_WINDOW][::-1])))
            if len(wynn_hist) < 3:
                continue
            ew = max(abs(wynn_hist[-1] - wynn_hist[-2]), abs(wynn_hist[-1] - wynn_hist[-3]))
            el = max(abs(levin_hist[-1] - levin_hist[-2]), abs(levin_hist[-1] - levin_hist[-3]))
            if m * math.pi < s_levin_alone:
                # with a beat still unresolved Levin-u can sit on a stable but
                # wrong plateau; trust it only as far as Wynn corroborates it
                el = max(el, abs(wynn_hist[-1] - levin_hist[-1]))
            if ew <= el:
                value, err, accel = wynn_hist[-1], ew, "wynn"
            else:
                value, err, accel = levin_hist[-1], el, "levin-u"
            best[m] = value
            if m < MIN_INTERVALS:
                continue
            # drift against the estimate at 3/4 of the current length exposes
            # slowly decaying, non-alternating tails the local spread misses
            err = max(err, abs(value - best[(3 * m) // 4]))
            if err < q.rel_tol and m * math.pi >= s_min:
                return BallVolumeResult(float(value), float(err), m * math.pi, accel)
    raise ConvergenceError(
        f"ball volume (n={q.n}, eps={q.eps:.6g}) not converged to {q.rel_tol:g} "
        f"by s = {q.s_max_cap:g}",
        partial_value=None if math.isnan(value) else float(value),
        error_bound=None if math.isnan(err) else float(err),
    )


def ball_volume_quadrature(q: BallQuery) -> float:
    """Converged ``vol(B_eps)`` clamped to ``[0, 1]``. See :func:`ball_volume`."""
    return min(1.0, max(0.0, ball_volume(q).value))
