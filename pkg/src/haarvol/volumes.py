"""Closed-form volumes of compact groups, homogeneous spaces and state sets.

Every function returns a :class:`VolumeResult` whose value is a
:class:`~haarvol.special.LogValue`. Where two independent closed forms exist
both are evaluated and checked against each other; a mismatch raises
``AssertionError`` because it can only mean a transcription bug.
"""

from __future__ import annotations

import enum
import math
from typing import NamedTuple

from .errors import DomainError
from .selberg import simplex_constant
from .special import LogValue, gamma_product, log_gamma, multivariate_gamma_complex, multivariate_gamma_real

__all__ = [
    "FormulaId",
    "VolumeResult",
    "sphere_volume",
    "orthogonal_group_volume",
    "unitary_group_volume",
    "unitary_group_volume_hs",
    "stiefel_volume_real",
    "coset_volume_u1n",
    "flag_manifold_volume_hs",
    "density_set_volume",
    "density_set_volume_real",
    "boundary_hyperarea_hs",
    "hyperedge_volume_hs",
]

DUAL_TOL = 1e-12
LOG_PI = math.log(math.pi)
LOG_2 = math.log(2.0)
LOG_2PI = math.log(2.0 * math.pi)


class FormulaId(enum.Enum):
    Sphere = "sphere"
    Orthogonal = "orthogonal"
    Unitary = "unitary"
    UnitaryHS = "unitary-hs"
    StiefelReal = "stiefel"
    CosetU1n = "coset-u1n"
    FlagHS = "flag-hs"
    DensityComplex = "density"
    DensityComplexHS = "density-hs"
    DensityReal = "density-real"
    BoundaryHS = "boundary-hs"
    HyperedgeHS = "hyperedge-hs"


class VolumeResult(NamedTuple):
    value: LogValue
    formula_id: FormulaId
    parameters: tuple

    def as_dict(self) -> dict:
        return {
            "formula_id": self.formula_id.value,
            "parameters": list(self.parameters),
            **self.value.as_dict(),
        }


def _check_int(name, value, low):
    if isinstance(value, bool) or int(value) != value:
        raise DomainError(f"{name} must be an integer, got {value!r}")
    value = int(value)
    if value < low:
        raise DomainError(f"{name} must be >= {low}, got {value}")
    return value


def _agree(a: float, b: float, what: str) -> None:
    # absolute in the log, loosened for logs of size > 1 where
    # the rounding of summed log-gammas grows with magnitude
    tol = DUAL_TOL * max(1.0, abs(a), abs(b))
    if not abs(a - b) <= tol:
        raise AssertionError(f"{what}: dual expressions disagree, log {a!r} vs {b!r}")


def _log_superfactorial(n: int) -> float:
    # log(1! 2! ... (n-1)!) = sum_{k=1}^{n} log Gamma(k)
    return math.fsum(log_gamma(k) for k in range(1, n + 1))


def _result(log, fid, *params):
    return VolumeResult(LogValue(log, 1), fid, tuple(params))


def sphere_volume(d: int) -> VolumeResult:
    """Surface volume of the unit sphere ``S^d`` embedded in ``R^(d+1)``.

    .. math:: \\operatorname{vol}(S^d) = \\frac{2\\pi^{(d+1)/2}}{\\Gamma((d+1)/2)}
    """
    d = _check_int("d", d, 0)
    k = (d + 1) / 2
    return _result(LOG_2 + k * LOG_PI - log_gamma(k), FormulaId.Sphere, d)


def orthogonal_group_volume(n: int) -> VolumeResult:
    """Volume of ``O(n)``: ``2^n pi^(n(n+1)/4) / prod_{k=1}^n Gamma(k/2)``.

    Checked against the product of sphere volumes ``prod_{k=0}^{n-1} vol(S^k)``.
    """
    n = _check_int("n", n, 1)
    log = n * LOG_2 + n * (n + 1) / 4 * LOG_PI - math.fsum(log_gamma(k / 2) for k in range(1, n + 1))
    chain = math.fsum(sphere_volume(k).value.log for k in range(n))
    _agree(log, chain, f"vol(O({n}))")
    return _result(log, FormulaId.Orthogonal, n)


def unitary_group_volume(n: int) -> VolumeResult:
    """Volume of ``U(n)`` in the measure induced by ``dU U*``.

    Evaluated both as ``2^n pi^(n^2) / Gamma~_n(n)`` and as
    ``2^n pi^(n(n+1)/2) / (1! 2! ... (n-1)!)``.
    """
    n = _check_int("n", n, 1)
    log = n * LOG_2 + n * (n + 1) / 2 * LOG_PI - _log_superfactorial(n)
    via_gamma = n * LOG_2 + n * n * LOG_PI - multivariate_gamma_complex(n, n).log
    _agree(log, via_gamma, f"vol(U({n}))")
    return _result(log, FormulaId.Unitary, n)


def unitary_group_volume_hs(n: int) -> VolumeResult:
    """Hilbert-Schmidt volume of ``U(n)``: ``(2 pi)^(n(n+1)/2) / (1! ... (n-1)!)``."""
    n = _check_int("n", n, 1)
    log = n * (n + 1) / 2 * LOG_2PI - _log_superfactorial(n)
    rescaled = unitary_group_volume(n).value.log + n * (n - 1) / 2 * LOG_2
    _agree(log, rescaled, f"vol_HS(U({n}))")
    return _result(log, FormulaId.UnitaryHS, n)


def stiefel_volume_real(p: int, n: int) -> VolumeResult:
    """Volume of the real Stiefel manifold of orthonormal p-frames in ``R^n``.

    .. math:: \\operatorname{vol}(O(p, n)) = \\frac{2^p \\pi^{pn/2}}{\\Gamma_p(n/2)}

    Parameters
    ----------
    p : int
        Number of frame vectors, ``1 <= p <= n``.
    n : int
        Ambient dimension.
    """
    p = _check_int("p", p, 1)
    n = _check_int("n", n, 1)
    if p > n:
        raise DomainError(f"Stiefel manifold needs p <= n, got p={p}, n={n}")
    log = p * LOG_2 + p * n / 2 * LOG_PI - multivariate_gamma_real(p, n / 2).log
    if p == n:
        _agree(log, orthogonal_group_volume(n).value.log, f"vol(O({n},{n}))")
    return _result(log, FormulaId.StiefelReal, n, p)


def coset_volume_u1n(n: int) -> VolumeResult:
    """Volume of ``U(n) / U(1)^n``: ``pi^(n(n-1)/2) / (1! ... (n-1)!)``."""
    n = _check_int("n", n, 1)
    log = n * (n - 1) / 2 * LOG_PI - _log_superfactorial(n)
    _agree(unitary_group_volume(n).value.log, n * LOG_2PI + log, f"vol(U({n})/U(1)^{n})")
    return _result(log, FormulaId.CosetU1n, n)


def flag_manifold_volume_hs(n: int) -> VolumeResult:
    """HS volume of the complex flag manifold: ``(2 pi)^(n(n-1)/2) / (1! ... (n-1)!)``."""
    n = _check_int("n", n, 1)
    log = n * (n - 1) / 2 * LOG_2PI - _log_superfactorial(n)
    _agree(log, unitary_group_volume_hs(n).value.log - n * LOG_2PI, f"vol_HS(Fl({n}))")
    return _result(log, FormulaId.FlagHS, n)


def density_set_volume(n: int, measure: str = "flat") -> VolumeResult:
    """Volume of the set of ``n x n`` complex density matrices.

    Parameters
    ----------
    n : int
        Matrix size.
    measure : {"flat", "hs"}
        ``"flat"`` is Lebesgue measure on the independent real coordinates,
        ``pi^(n(n-1)/2) Gamma(1)...Gamma(n) / Gamma(n^2)``. ``"hs"`` is the
        Hilbert-Schmidt Riemannian volume, larger by ``sqrt(n) 2^(n(n-1)/2)``.

    Returns
    -------
    VolumeResult
    """
    n = _check_int("n", n, 1)
    if measure not in ("flat", "hs"):
        raise DomainError(f"measure must be 'flat' or 'hs', got {measure!r}")
    flat = n * (n - 1) / 2 * LOG_PI + _log_superfactorial(n) - log_gamma(n * n)
    # eigenvalue route: flag volume / n! times the fixed-trace simplex integral
    via_simplex = (
        coset_volume_u1n(n).value.log - log_gamma(n + 1) + simplex_constant(n, 1.0, 2.0).log
    )
    _agree(flat, via_simplex, f"vol(D(C^{n}))")
    hs = 0.5 * math.log(n) + n * (n - 1) / 2 * LOG_2PI + _log_superfactorial(n) - log_gamma(n * n)
    _agree(hs - flat, 0.5 * math.log(n) + n * (n - 1) / 2 * LOG_2, f"vol_HS/vol for D(C^{n})")
    if measure == "flat":
        return _result(flat, FormulaId.DensityComplex, n)
    return _result(hs, FormulaId.DensityComplexHS, n)


def density_set_volume_real(n: int) -> VolumeResult:
    """Flat volume of the set of ``n x n`` real density matrices.

    .. math::

        \\operatorname{vol}(D(\\mathbb{R}^n)) =
        \\frac{\\pi^{n(n-1)/4}\\,\\Gamma((n+1)/2)}{\\Gamma(n(n+1)/2)\\,\\Gamma(1/2)}
        \\prod_{j=1}^{n} \\Gamma(j/2)

    The measure is Lebesgue on the diagonal and upper-triangular entries, with
    the trace constraint removing one diagonal coordinate. Cross-checked
    against ``vol(O(n)) / (2^n n!)`` times the fixed-trace simplex integral
    with ``|Delta|^1`` weight. At ``n = 2`` the set is the disc
    ``a(1 - a) >= b^2`` of area ``pi / 4``.
    """
    n = _check_int("n", n, 1)
    log = (
        n * (n - 1) / 4 * LOG_PI
        + log_gamma((n + 1) / 2)
        - log_gamma(n * (n + 1) / 2)
        - log_gamma(0.5)
        + math.fsum(log_gamma(j / 2) for j in range(1, n + 1))
    )
    via_simplex = (
        orthogonal_group_volume(n).value.log
        - n * LOG_2
        - log_gamma(n + 1)
        + simplex_constant(n, 1.0, 1.0).log
    )
    _agree(log, via_simplex, f"vol(D(R^{n}))")
    return _result(log, FormulaId.DensityReal, n)


def boundary_hyperarea_hs(n: int) -> VolumeResult:
    """HS hyper-area of the boundary of ``D(C^n)`` (states of rank ``n - 1``).

    .. math::

        \\sqrt{n-1}\\,(2\\pi)^{n(n-1)/2}
        \\frac{\\Gamma(1)\\cdots\\Gamma(n+1)}{\\Gamma(n)\\,\\Gamma(n^2-1)}

    At ``n = 2`` this is the area ``2 pi`` of the Bloch sphere of radius
    ``1/sqrt(2)``.
    """
    n = _check_int("n", n, 2)
    log = (
        0.5 * math.log(n - 1)
        + n * (n - 1) / 2 * LOG_2PI
        + math.fsum(log_gamma(k) for k in range(1, n + 2))
        - log_gamma(n)
        - log_gamma(n * n - 1)
    )
    _agree(log, _hyperedge_log(n, 1), f"boundary of D(C^{n})")
    return _result(log, FormulaId.BoundaryHS, n)


def _hyperedge_log(n, m):
    k = n - m
    return (
        0.5 * math.log(k)
        - log_gamma(k + 1)
        + simplex_constant(k, 1.0 + 2 * m, 2.0).log
        + flag_manifold_volume_hs(n).value.log
        - flag_manifold_volume_hs(m).value.log
    )


def hyperedge_volume_hs(n: int, m: int) -> VolumeResult:
    """HS volume of the face of ``D(C^n)`` made of states of rank ``n - m``.

    .. math::

        \\frac{\\sqrt{n-m}}{(n-m)!}\\,\\frac{1}{C^{(1+2m,2)}_{n-m}}\\,
        \\frac{\\operatorname{vol}_{HS}(Fl_n)}{\\operatorname{vol}_{HS}(Fl_m)}

    ``m = 1`` reproduces :func:`boundary_hyperarea_hs`; the two are compared
    whenever that case is requested.
    """
    n = _check_int("n", n, 2)
    m = _check_int("m", m, 1)
    if m > n - 1:
        raise DomainError(f"hyperedge needs 1 <= m <= n - 1, got n={n}, m={m}")
    log = _hyperedge_log(n, m)
    if m == 1:
        _agree(log, boundary_hyperarea_hs(n).value.log, f"hyperedge m=1 of D(C^{n})")
    return _result(log, FormulaId.HyperedgeHS, n, m)
