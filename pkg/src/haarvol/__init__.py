"""Volumes of compact matrix groups and quantum-state sets, with numerical oracles.

Closed forms live in :mod:`haarvol.volumes` and :mod:`haarvol.selberg`, the
metric-ball volume in :mod:`haarvol.ballvol`, and everything that checks them
(samplers, Monte Carlo and quadrature oracles) in :mod:`haarvol.sampling`
and :mod:`haarvol.estimators`.
"""

from .ballvol import BallQuery, ball_volume, ball_volume_quadrature, bessel_toeplitz_det
from .errors import ConvergenceError, DimensionError, DomainError, HaarvolError, UsageError
from .estimators import EstimatorResult, mc_ball_volume, mc_moment
from .sampling import RngStream, haar_orthogonal, haar_unitary, random_density_hs, unitary_eigenangles
from .selberg import SelbergParams, selberg_integral, simplex_constant
from .special import LogValue, log_gamma
from .volumes import FormulaId, VolumeResult

__version__ = "0.1.0"

__all__ = [
    "BallQuery",
    "ConvergenceError",
    "DimensionError",
    "DomainError",
    "EstimatorResult",
    "FormulaId",
    "HaarvolError",
    "LogValue",
    "RngStream",
    "SelbergParams",
    "UsageError",
    "VolumeResult",
    "ball_volume",
    "ball_volume_quadrature",
    "bessel_toeplitz_det",
    "haar_orthogonal",
    "haar_unitary",
    "log_gamma",
    "mc_ball_volume",
    "mc_moment",
    "random_density_hs",
    "selberg_integral",
    "simplex_constant",
    "unitary_eigenangles",
]
