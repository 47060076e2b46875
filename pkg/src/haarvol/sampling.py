"""Seeded random matrices: Ginibre, Haar orthogonal/unitary, HS density matrices.

Every sampler takes an :class:`RngStream` and an optional ``size``. With
``size=None`` a single ``(n, n)`` matrix is returned, otherwise a stack of
shape ``(size, n, n)``. A stack is drawn in one vectorized pass, so it does
not equal ``size`` consecutive single draws; reproducing a sample needs the
same stream and the same ``size``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, HaarvolError
from .linalg import conj_transpose, hermitian_eig, qr_decompose

__all__ = [
    "RngStream",
    "DensityMatrix",
    "ginibre",
    "haar_unitary",
    "haar_orthogonal",
    "random_density_hs",
    "unitary_eigenangles",
]

_U64 = 2**64
CLUSTER_TOL = 1e-8


class RngStream:
    """Counter-based random stream identified by ``(master_seed, stream_id)``.

    The bit generator is Philox-4x64 keyed by a ``SeedSequence`` built from
    ``entropy=master_seed`` and ``spawn_key=(stream_id,)``, so streams with
    different ids are independent and any stream can be recreated from its two
    integers alone. Not safe to share between threads; create one per worker.
    """

    def __init__(self, master_seed: int, stream_id: int = 0):
        for name, v in (("master_seed", master_seed), ("stream_id", stream_id)):
            if isinstance(v, bool) or int(v) != v or not 0 <= int(v) < _U64:
                raise DomainError(f"{name} must be an unsigned 64-bit integer, got {v!r}")
        self.master_seed = int(master_seed)
        self.stream_id = int(stream_id)
        seq = np.random.SeedSequence(entropy=self.master_seed, spawn_key=(self.stream_id,))
        self.generator = np.random.Generator(np.random.Philox(seq))

    def __repr__(self):
        return f"RngStream(master_seed={self.master_seed:#x}, stream_id={self.stream_id})"

    def standard_normal(self, shape):
        return self.generator.standard_normal(shape)

    def uniform(self, shape):
        return self.generator.random(shape)


@dataclass(frozen=True)
class DensityMatrix:
    """A validated density matrix (Hermitian, unit trace, positive semidefinite)."""

    matrix: np.ndarray

    def __post_init__(self):
        rho = np.asarray(self.matrix, dtype=complex)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
            raise DomainError(f"density matrix must be square, got shape {rho.shape}")
        if np.abs(rho - rho.conj().T).max() > 1e-12:
            raise DomainError("density matrix is not Hermitian")
        if abs(np.trace(rho) - 1) > 1e-12:
            raise DomainError("density matrix trace is not 1")
        if hermitian_eig(rho).eigenvalues[-1] < -1e-12:
            raise DomainError("density matrix has a negative eigenvalue")
        rho.setflags(write=False)
        object.__setattr__(self, "matrix", rho)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]


def _shape(n, size):
    if isinstance(n, bool) or int(n) != n or int(n) < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    n = int(n)
    if size is None:
        return (n, n)
    if int(size) < 1:
        raise DomainError(f"size must be >= 1, got {size!r}")
    return (int(size), n, n)


def ginibre(n: int, kind: str, rng: RngStream, size=None) -> np.ndarray:
    """Matrix of i.i.d. Gaussian entries.

    Parameters
    ----------
    n : int
        Matrix size.
    kind : {"real", "complex"}
        Real entries are N(0, 1). Complex entries have independent N(0, 1)
        real and imaginary parts, so ``E|g|^2 = 2``.
    rng : RngStream
    size : int, optional
        Number of matrices; ``None`` returns a single matrix.

    Returns
    -------
    ndarray
        Shape ``(n, n)`` or ``(size, n, n)``. For the complex kind all real
        parts are drawn first, then all imaginary parts.
    """
    shape = _shape(n, size)
    if kind == "real":
        return rng.standard_normal(shape)
    if kind == "complex":
        re = rng.standard_normal(shape)
        im = rng.standard_normal(shape)
        return re + 1j * im
    raise DomainError(f"kind must be 'real' or 'complex', got {kind!r}")


def _haar(n, kind, rng, size, phase_fix):
    g = ginibre(n, kind, rng, size)
    q, r = qr_decompose(g)
    d = np.diagonal(r, axis1=-2, axis2=-1)
    bad = np.abs(d).min(axis=-1) == 0
    if np.any(bad):
        # singular draw, probability zero; resample those matrices once
        g2 = ginibre(n, kind, rng, None if size is None else int(np.sum(bad)))
        if size is None:
            g = g2
        else:
            g[bad] = g2
        q, r = qr_decompose(g)
        d = np.diagonal(r, axis1=-2, axis2=-1)
        if np.abs(d).min() == 0:
            raise HaarvolError("Ginibre draw singular twice in a row")
    if not phase_fix:
        return q
    # G = QR = (Q D)(D* R) with D = diag(R_jj / |R_jj|); Q D is Haar
    return q * (d / np.abs(d))[..., None, :]


def haar_unitary(n: int, rng: RngStream, size=None, phase_fix: bool = True) -> np.ndarray:
    """Haar-distributed unitary matrix from the QR factorization of complex Ginibre.

    ``phase_fix=False`` returns the raw Householder ``Q``, which is *not* Haar
    distributed (its determinant is not uniform on the circle). It exists as a
    negative control for the statistical tests.
    """
    return _haar(n, "complex", rng, size, phase_fix)


def haar_orthogonal(n: int, rng: RngStream, size=None, phase_fix: bool = True) -> np.ndarray:
    """Haar-distributed orthogonal matrix, ``Q diag(sign R_jj)`` from real Ginibre."""
    return _haar(n, "real", rng, size, phase_fix)


def random_density_hs(n: int, rng: RngStream, size=None) -> np.ndarray:
    """Random density matrix ``rho = G G* / tr(G G*)`` with square complex Ginibre ``G``.

    The induced law is the Hilbert-Schmidt measure; its eigenvalues have
    density proportional to ``delta(1 - sum l) prod_{i<j} (l_i - l_j)^2``.
    """
    g = ginibre(n, "complex", rng, size)
    w = g @ conj_transpose(g)
    w = 0.5 * (w + conj_transpose(w))
    tr = np.real(np.trace(w, axis1=-2, axis2=-1))
    return w / tr[..., None, None]


def unitary_eigenangles(u) -> np.ndarray:
    """Eigenangles ``theta_j`` in ``[-pi, pi]`` of a unitary matrix, sorted ascending.

    Diagonalizes the Hermitian part ``H = (U + U*)/2`` by Jacobi, then
    resolves each cluster of equal ``cos theta`` (e.g. the pair
    ``e^{+-i theta}``) by diagonalizing ``S = (U - U*)/(2i)`` restricted to it.
    Both ``H`` and ``S`` commute with ``U``, so the resulting vectors are
    eigenvectors of ``U`` and ``theta = atan2(v* S v, v* H v)``.

    Accepts a single matrix or a stack.
    """
    u = np.asarray(u, dtype=complex)
    if u.ndim < 2 or u.shape[-1] != u.shape[-2]:
        raise DomainError(f"unitary_eigenangles needs square input, got shape {u.shape}")
    n = u.shape[-1]
    uh = conj_transpose(u)
    defect = np.sqrt(np.sum(np.abs(uh @ u - np.eye(n)) ** 2, axis=(-2, -1)))
    if not np.all(defect <= 1e-8 * np.sqrt(n)):
        raise DomainError("input is not unitary to 1e-8 * sqrt(n)")
    h = 0.5 * (u + uh)
    s = (u - uh) / 2j
    cos_vals, v = hermitian_eig(h)
    if n > 1:
        m = conj_transpose(v) @ s @ v
        same = np.abs(cos_vals[..., :, None] - cos_vals[..., None, :]) < CLUSTER_TOL
        _, w = hermitian_eig(np.where(same, m, 0))
        v = v @ w
    vh = conj_transpose(v)
    c = np.real(np.einsum("...ij,...ji->...i", vh, h @ v))
    sn = np.real(np.einsum("...ij,...ji->...i", vh, s @ v))
    return np.sort(np.arctan2(sn, c), axis=-1)
