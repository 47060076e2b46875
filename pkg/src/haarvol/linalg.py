"""Dense linear algebra for small matrices.

All routines accept a single ``(n, n)`` array or a stack ``(..., n, n)`` and
operate on every matrix of the stack at once. Real inputs stay real.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import ConvergenceError, DimensionError

__all__ = [
    "EigenDecomposition",
    "qr_decompose",
    "hermitian_eig",
    "determinant",
    "frobenius_distance_to_identity",
    "conj_transpose",
]

JACOBI_TOL = 1e-14
JACOBI_MAX_SWEEPS = 100


class EigenDecomposition(NamedTuple):
    """Eigenvalues (descending) and the unitary matrix of paired eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def _as_square(a, name="matrix"):
    a = np.asarray(a)
    if a.ndim < 2 or a.shape[-1] != a.shape[-2] or a.shape[-1] < 1:
        raise DimensionError(f"{name} must be square, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise DimensionError(f"{name} has non-finite entries")
    if np.iscomplexobj(a):
        return a.astype(complex)
    return a.astype(float)


def conj_transpose(a):
    return np.conj(np.swapaxes(a, -1, -2))


def qr_decompose(a):
    """Householder QR factorization ``A = Q R``.

    No normalization of the diagonal of ``R`` is applied; its entries carry
    whatever sign or phase the reflectors produce.

    Returns
    -------
    Q : ndarray
        Unitary (orthogonal for real input), same shape as ``a``.
    R : ndarray
        Upper triangular.
    """
    r = _as_square(a, "qr input").copy()
    n = r.shape[-1]
    q = np.broadcast_to(np.eye(n, dtype=r.dtype), r.shape).copy()
    for k in range(n - 1):
        x = r[..., k:, k]
        alpha = x[..., 0]
        xnorm = np.sqrt(np.sum(np.abs(x) ** 2, axis=-1))
        # reflect x onto -phase(alpha) * |x| e_1 to avoid cancellation
        phase = np.where(np.abs(alpha) > 0, alpha / np.where(alpha == 0, 1, np.abs(alpha)), 1)
        v = x.copy()
        v[..., 0] = alpha + phase * xnorm
        vnorm2 = np.sum(np.abs(v) ** 2, axis=-1)
        active = vnorm2 > 0
        vnorm2 = np.where(active, vnorm2, 1.0)
        v = v * active[..., None]
        # R <- H R,  H = I - 2 v v* / (v* v)
        w = np.einsum("...i,...ij->...j", np.conj(v), r[..., k:, :])
        r[..., k:, :] -= (2.0 / vnorm2)[..., None, None] * v[..., :, None] * w[..., None, :]
        # Q <- Q H
        u = np.einsum("...ij,...j->...i", q[..., :, k:], v)
        q[..., :, k:] -= (2.0 / vnorm2)[..., None, None] * u[..., :, None] * np.conj(v)[..., None, :]
        r[..., k + 1:, k] = 0
    return q, np.triu(r)


def hermitian_eig(a) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian (real symmetric) matrix by cyclic Jacobi.

    The input is symmetrized as ``(A + A*) / 2`` first. Sweeps continue until
    the off-diagonal Frobenius norm drops below ``1e-14 * ||A||_F``.

    Raises
    ------
    ConvergenceError
        If 100 sweeps do not reach the threshold.
    """
    a = _as_square(a, "hermitian_eig input")
    a = 0.5 * (a + conj_transpose(a))
    n = a.shape[-1]
    v = np.broadcast_to(np.eye(n, dtype=a.dtype), a.shape).copy()
    scale = np.sqrt(np.sum(np.abs(a) ** 2, axis=(-2, -1)))
    threshold = JACOBI_TOL * scale
    iu = np.triu_indices(n, 1)
    complex_ = np.iscomplexobj(a)

    for _ in range(JACOBI_MAX_SWEEPS):
        off = np.sqrt(2.0 * np.sum(np.abs(a[..., iu[0], iu[1]]) ** 2, axis=-1))
        if np.all(off <= threshold):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                _jacobi_rotate(a, v, p, q, complex_)
    else:
        off = np.sqrt(2.0 * np.sum(np.abs(a[..., iu[0], iu[1]]) ** 2, axis=-1))
        if not np.all(off <= threshold):
            raise ConvergenceError(
                f"Jacobi eigensolver did not converge in {JACOBI_MAX_SWEEPS} sweeps",
                partial_value=None,
                error_bound=float(np.max(off)),
            )

    lam = np.real(np.diagonal(a, axis1=-2, axis2=-1)).copy()
    order = np.argsort(-lam, axis=-1, kind="stable")
    lam = np.take_along_axis(lam, order, axis=-1)
    v = np.take_along_axis(v, order[..., None, :], axis=-1)
    return EigenDecomposition(lam, v)


def _jacobi_rotate(a, v, p, q, complex_):
    # one two-sided rotation zeroing a[p, q] in every matrix of the stack
    apq = a[..., p, q]
    mag = np.abs(apq)
    active = mag > 1e-300
    safe = np.where(active, mag, 1.0)
    app = np.real(a[..., p, p])
    aqq = np.real(a[..., q, q])
    tau = (aqq - app) / (2.0 * safe)
    t = np.where(tau >= 0, 1.0, -1.0) / (np.abs(tau) + np.hypot(1.0, tau))
    c = 1.0 / np.hypot(1.0, t)
    s = t * c
    c = np.where(active, c, 1.0)
    s = np.where(active, s, 0.0)
    if complex_:
        u = np.where(active, apq / safe, 1.0)
    else:
        u = np.where(active, np.sign(apq), 1.0)
    uc = np.conj(u)
    # J = diag(1, .., conj(u) at q, ..) @ real rotation(c, s)
    jpp, jpq, jqp, jqq = c, s, -s * uc, c * uc

    ap = a[..., :, p].copy()
    aq = a[..., :, q]
    a[..., :, p] = ap * jpp[..., None] + aq * jqp[..., None]
    a[..., :, q] = ap * jpq[..., None] + aq * jqq[..., None]
    rp = a[..., p, :].copy()
    rq = a[..., q, :]
    a[..., p, :] = np.conj(jpp)[..., None] * rp + np.conj(jqp)[..., None] * rq
    a[..., q, :] = np.conj(jpq)[..., None] * rp + np.conj(jqq)[..., None] * rq
    a[..., p, q] = 0
    a[..., q, p] = 0
    a[..., p, p] = np.real(a[..., p, p])
    a[..., q, q] = np.real(a[..., q, q])

    vp = v[..., :, p].copy()
    vq = v[..., :, q]
    v[..., :, p] = vp * jpp[..., None] + vq * jqp[..., None]
    v[..., :, q] = vp * jpq[..., None] + vq * jqq[..., None]


def determinant(a):
    """Determinant by LU factorization with partial pivoting.

    Returns a scalar for a single matrix, an array for a stack. The dtype
    follows the input (real or complex).
    """
    lu = _as_square(a, "determinant input").copy()
    n = lu.shape[-1]
    det = np.ones(lu.shape[:-2], dtype=lu.dtype)
    for k in range(n):
        col = np.abs(lu[..., k:, k])
        piv = k + np.argmax(col, axis=-1)
        swap = piv != k
        if np.any(swap):
            rows_k = lu[..., k, :].copy()
            rows_p = np.take_along_axis(lu, piv[..., None, None], axis=-2)[..., 0, :]
            lu[..., k, :] = rows_p
            np.put_along_axis(lu, piv[..., None, None], rows_k[..., None, :], axis=-2)
            det = np.where(swap, -det, det)
        pivot = lu[..., k, k]
        det = det * pivot
        if k < n - 1:
            nonzero = pivot != 0
            factors = lu[..., k + 1:, k] / np.where(nonzero, pivot, 1)[..., None]
            factors = factors * nonzero[..., None]
            lu[..., k + 1:, k:] -= factors[..., :, None] * lu[..., k, None, k:]
    return det[()] if det.ndim == 0 else det


def frobenius_distance_to_identity(u):
    """``||U - 1||_F`` for a square matrix or a stack of them."""
    u = _as_square(u, "matrix")
    n = u.shape[-1]
    d = u - np.eye(n)
    out = np.sqrt(np.sum(np.abs(d) ** 2, axis=(-2, -1)))
    return float(out) if out.ndim == 0 else out
