"""Monte Carlo estimators and deterministic quadrature oracles.

Sampling estimators split the work into fixed blocks of ``BLOCK_SIZE``
samples. Block ``b`` always draws from ``RngStream(seed, b)`` and is reduced
to ``(count, mean, M2)`` on its own; the block summaries are then merged in
block order. The answer therefore depends only on ``(seed, n_samples)``,
never on how many workers evaluated the blocks.
"""

from __future__ import annotations

import itertools
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy import stats

from .errors import DomainError, UsageError
from .linalg import conj_transpose, determinant, frobenius_distance_to_identity, hermitian_eig
from .sampling import RngStream, ginibre, haar_unitary, random_density_hs, unitary_eigenangles
from .selberg import SelbergParams

__all__ = [
    "BLOCK_SIZE",
    "EstimatorResult",
    "HistogramResult",
    "ENSEMBLES",
    "STATISTICS",
    "mc_ball_volume",
    "mc_moment",
    "mc_aomoto_moment",
    "mc_density_volume",
    "eigenangle_histogram",
    "det_phase_histogram",
    "chi_square_uniform",
    "brute_force_selberg",
    "brute_force_simplex",
    "andreief_check",
]

BLOCK_SIZE = 8192
ENSEMBLES = ("haar_unitary_angles", "wishart_eigs", "hs_density_eigs")
STATISTICS = ("product_of_eigs", "trace_square", "det")


@dataclass(frozen=True)
class EstimatorResult:
    """Sample mean with its standard error ``sd / sqrt(n_samples)``."""

    mean: float
    std_error: float
    n_samples: int
    master_seed: int
    elapsed_seconds: float = 0.0

    def interval(self, z: float = 1.96) -> tuple[float, float]:
        return self.mean - z * self.std_error, self.mean + z * self.std_error

    def zscore(self, target: float) -> float:
        """Distance of ``target`` from the mean in standard errors."""
        if self.std_error == 0:
            return 0.0 if self.mean == target else math.inf
        return abs(self.mean - target) / self.std_error

    def as_dict(self) -> dict:
        # elapsed time is left out so serialized output stays reproducible
        return {
            "mean": self.mean,
            "std_error": self.std_error,
            "n_samples": self.n_samples,
            "seed": self.master_seed,
        }


@dataclass(frozen=True)
class HistogramResult:
    counts: tuple
    edges: tuple
    statistic: float
    p_value: float
    n_samples: int
    master_seed: int

    def as_dict(self) -> dict:
        return {
            "counts": list(self.counts),
            "edges": list(self.edges),
            "chi_square": self.statistic,
            "p_value": self.p_value,
            "n_samples": self.n_samples,
            "seed": self.master_seed,
        }


def _check_seed(seed):
    if isinstance(seed, bool) or int(seed) != seed or not 0 <= int(seed) < 2**64:
        raise DomainError(f"seed must be an unsigned 64-bit integer, got {seed!r}")
    return int(seed)


def _check_count(name, value, low):
    if isinstance(value, bool) or int(value) != value or int(value) < low:
        raise DomainError(f"{name} must be an integer >= {low}, got {value!r}")
    return int(value)


def _block_sizes(n_samples, block):
    full, rest = divmod(n_samples, block)
    return [block] * full + ([rest] if rest else [])


def _map_blocks(task, n_samples, seed, workers, block=BLOCK_SIZE):
    sizes = _block_sizes(n_samples, block)
    jobs = [(RngStream(seed, b), size) for b, size in enumerate(sizes)]
    workers = max(1, int(workers or 1))
    if workers == 1 or len(jobs) == 1:
        return [task(rng, size) for rng, size in jobs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda job: task(*job), jobs))


def _summary(values):
    values = np.asarray(values, dtype=float)
    mean = math.fsum(values) / values.size
    m2 = math.fsum((values - mean) ** 2)
    return values.size, mean, m2


def _merge(summaries):
    # Chan et al. pairwise update, applied in block order
    count, mean, m2 = 0, 0.0, 0.0
    for nb, mb, m2b in summaries:
        total = count + nb
        delta = mb - mean
        mean = mean + delta * nb / total
        m2 = m2 + m2b + delta * delta * count * nb / total
        count = total
    return count, mean, m2


def _estimate(stat_fn, n_samples, seed, workers):
    seed = _check_seed(seed)
    t0 = time.perf_counter()
    summaries = _map_blocks(lambda rng, size: _summary(stat_fn(rng, size)), n_samples, seed, workers)
    count, mean, m2 = _merge(summaries)
    sd = math.sqrt(m2 / (count - 1)) if count > 1 else 0.0
    return EstimatorResult(mean, sd / math.sqrt(count), count, seed, time.perf_counter() - t0)


def mc_ball_volume(n: int, eps: float, n_samples: int, seed: int, workers: int = 1) -> EstimatorResult:
    """Fraction of Haar unitaries within Frobenius distance ``eps`` of the identity.

    For a fixed seed every ``eps`` uses the same sample set, so the estimate is
    monotone in ``eps``. Distances are compared with a ``1e-12`` allowance so
    that ``eps = 2 sqrt(n)`` counts every sample despite rounding.
    """
    n = _check_count("n", n, 1)
    n_samples = _check_count("n_samples", n_samples, 100)
    eps = float(eps)
    if not 0 <= eps <= 2 * math.sqrt(n):
        raise DomainError(f"eps must lie in [0, 2 sqrt(n)], got {eps}")

    def stat(rng, size):
        d = frobenius_distance_to_identity(haar_unitary(n, rng, size=size))
        return (np.atleast_1d(d) <= eps + 1e-12).astype(float)

    return _estimate(stat, n_samples, seed, workers)


def mc_density_volume(n: int, field: str, n_samples: int, seed: int, workers: int = 1) -> EstimatorResult:
    """Flat volume of the trace-one PSD matrices, by hit-or-miss in a bounding box.

    Coordinates are the first ``n - 1`` diagonal entries (in ``[0, 1]``, the
    last one fixed by the trace) and the real, and for ``field="complex"``
    imaginary, parts of the upper off-diagonal entries. Positivity forces
    ``|x_ij| <= sqrt(x_ii x_jj) <= 1/2``, so the box has unit volume and the
    hit rate is the volume itself.
    """
    n = _check_count("n", n, 1)
    n_samples = _check_count("n_samples", n_samples, 100)
    if field not in ("real", "complex"):
        raise DomainError(f"field must be 'real' or 'complex', got {field!r}")
    iu = np.triu_indices(n, 1)

    def stat(rng, size):
        diag = rng.uniform((size, n - 1))
        x = np.zeros((size, n, n), dtype=float if field == "real" else complex)
        idx = np.arange(n - 1)
        x[:, idx, idx] = diag
        x[:, n - 1, n - 1] = 1.0 - diag.sum(axis=1)
        off = rng.uniform((size, len(iu[0]))) - 0.5
        if field == "complex":
            off = off + 1j * (rng.uniform((size, len(iu[0]))) - 0.5)
        x[:, iu[0], iu[1]] = off
        x[:, iu[1], iu[0]] = np.conj(off)
        return (hermitian_eig(x).eigenvalues[:, -1] >= 0).astype(float)

    return _estimate(stat, n_samples, seed, workers)


def _moment_statistic(ensemble, statistic, n):
    if ensemble == "haar_unitary_angles":
        def draw(rng, size):
            return haar_unitary(n, rng, size=size)

        if statistic == "product_of_eigs":
            return lambda rng, size: np.cos(unitary_eigenangles(draw(rng, size)).sum(axis=-1))
        if statistic == "trace_square":
            def f(rng, size):
                th = unitary_eigenangles(draw(rng, size))
                return np.abs(np.exp(1j * th).sum(axis=-1)) ** 2
            return f
        return lambda rng, size: np.real(determinant(draw(rng, size)))

    if ensemble == "wishart_eigs":
        def draw(rng, size):
            # unit-variance complex entries: weight exp(-tr X) on X > 0
            g = ginibre(n, "complex", rng, size=size) / math.sqrt(2.0)
            return g @ conj_transpose(g)
    else:
        def draw(rng, size):
            return random_density_hs(n, rng, size=size)

    if statistic == "product_of_eigs":
        return lambda rng, size: np.prod(hermitian_eig(draw(rng, size)).eigenvalues, axis=-1)
    if statistic == "trace_square":
        return lambda rng, size: np.real(np.trace(np.linalg.matrix_power(draw(rng, size), 2), axis1=-2, axis2=-1))
    return lambda rng, size: np.real(determinant(draw(rng, size)))


def mc_moment(
    ensemble: str,
    statistic: str,
    n: int,
    n_samples: int,
    seed: int,
    workers: int = 1,
) -> EstimatorResult:
    """Monte Carlo moment of a random-matrix ensemble.

    Parameters
    ----------
    ensemble : {"haar_unitary_angles", "wishart_eigs", "hs_density_eigs"}
        Haar unitaries; ``X = G G*`` with ``G`` complex Ginibre scaled to
        ``E|g|^2 = 1`` (density ``exp(-tr X)``); or HS density matrices.
    statistic : {"product_of_eigs", "trace_square", "det"}
        ``product_of_eigs`` multiplies the eigenvalues from the eigensolver,
        ``det`` uses the LU determinant, ``trace_square`` is ``tr X^2``. For
        Haar unitaries the real part is reported and ``trace_square`` is
        ``|tr U|^2`` from the eigenangles.
    n : int
    n_samples : int
        At least 1000.
    seed : int
    workers : int
        Threads evaluating blocks; does not change the result.
    """
    if ensemble not in ENSEMBLES:
        raise UsageError(f"unknown ensemble {ensemble!r}; choose from {ENSEMBLES}")
    if statistic not in STATISTICS:
        raise UsageError(f"unknown statistic {statistic!r}; choose from {STATISTICS}")
    n = _check_count("n", n, 1)
    n_samples = _check_count("n_samples", n_samples, 1000)
    return _estimate(_moment_statistic(ensemble, statistic, n), n_samples, seed, workers)


def mc_aomoto_moment(p: SelbergParams, K: int, n_samples: int, seed: int, workers: int = 1) -> EstimatorResult:
    """``<x_1 ... x_K>`` under the normalized Selberg density, by rejection sampling.

    The unnormalized density is at most 1 on the cube when ``alpha, beta >= 1``
    and ``gamma >= 0``, so uniform proposals are accepted with probability
    equal to the density itself. ``n_samples`` counts accepted points.
    """
    if not (p.alpha >= 1 and p.beta >= 1 and p.gamma >= 0):
        raise DomainError("rejection sampler needs alpha, beta >= 1 and gamma >= 0")
    K = _check_count("K", K, 1)
    if K > p.N:
        raise DomainError(f"K must satisfy 1 <= K <= N={p.N}")
    n_samples = _check_count("n_samples", n_samples, 100)

    def stat(rng, size):
        out = []
        have = 0
        while have < size:
            x = rng.uniform((4 * size, p.N))
            dens = np.prod(x ** (p.alpha - 1) * (1 - x) ** (p.beta - 1), axis=1)
            for i, j in itertools.combinations(range(p.N), 2):
                dens = dens * np.abs(x[:, i] - x[:, j]) ** (2 * p.gamma)
            keep = x[rng.uniform(x.shape[0]) < dens]
            out.append(np.prod(keep[:, :K], axis=1))
            have += keep.shape[0]
        return np.concatenate(out)[:size]

    return _estimate(stat, n_samples, seed, workers)


def chi_square_uniform(values, bins: int, low: float, high: float):
    """Pearson chi-square test of ``values`` against the uniform law on ``[low, high]``.

    Returns
    -------
    counts : ndarray
    edges : ndarray
    statistic : float
    p_value : float
    """
    counts, edges = np.histogram(values, bins=bins, range=(low, high))
    expected = counts.sum() / bins
    statistic = float(np.sum((counts - expected) ** 2) / expected)
    return counts, edges, statistic, float(stats.chi2.sf(statistic, bins - 1))


def _histogram(values_fn, n_samples, seed, workers, bins):
    seed = _check_seed(seed)
    n_samples = _check_count("n_samples", n_samples, 100)
    chunks = _map_blocks(values_fn, n_samples, seed, workers)
    counts, edges, chi2, p = chi_square_uniform(np.concatenate(chunks), bins, -math.pi, math.pi)
    return HistogramResult(tuple(int(c) for c in counts), tuple(float(e) for e in edges), chi2, p, n_samples, seed)


def eigenangle_histogram(n: int, n_samples: int, seed: int, bins: int = 16, workers: int = 1) -> HistogramResult:
    """Histogram of one uniformly chosen eigenangle per Haar unitary, with a uniformity test.

    Taking a single angle per matrix keeps the counts multinomial; the
    marginal density of a randomly labelled eigenangle is uniform.
    """
    n = _check_count("n", n, 1)

    def values(rng, size):
        th = unitary_eigenangles(haar_unitary(n, rng, size=size))
        pick = rng.generator.integers(0, n, size=size)
        return th[np.arange(size), pick]

    return _histogram(values, n_samples, seed, workers, bins)


def det_phase_histogram(
    n: int, n_samples: int, seed: int, bins: int = 16, phase_fix: bool = True, workers: int = 1
) -> HistogramResult:
    """Histogram of ``arg det U`` over sampled unitaries, with a uniformity test.

    ``phase_fix=False`` samples the uncorrected QR factor, whose determinant
    phase is far from uniform.
    """
    n = _check_count("n", n, 1)

    def values(rng, size):
        return np.angle(determinant(haar_unitary(n, rng, size=size, phase_fix=phase_fix)))

    return _histogram(values, n_samples, seed, workers, bins)


def _gauss_legendre_01(points):
    x, w = np.polynomial.legendre.leggauss(points)
    return 0.5 * (x + 1.0), 0.5 * w


def brute_force_selberg(p: SelbergParams, points_per_axis: int = 128) -> float:
    """Tensor Gauss-Legendre value of the Selberg integral for ``N <= 3``.

    When ``2 gamma`` is an even integer the integrand is smooth and the cube
    is integrated directly. Otherwise ``|Delta|^(2 gamma)`` has kinks on the
    diagonals, so the ordered chamber ``x_1 < ... < x_N`` is mapped to the
    unit cube (``x_k = t_N t_(N-1) ... t_k``) and the result multiplied by
    ``N!``.
    """
    if not p.in_oracle_scope:
        raise DomainError("brute-force Selberg oracle needs N <= 3, alpha, beta >= 1, gamma >= 0")
    points = _check_count("points_per_axis", points_per_axis, 2)
    t, w = _gauss_legendre_01(points)
    N = p.N
    grids = np.meshgrid(*([t] * N), indexing="ij")
    weight = np.ones_like(grids[0])
    for g in np.meshgrid(*([w] * N), indexing="ij"):
        weight = weight * g
    two_g = 2 * p.gamma
    smooth = abs(two_g - 2 * round(two_g / 2)) < 1e-12
    if smooth:
        x = grids
        jac = 1.0
    else:
        # x_k = prod_{j >= k} t_j, so x_1 < x_2 < ... < x_N
        x = [np.prod(grids[k:], axis=0) for k in range(N)]
        jac = np.prod([grids[k] ** k for k in range(N)], axis=0)
    f = np.ones_like(grids[0])
    for xi in x:
        f = f * xi ** (p.alpha - 1) * (1 - xi) ** (p.beta - 1)
    for i, j in itertools.combinations(range(N), 2):
        f = f * np.abs(x[i] - x[j]) ** two_g
    total = math.fsum((f * jac * weight).ravel())
    return total if smooth else math.factorial(N) * total


def _simplex_rule(N, points):
    # nodes and weights on the standard simplex {h >= 0, sum h = 1} (Duffy map)
    if N == 1:
        return np.ones((1, 1)), np.ones(1)
    t, w = _gauss_legendre_01(points)
    u = np.meshgrid(*([t] * (N - 1)), indexing="ij")
    wt = np.ones_like(u[0])
    for g in np.meshgrid(*([w] * (N - 1)), indexing="ij"):
        wt = wt * g
    h = []
    rest = np.ones_like(u[0])
    for k in range(N - 1):
        h.append(rest * u[k])
        rest = rest * (1 - u[k])
    h.append(rest)
    # Jacobian prod_{k} (1 - u_k)^(N - 2 - k), k = 0 .. N - 3
    for k in range(N - 2):
        wt = wt * (1 - u[k]) ** (N - 2 - k)
    return np.stack([x.ravel() for x in h], axis=1), wt.ravel()


def brute_force_simplex(N: int, alpha: float, beta: float, points_per_axis: int = 64) -> float:
    """Quadrature value of the fixed-trace integral ``1 / C^(alpha, beta)_N``, ``N <= 3``.

    The trace constraint is removed by a linear change of variables rather
    than discretized. On the chamber ``l_1 > ... > l_N`` write
    ``l_i = g_i + ... + g_N`` with gaps ``g_k >= 0``; the constraint becomes
    ``sum_k k g_k = 1``, and ``h_k = k g_k`` ranges over the standard simplex
    with ``dg = dh / N!``. Summing the ``N!`` chambers cancels that factor, so
    the full integral is the plain simplex integral in ``h``. All
    differences ``l_i - l_j`` are sums of gaps, so ``|Delta|^beta`` has no
    interior kinks.
    """
    N = _check_count("N", N, 1)
    if N > 3:
        raise DomainError("brute_force_simplex supports N <= 3")
    if not (alpha >= 1 and beta >= 0):
        raise DomainError("brute_force_simplex needs alpha >= 1 and beta >= 0")
    h, w = _simplex_rule(N, points_per_axis)
    g = h / np.arange(1, N + 1)
    lam = np.cumsum(g[:, ::-1], axis=1)[:, ::-1]
    f = np.prod(lam ** (alpha - 1), axis=1)
    for i, j in itertools.combinations(range(N), 2):
        f = f * np.abs(lam[:, i] - lam[:, j]) ** beta
    return math.fsum(f * w)


def andreief_check(n: int, basis_degree_offset: int = 0, points_per_axis: int = 24) -> float:
    """``|LHS - RHS|`` for the identity of Andreief with monomial bases on ``[0, 1]``.

    ``LHS`` integrates ``det[x_j^(i-1)] det[x_j^(i-1+offset)]`` over the ordered
    simplex ``0 < x_1 < ... < x_n < 1`` by tensor Gauss-Legendre; ``RHS`` is
    the determinant of the exact moments ``1 / (i + j - 1 + offset)``.
    """
    n = _check_count("n", n, 1)
    if n > 4:
        raise DomainError("andreief_check supports n <= 4")
    off = _check_count("basis_degree_offset", basis_degree_offset, 0)
    t, w = _gauss_legendre_01(points_per_axis)
    u = np.meshgrid(*([t] * n), indexing="ij")
    wt = np.ones_like(u[0])
    for g in np.meshgrid(*([w] * n), indexing="ij"):
        wt = wt * g
    x = [np.prod(u[k:], axis=0).ravel() for k in range(n)]
    jac = np.prod([u[k] ** k for k in range(n)], axis=0).ravel()
    xs = np.stack(x, axis=-1)
    powers = np.arange(n)
    m = xs[:, None, :] ** powers[:, None]
    nn = xs[:, None, :] ** (powers[:, None] + off)
    lhs = math.fsum(determinant(m) * determinant(nn) * jac * wt.ravel())
    i = np.arange(1, n + 1)
    rhs = float(determinant(1.0 / (i[:, None] + i[None, :] - 1 + off)))
    return abs(lhs - rhs)
