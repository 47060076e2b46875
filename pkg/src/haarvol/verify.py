"""Self-verification suites: closed forms against oracles and Monte Carlo.

Each suite returns a list of :class:`Check` records. All randomness derives
from the seed argument so a suite's output is a pure function of
``(seed, samples)``; nothing time-dependent is recorded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import ballvol, estimators, selberg, special, volumes
from .errors import ConvergenceError
from .sampling import haar_unitary

__all__ = ["Check", "SUITES", "run_suite"]


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    value: float | None
    target: float | None
    tolerance: str

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": bool(self.passed),
            "value": self.value,
            "target": self.target,
            "tolerance": self.tolerance,
        }


def _rel(name, value, target, tol):
    err = abs(value - target) / abs(target)
    return Check(name, err <= tol, float(value), float(target), f"rel {tol:g}")


def _abs(name, value, target, tol):
    return Check(name, abs(value - target) <= tol, float(value), float(target), f"abs {tol:g}")


def _log_rel(name, lv, target, tol=1e-12):
    # relative error in the value, measured in the log domain
    err = abs(lv.log - math.log(target))
    return Check(name, lv.sign == 1 and err <= tol, lv.linear(), float(target), f"log {tol:g}")


def _sigma(name, est, target, k):
    return Check(name, est.zscore(target) <= k, est.mean, float(target), f"{k:g} sigma (se {est.std_error:.3g})")


def _pvalue(name, hist, level=1e-3, expect_uniform=True):
    ok = hist.p_value > level if expect_uniform else hist.p_value <= level
    rule = f"p > {level:g}" if expect_uniform else f"p <= {level:g} (must fail)"
    return Check(name, ok, hist.p_value, None, rule)


def _no_raise(name, fn):
    try:
        fn()
    except AssertionError:
        return Check(name, False, None, None, "dual-expression asserts")
    return Check(name, True, None, None, "dual-expression asserts")


def suite_volumes(seed: int, samples: int, workers: int) -> list[Check]:
    pi = math.pi
    out = [
        _log_rel("vol(S^1) = 2 pi", volumes.sphere_volume(1).value, 2 * pi),
        _log_rel("vol(S^2) = 4 pi", volumes.sphere_volume(2).value, 4 * pi),
        _log_rel("vol(O(1)) = 2", volumes.orthogonal_group_volume(1).value, 2.0),
        _log_rel("vol(O(2)) = 4 pi", volumes.orthogonal_group_volume(2).value, 4 * pi),
        _log_rel("vol(U(1)) = 2 pi", volumes.unitary_group_volume(1).value, 2 * pi),
        _log_rel("vol(U(2)) = 4 pi^3", volumes.unitary_group_volume(2).value, 4 * pi**3),
        _log_rel("vol(U(2)/U(1)^2) = pi", volumes.coset_volume_u1n(2).value, pi),
        _log_rel("vol_HS(D(C^2)) = Bloch ball", volumes.density_set_volume(2, "hs").value,
                 4 / 3 * pi * (1 / math.sqrt(2)) ** 3),
        _log_rel("HS boundary of D(C^2) = Bloch sphere", volumes.boundary_hyperarea_hs(2).value,
                 4 * pi * 0.5),
        _log_rel("vol(D(R^2)) = disc area pi/4", volumes.density_set_volume_real(2).value, pi / 4),
    ]

    def all_duals():
        for n in range(1, 21):
            volumes.orthogonal_group_volume(n)
            volumes.unitary_group_volume_hs(n)
            volumes.coset_volume_u1n(n)
            volumes.flag_manifold_volume_hs(n)
            volumes.stiefel_volume_real(n, n)
            volumes.density_set_volume(n, "hs")
            volumes.density_set_volume_real(n)
            if n >= 2:
                volumes.boundary_hyperarea_hs(n)
                for m in range(1, n):
                    volumes.hyperedge_volume_hs(n, m)

    out.append(_no_raise("dual expressions agree for n <= 20", all_duals))

    worst = max(
        abs(volumes.unitary_group_volume(n + 1).value.log
            - volumes.sphere_volume(2 * n + 1).value.log
            - volumes.unitary_group_volume(n).value.log)
        for n in range(1, 21)
    )
    out.append(Check("vol(U(n+1)) = vol(S^(2n+1)) vol(U(n)), n <= 20", worst <= 1e-12, worst, 0.0, "log 1e-12"))

    rng = np.random.default_rng(seed)
    x = rng.uniform(0.1, 100, size=10_000)
    rec = max(
        abs(special.log_gamma(v + 1) - special.log_gamma(v) - math.log(v)) / max(1.0, abs(special.log_gamma(v + 1)))
        for v in x
    )
    out.append(Check("log_gamma recurrence", rec <= 1e-11, rec, 0.0, "rel 1e-11"))
    dup = 0.0
    for z in np.arange(1.5, 20.25, 0.5):
        lhs = special.log_gamma(2 * z - 1)
        # Legendre: sqrt(pi) Gamma(2z - 1) = 2^(2z-2) Gamma(z - 1/2) Gamma(z)
        rhs = (2 * z - 2) * math.log(2) + special.log_gamma(z - 0.5) + special.log_gamma(z) - 0.5 * math.log(math.pi)
        dup = max(dup, abs(lhs - rhs) / max(1.0, abs(lhs)))
    out.append(Check("log_gamma duplication", dup <= 1e-11, dup, 0.0, "rel 1e-11"))

    for n in (2, 3):
        est = estimators.mc_density_volume(n, "real", samples, seed, workers)
        out.append(_sigma(f"vol(D(R^{n})) vs hit-or-miss MC", est, volumes.density_set_volume_real(n).value.linear(), 5))
    est = estimators.mc_density_volume(2, "complex", samples, seed, workers)
    out.append(_sigma("vol(D(C^2)) vs hit-or-miss MC", est, volumes.density_set_volume(2).value.linear(), 5))
    return out


def suite_selberg(seed: int, samples: int, workers: int) -> list[Check]:
    S = selberg.SelbergParams
    out = []
    p2 = S(2, 1, 1, 1)
    out.append(_abs("S_2(1,1,1) = 1/6 (closed form)", selberg.selberg_integral(p2).linear(), 1 / 6, 1e-12))
    out.append(_abs("S_2(1,1,1) vs quadrature", estimators.brute_force_selberg(p2),
                    selberg.selberg_integral(p2).linear(), 1e-6))
    p3 = S(3, 1, 1, 1)
    out.append(_abs("S_3(1,1,1) vs quadrature", estimators.brute_force_selberg(p3),
                    selberg.selberg_integral(p3).linear(), 1e-3))
    p3h = S(3, 2, 1, 0.5)
    out.append(_rel("S_3(2,1,1/2) vs folded quadrature", estimators.brute_force_selberg(p3h),
                    selberg.selberg_integral(p3h).linear(), 1e-3))

    rng = np.random.default_rng(seed)
    sym = 0.0
    for _ in range(1000):
        N = int(rng.integers(1, 7))
        a, b = rng.uniform(0.1, 10, size=2)
        g = rng.uniform(0, 3)
        sym = max(sym, abs(selberg.selberg_integral(S(N, a, b, g)).log - selberg.selberg_integral(S(N, b, a, g)).log))
    out.append(Check("alpha <-> beta symmetry, 1000 draws", sym <= 1e-13, sym, 0.0, "log 1e-13"))
    tele = 0.0
    for _ in range(100):
        N = int(rng.integers(1, 7))
        a, b = rng.uniform(0.1, 10, size=2)
        g = rng.uniform(0, 3)
        p = S(N, a, b, g)
        lhs = selberg.selberg_integral(S(N, a + 1, b, g)).log - selberg.selberg_integral(p).log
        tele = max(tele, abs(lhs - selberg.aomoto_ratio(p, N).log))
    out.append(Check("Aomoto telescoping, 100 draws", tele <= 1e-11, tele, 0.0, "log 1e-11"))

    bridge = 0.0
    for N in range(1, 5):
        for a in (1, 2, 3):
            for b in (1, 2):
                bridge = max(bridge, abs(selberg.fixed_trace_from_laguerre(N, a, b).log
                                         - selberg.simplex_constant(N, a, b).log))
    out.append(Check("Laplace bridge = simplex constant", bridge <= 1e-11, bridge, 0.0, "log 1e-11"))
    prod = 0.0
    for n in range(1, 7):
        ref = special.gamma_product([v for j in range(n) for v in (n - j, n - j + 1)], [n * n]).log
        prod = max(prod, abs(selberg.simplex_constant(n, 1, 2).log - ref))
    out.append(Check("1/C^(1,2)_n = prod Gamma(n-j)Gamma(n-j+1)/Gamma(n^2)", prod <= 1e-10, prod, 0.0, "log 1e-10"))

    quad = max(abs(estimators.brute_force_simplex(N, a, b) - selberg.simplex_constant(N, a, b).linear())
               for N in (1, 2, 3) for a in (1, 2) for b in (1, 2))
    out.append(Check("simplex constant vs quadrature", quad <= 1e-10, quad, 0.0, "abs 1e-10"))

    pa = S(3, 2, 1, 0.5)
    est = estimators.mc_aomoto_moment(pa, 1, max(1000, samples // 5), seed, workers)
    out.append(_sigma("Aomoto <x_1>, N=3, (2,1,1/2), MC", est, selberg.aomoto_ratio(pa, 1).linear(), 5))
    return out


def _ball_value(n, eps):
    try:
        return ballvol.ball_volume_quadrature(ballvol.BallQuery(n, eps))
    except ConvergenceError:
        return math.nan


def suite_ball(seed: int, samples: int, workers: int) -> list[Check]:
    out = []
    for eps in (0.5, 1.0, math.sqrt(2)):
        out.append(_abs(f"n=1 eps={eps:.6g} vs (2/pi) arcsin(eps/2)", _ball_value(1, eps),
                        ballvol.ball_volume_exact_n1(eps), 1e-4))
    for n in (1, 2, 3, 4):
        out.append(_abs(f"vol(B_2sqrt(n)) = 1, n={n}", _ball_value(n, 2 * math.sqrt(n)), 1.0, 1e-3))
    for n in (1, 2, 3):
        for f in (0.5, 1.0, 1.5):
            eps = f * math.sqrt(n)
            quad = _ball_value(n, eps)
            mc = estimators.mc_ball_volume(n, eps, samples, seed, workers)
            tol = 3 * mc.std_error + 1e-3
            out.append(Check(f"quadrature vs MC, n={n} eps={f:g} sqrt(n)", abs(quad - mc.mean) <= tol,
                             quad, mc.mean, f"3 sigma + 1e-3 = {tol:.3g}"))
    rng = np.random.default_rng(seed)
    s = rng.uniform(0, 120, size=200)
    even = max(float(np.max(np.abs(ballvol.bessel_toeplitz_det(n, s) - ballvol.bessel_toeplitz_det(n, -s))))
               for n in range(1, 7))
    out.append(Check("D_n(-s) = D_n(s)", even <= 1e-12, even, 0.0, "abs 1e-12"))

    x = np.linspace(0.1, 50, 500)
    j = special.bessel_j_orders(13, x)
    k = np.arange(1, 13)[:, None]
    rec = float(np.max(np.abs(j[:-2] + j[2:] - 2 * k / x * j[1:-1])))
    out.append(Check("Bessel three-term recurrence", rec <= 1e-9, rec, 0.0, "abs 1e-9"))
    xs = np.linspace(0, 40, 401)
    jj = special.bessel_j_orders(60, xs)
    norm = float(np.max(np.abs(jj[0] ** 2 + 2 * np.sum(jj[1:] ** 2, axis=0) - 1)))
    out.append(Check("Bessel sum normalization", norm <= 1e-8, norm, 0.0, "abs 1e-8"))
    out.append(_abs("J_0 first zero", _bisect(lambda t: special.bessel_j(0, t), 2.0, 3.0), 2.4048255577, 1e-8))

    for n, off in ((1, 0), (2, 0), (2, 1), (3, 0), (3, 1)):
        d = estimators.andreief_check(n, off)
        out.append(Check(f"Andreief n={n} offset={off}", d <= 1e-8, d, 0.0, "abs 1e-8"))
    return out


def _bisect(f, a, b):
    fa = f(a)
    for _ in range(200):
        m = 0.5 * (a + b)
        fm = f(m)
        if fm == 0 or b - a < 1e-15:
            return m
        if (fm > 0) == (fa > 0):
            a, fa = m, fm
        else:
            b = m
    return 0.5 * (a + b)


def suite_sampling(seed: int, samples: int, workers: int) -> list[Check]:
    out = []
    for n in (2, 4):
        def u11(rng, size, n=n):
            return np.abs(haar_unitary(n, rng, size=size)[:, 0, 0]) ** 2
        est = estimators._estimate(u11, samples, seed, workers)
        out.append(_sigma(f"E|U_11|^2 = 1/{n}", est, 1 / n, 5))
    out.append(_pvalue("eigenangle marginal uniform, n=3",
                       estimators.eigenangle_histogram(3, samples, seed, workers=workers)))
    out.append(_pvalue("det phase uniform, n=3",
                       estimators.det_phase_histogram(3, samples, seed, workers=workers)))
    out.append(_pvalue("det phase without phase fix, n=3",
                       estimators.det_phase_histogram(3, samples, seed, phase_fix=False, workers=workers),
                       expect_uniform=False))
    for n in (2, 3, 4, 5):
        est = estimators.mc_moment("wishart_eigs", "det", n, samples, seed, workers)
        out.append(_sigma(f"E det(GG*) = {n}!", est, math.factorial(n), 5))
    out.append(_sigma("E det rho = 1/10, n=2", estimators.mc_moment("hs_density_eigs", "det", 2, samples, seed, workers), 0.1, 5))
    out.append(_sigma("E tr rho^2 = 4/5, n=2",
                      estimators.mc_moment("hs_density_eigs", "trace_square", 2, samples, seed, workers), 0.8, 5))
    out.append(_sigma("E|tr U|^2 = 1, n=2",
                      estimators.mc_moment("haar_unitary_angles", "trace_square", 2, samples, seed, workers), 1.0, 5))
    one = estimators.mc_moment("wishart_eigs", "det", 3, samples, seed, 1)
    many = estimators.mc_moment("wishart_eigs", "det", 3, samples, seed, 8)
    rel = abs(one.mean - many.mean) / abs(one.mean)
    out.append(Check("1 vs 8 workers, same mean", rel <= 1e-12, many.mean, one.mean, "rel 1e-12"))
    return out


SUITES: dict[str, Callable[[int, int, int], list[Check]]] = {
    "volumes": suite_volumes,
    "selberg": suite_selberg,
    "ball": suite_ball,
    "sampling": suite_sampling,
}


def run_suite(name: str, seed: int, samples: int = 100_000, workers: int = 1) -> list[Check]:
    """Run one suite, or all of them in a fixed order for ``name == "all"``."""
    names = list(SUITES) if name == "all" else [name]
    out = []
    for n in names:
        out.extend(SUITES[n](seed, samples, workers))
    return out
