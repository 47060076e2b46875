"""Command-line interface: ``haarvol <command> [options]``.

Every command prints one JSON document to stdout::

    {"schema": 1, "command": ..., "parameters": {...}, "result": {...},
     "status": "ok" | "domain_error" | "convergence_error" | "usage_error",
     "paper_ref": "<formula evaluated>"}

Keys are sorted and no timing information is included, so equal
invocations give byte-identical output. Exit codes: 0 ok, 1 domain or usage
error, 2 convergence error, 3 a ``verify`` check failed.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import os
import sys

import numpy as np

from . import ballvol, estimators, sampling, selberg, verify, volumes
from .errors import ConvergenceError, DomainError, HaarvolError, UsageError

__all__ = ["run", "main", "write_matrices", "read_matrices", "GRAMMAR"]

SCHEMA = 1
DEFAULT_SEED = 0x5EEDC0DE

GRAMMAR = """\
haarvol volume --group {sphere|orthogonal|unitary|unitary-hs|stiefel|coset-u1n|flag-hs|density|density-hs|density-real|boundary-hs|hyperedge-hs} --n N [--p P] [--m M]
haarvol selberg --N N --alpha A --beta B --gamma G [--variant {selberg|aomoto --K K|laguerre|hermite --lambda L|simplex|fixed-trace}]
haarvol ball-volume --n N --eps E [--method {quadrature|mc}] [--samples S] [--seed X] [--rel-tol T]
haarvol sample --kind {ginibre-real|ginibre-complex|haar-orthogonal|haar-unitary|density-hs} --n N --count C --seed X [--out PATH] [--format json|csv]
haarvol estimate --target {ball|det|trace-square|eigenangle-hist} --n N [--eps E] --samples S --seed X
haarvol verify --suite {volumes|selberg|ball|sampling|all} [--seed X] [--samples S]
common: [--workers W]  (default: $HAARVOL_WORKERS, else the CPU count)
"""

_VOLUME_FORMULAS = {
    "sphere": ("vol(S^d) = 2 pi^((d+1)/2) / Gamma((d+1)/2), d = n", lambda a: volumes.sphere_volume(a.n)),
    "orthogonal": ("vol(O(n)) = 2^n pi^(n(n+1)/4) / prod_{k=1}^n Gamma(k/2)",
                   lambda a: volumes.orthogonal_group_volume(a.n)),
    "unitary": ("vol(U(n)) = 2^n pi^(n(n+1)/2) / prod_{k=1}^{n-1} k!", lambda a: volumes.unitary_group_volume(a.n)),
    "unitary-hs": ("vol_HS(U(n)) = (2 pi)^(n(n+1)/2) / prod_{k=1}^{n-1} k!",
                   lambda a: volumes.unitary_group_volume_hs(a.n)),
    "stiefel": ("vol(O(p,n)) = 2^p pi^(pn/2) / Gamma_p(n/2)",
                lambda a: volumes.stiefel_volume_real(_need(a, "p"), a.n)),
    "coset-u1n": ("vol(U(n)/U(1)^n) = pi^(n(n-1)/2) / prod_{k=1}^{n-1} k!",
                  lambda a: volumes.coset_volume_u1n(a.n)),
    "flag-hs": ("vol_HS(Fl_n) = (2 pi)^(n(n-1)/2) / prod_{k=1}^{n-1} k!",
                lambda a: volumes.flag_manifold_volume_hs(a.n)),
    "density": ("vol(D(C^n)) = pi^(n(n-1)/2) Gamma(1)...Gamma(n) / Gamma(n^2)",
                lambda a: volumes.density_set_volume(a.n, "flat")),
    "density-hs": ("vol_HS(D(C^n)) = sqrt(n) (2 pi)^(n(n-1)/2) Gamma(1)...Gamma(n) / Gamma(n^2)",
                   lambda a: volumes.density_set_volume(a.n, "hs")),
    "density-real": ("vol(D(R^n)) = pi^(n(n-1)/4) Gamma((n+1)/2) prod_j Gamma(j/2) / (Gamma(n(n+1)/2) Gamma(1/2))",
                     lambda a: volumes.density_set_volume_real(a.n)),
    "boundary-hs": ("sqrt(n-1) (2 pi)^(n(n-1)/2) Gamma(1)...Gamma(n+1) / (Gamma(n) Gamma(n^2-1))",
                    lambda a: volumes.boundary_hyperarea_hs(a.n)),
    "hyperedge-hs": ("sqrt(n-m)/(n-m)! / C^(1+2m,2)_{n-m} * vol_HS(Fl_n) / vol_HS(Fl_m)",
                     lambda a: volumes.hyperedge_volume_hs(a.n, _need(a, "m"))),
}

_SELBERG_FORMULAS = {
    "selberg": "S_N = prod_j Gamma(a+jg) Gamma(b+jg) Gamma(1+(j+1)g) / (Gamma(a+b+(N+j-1)g) Gamma(1+g))",
    "aomoto": "<x_1...x_K> = prod_{j=1}^K (a+g(N-j)) / (a+b+g(2N-j-1))",
    "laguerre": "prod_{j=1}^N Gamma(a+(j-1)g) Gamma(1+jg) / Gamma(1+g)",
    "hermite": "(2 pi)^(N/2) (2 lambda)^(-N(g(N-1)+1)/2) prod_{j=1}^N Gamma(1+jg) / Gamma(1+g)",
    "simplex": "1/C^(a,b)_N = prod_j Gamma(1+jb/2) Gamma(a+(j-1)b/2) / Gamma(1+b/2) / Gamma(aN+bN(N-1)/2)",
    "fixed-trace": "Laguerre(N, a, b/2) / Gamma(aN + bN(N-1)/2)",
}

_BALL_REF = "vol(B_eps) = (1/pi) int_0^inf [sin(ns/2) + sin((eps^2/4 - n/2)s)] / s * det[J_{i-j}(s/2)] ds"
_BALL_MC_REF = "fraction of Haar U(n) samples with ||U - 1||_F <= eps"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _need(args, name):
    value = getattr(args, name)
    if value is None:
        raise UsageError(f"--{name} is required for --group {args.group}")
    return value


def _clean(obj):
    # JSON-safe copy: numpy scalars to Python, non-finite floats to None
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if math.isfinite(v) else None
    return obj


def _dump(doc) -> str:
    return json.dumps(_clean(doc), sort_keys=True, indent=2, allow_nan=False) + "\n"


def _workers(args) -> int:
    if getattr(args, "workers", None):
        return max(1, args.workers)
    env = os.environ.get("HAARVOL_WORKERS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"HAARVOL_WORKERS must be an integer, got {env!r}")
    return os.cpu_count() or 1


def _seed(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}")
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--workers", type=int, default=None, help="threads for Monte Carlo blocks")

    parser = _Parser(prog="haarvol", description="Group and state-space volumes with numerical oracles.",
                     epilog=GRAMMAR, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    p = sub.add_parser("volume", parents=[common], help="closed-form volume")
    p.add_argument("--group", required=True, choices=sorted(_VOLUME_FORMULAS))
    p.add_argument("--n", type=int, required=True, help="size; the sphere dimension d for --group sphere")
    p.add_argument("--p", type=int)
    p.add_argument("--m", type=int)

    p = sub.add_parser("selberg", parents=[common], help="Selberg-type integral")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--gamma", type=float)
    p.add_argument("--variant", default="selberg", choices=list(_SELBERG_FORMULAS))
    p.add_argument("--K", type=int)
    p.add_argument("--lambda", dest="lam", type=float)

    p = sub.add_parser("ball-volume", parents=[common], help="Haar volume of a Frobenius ball in U(n)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--method", default="quadrature", choices=["quadrature", "mc"])
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    p.add_argument("--rel-tol", type=float, default=1e-6)

    p = sub.add_parser("sample", parents=[common], help="draw random matrices")
    p.add_argument("--kind", required=True,
                   choices=["ginibre-real", "ginibre-complex", "haar-orthogonal", "haar-unitary", "density-hs"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=_seed, required=True)
    p.add_argument("--out")
    p.add_argument("--format", default="json", choices=["json", "csv"])

    p = sub.add_parser("estimate", parents=[common], help="Monte Carlo estimate")
    p.add_argument("--target", required=True, choices=["ball", "det", "trace-square", "eigenangle-hist"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--eps", type=float)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=_seed, required=True)
    p.add_argument("--ensemble", choices=["wishart", "hs-density", "haar-unitary"],
                   help="ensemble for det / trace-square (default wishart / haar-unitary)")
    p.add_argument("--format", default="json", choices=["json", "csv"])

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--suite", required=True, choices=[*verify.SUITES, "all"])
    p.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    p.add_argument("--samples", type=int, default=100_000)
    return parser


def _cmd_volume(args):
    ref, fn = _VOLUME_FORMULAS[args.group]
    res = fn(args)
    params = {"group": args.group, "n": args.n, "p": args.p, "m": args.m}
    return params, res.as_dict(), ref, 0


def _cmd_selberg(args):
    v = args.variant
    params = {"variant": v, "N": args.N, "alpha": args.alpha, "beta": args.beta, "gamma": args.gamma}

    def need(*names):
        for name in names:
            if getattr(args, name) is None:
                flag = "--lambda" if name == "lam" else f"--{name}"
                raise UsageError(f"{flag} is required for --variant {v}")

    if v in ("selberg", "aomoto"):
        need("alpha", "beta", "gamma")
        p = selberg.SelbergParams(args.N, args.alpha, args.beta, args.gamma)
        if v == "selberg":
            value = selberg.selberg_integral(p)
        else:
            need("K")
            params["K"] = args.K
            value = selberg.aomoto_ratio(p, args.K)
    elif v == "laguerre":
        need("alpha", "gamma")
        value = selberg.laguerre_selberg(args.N, args.alpha, args.gamma)
    elif v == "hermite":
        need("gamma", "lam")
        params["lambda"] = args.lam
        value = selberg.hermite_selberg(args.N, args.gamma, args.lam)
    elif v == "simplex":
        need("alpha", "beta")
        value = selberg.simplex_constant(args.N, args.alpha, args.beta)
    else:
        need("alpha", "beta")
        value = selberg.fixed_trace_from_laguerre(args.N, args.alpha, args.beta)
    return params, value.as_dict(), _SELBERG_FORMULAS[v], 0


def _cmd_ball(args):
    params = {"n": args.n, "eps": args.eps, "method": args.method}
    if args.method == "mc":
        params.update(samples=args.samples, seed=args.seed)
        est = estimators.mc_ball_volume(args.n, args.eps, args.samples, args.seed, _workers(args))
        return params, est.as_dict(), _BALL_MC_REF, 0
    params["rel_tol"] = args.rel_tol
    q = ballvol.BallQuery(args.n, args.eps, rel_tol=args.rel_tol)
    r = ballvol.ball_volume(q)
    result = {
        "value": min(1.0, max(0.0, r.value)),
        "error_estimate": r.error_estimate,
        "s_final": r.s_final,
        "accelerator": r.accelerator,
    }
    return params, result, _BALL_REF, 0


_SAMPLERS = {
    "ginibre-real": ("real", lambda n, rng, c: sampling.ginibre(n, "real", rng, size=c)),
    "ginibre-complex": ("complex", lambda n, rng, c: sampling.ginibre(n, "complex", rng, size=c)),
    "haar-orthogonal": ("real", lambda n, rng, c: sampling.haar_orthogonal(n, rng, size=c)),
    "haar-unitary": ("complex", lambda n, rng, c: sampling.haar_unitary(n, rng, size=c)),
    "density-hs": ("complex", lambda n, rng, c: sampling.random_density_hs(n, rng, size=c)),
}


def _matrix_object(m, kind):
    m = np.asarray(m)
    return {
        "n": int(m.shape[0]),
        "kind": kind,
        "data": [[float(z.real), float(z.imag)] for z in m.ravel()],
    }


def write_matrices(stack, kind: str, fmt: str) -> str:
    """Serialize a ``(count, n, n)`` stack.

    JSON is the single-matrix object ``{"n", "kind", "data"}`` for one matrix
    and an array of such objects otherwise. CSV starts with a two-line header
    (``n,kind,count`` and its values) followed by one ``re,im`` row per entry,
    row-major, matrix after matrix.
    """
    stack = np.asarray(stack)
    if fmt == "json":
        objs = [_matrix_object(m, kind) for m in stack]
        return _dump(objs[0] if len(objs) == 1 else objs)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "kind", "count"])
    w.writerow([stack.shape[-1], kind, stack.shape[0]])
    for z in stack.ravel():
        w.writerow([repr(float(z.real)), repr(float(z.imag))])
    return buf.getvalue()


def read_matrices(text: str, fmt: str):
    """Inverse of :func:`write_matrices`. Returns ``(stack, kind)``."""
    if fmt == "json":
        doc = json.loads(text)
        objs = doc if isinstance(doc, list) else [doc]
        kind = objs[0]["kind"]
        mats = []
        for o in objs:
            d = np.array(o["data"], dtype=float)
            mats.append((d[:, 0] + 1j * d[:, 1]).reshape(o["n"], o["n"]))
        stack = np.array(mats)
    else:
        rows = list(csv.reader(io.StringIO(text)))
        n, kind, count = int(rows[1][0]), rows[1][1], int(rows[1][2])
        d = np.array(rows[2:], dtype=float)
        stack = (d[:, 0] + 1j * d[:, 1]).reshape(count, n, n)
    return (stack.real if kind == "real" else stack), kind


def _cmd_sample(args, stdout):
    if args.count < 1:
        raise DomainError("--count must be >= 1")
    kind, draw = _SAMPLERS[args.kind]
    stack = draw(args.n, sampling.RngStream(args.seed, 0), args.count)
    text = write_matrices(stack, kind, args.format)
    params = {"kind": args.kind, "n": args.n, "count": args.count, "seed": args.seed, "format": args.format}
    ref = f"{args.kind} samples from RngStream(seed, 0)"
    if args.out is None:
        if args.format == "csv":
            stdout.write(text)
            return None
        return params, {"matrices": json.loads(text)}, ref, 0
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(text)
    params["out"] = args.out
    digest = hashlib.sha256(text.encode()).hexdigest()
    return params, {"path": args.out, "sha256": digest, "count": args.count}, ref, 0


def _cmd_estimate(args, stdout):
    w = _workers(args)
    params = {"target": args.target, "n": args.n, "samples": args.samples, "seed": args.seed}
    if args.target == "ball":
        if args.eps is None:
            raise UsageError("--eps is required for --target ball")
        params["eps"] = args.eps
        est = estimators.mc_ball_volume(args.n, args.eps, args.samples, args.seed, w)
        return params, est.as_dict(), _BALL_MC_REF, 0
    if args.target == "eigenangle-hist":
        h = estimators.eigenangle_histogram(args.n, args.samples, args.seed, workers=w)
        if args.format == "csv":
            buf = io.StringIO()
            cw = csv.writer(buf, lineterminator="\n")
            cw.writerow(["left", "right", "count"])
            for lo, hi, c in zip(h.edges[:-1], h.edges[1:], h.counts):
                cw.writerow([repr(lo), repr(hi), c])
            stdout.write(buf.getvalue())
            return None
        return params, h.as_dict(), "marginal eigenangle density of Haar U(n) is 1/(2 pi)", 0
    default = "wishart" if args.target == "det" else "haar-unitary"
    ens = args.ensemble or default
    params["ensemble"] = ens
    name = {"wishart": "wishart_eigs", "hs-density": "hs_density_eigs", "haar-unitary": "haar_unitary_angles"}[ens]
    stat = "det" if args.target == "det" else "trace_square"
    est = estimators.mc_moment(name, stat, args.n, args.samples, args.seed, w)
    refs = {
        ("wishart", "det"): "E det X = n! for X = GG*, E|g|^2 = 1",
        ("hs-density", "det"): "E det rho under the HS measure",
        ("haar-unitary", "trace_square"): "E |tr U|^2 = 1 under Haar measure",
    }
    return params, est.as_dict(), refs.get((ens, stat), f"E {stat} over {ens}"), 0


def _cmd_verify(args):
    checks = verify.run_suite(args.suite, args.seed, args.samples, _workers(args))
    passed = all(c.passed for c in checks)
    params = {"suite": args.suite, "seed": args.seed, "samples": args.samples}
    result = {
        "all_passed": passed,
        "n_checks": len(checks),
        "n_failed": sum(not c.passed for c in checks),
        "checks": [c.as_dict() for c in checks],
    }
    return params, result, "closed forms vs oracle quadrature and Monte Carlo", 0 if passed else 3


def run(argv=None, stdout=None, stderr=None) -> int:
    """Parse ``argv``, execute the command and write its JSON output. Returns the exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    command = None
    doc = {"schema": SCHEMA, "command": None, "parameters": {}, "result": None, "paper_ref": ""}
    try:
        args = build_parser().parse_args(argv)
        command = args.command
        doc["command"] = command
        if command == "volume":
            out = _cmd_volume(args)
        elif command == "selberg":
            out = _cmd_selberg(args)
        elif command == "ball-volume":
            out = _cmd_ball(args)
        elif command == "sample":
            out = _cmd_sample(args, stdout)
        elif command == "estimate":
            out = _cmd_estimate(args, stdout)
        else:
            out = _cmd_verify(args)
        if out is None:
            return 0
        params, result, ref, code = out
        doc.update(parameters=params, result=result, paper_ref=ref, status="ok")
    except UsageError as exc:
        stderr.write(f"usage error: {exc}\n\n{GRAMMAR}")
        doc.update(status="usage_error", result={"message": str(exc)})
        code = 1
    except ConvergenceError as exc:
        stderr.write(f"convergence error: {exc}\n")
        doc.update(status="convergence_error",
                   result={"message": str(exc), "partial_value": exc.partial_value, "error_bound": exc.error_bound})
        code = 2
    except (DomainError, HaarvolError) as exc:
        stderr.write(f"domain error: {exc}\n")
        doc.update(status="domain_error", result={"message": str(exc)})
        code = 1
    stdout.write(_dump(doc))
    return code


def main() -> None:
    sys.exit(run())
