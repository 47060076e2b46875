"""Monte Carlo oracles behind the closed forms, and the command-line surface.

Run: python3 demos/05_oracles_and_cli.py
"""

import json
import math
import subprocess
import sys

from haarvol import estimators, volumes

print("Hit-or-miss volume of real trace-one PSD matrices vs the closed form:")
for n in (2, 3):
    est = estimators.mc_density_volume(n, "real", 100_000, seed=n)
    closed = volumes.density_set_volume_real(n).value.linear()
    print(f"  n={n}: MC {est.mean:.5f} +- {est.std_error:.1e}   formula {closed:.5f}   z = {est.zscore(closed):.2f}")

print("\nE det(GG*) = n! for complex Ginibre G with unit-variance entries:")
for n in (2, 4):
    est = estimators.mc_moment("wishart_eigs", "det", n, 100_000, seed=1)
    print(f"  n={n}: {est.mean:.3f} +- {est.std_error:.3f} (n! = {math.factorial(n)})")

print("\nWorker count only changes wall time, never the numbers:")
a = estimators.mc_ball_volume(3, 2.0, 100_000, seed=9, workers=1)
b = estimators.mc_ball_volume(3, 2.0, 100_000, seed=9, workers=8)
print(f"  1 worker {a.mean!r}   8 workers {b.mean!r}")

print("\nThe same numbers from the shell; every command prints one JSON document:")
for argv in (
    ["volume", "--group", "unitary", "--n", "2"],
    ["selberg", "--N", "2", "--alpha", "1", "--beta", "1", "--gamma", "1"],
    ["ball-volume", "--n", "1", "--eps", "1.4142135"],
):
    out = subprocess.run([sys.executable, "-m", "haarvol", *argv], capture_output=True, text=True)
    doc = json.loads(out.stdout)
    value = doc["result"].get("linear", doc["result"].get("value"))
    print(f"  haarvol {' '.join(argv)}\n      -> {value!r} [{doc['status']}, exit {out.returncode}]")
