"""Selberg-type integrals: closed forms checked against brute-force quadrature.

Run: python3 demos/02_selberg_family.py
"""

import math

from haarvol import estimators, selberg
from haarvol.selberg import SelbergParams

print("S_N(alpha, beta, gamma) = int_[0,1]^N prod x^(a-1)(1-x)^(b-1) |Delta|^(2g) dx")
for args in [(2, 1, 1, 1), (3, 1, 1, 1), (2, 2, 1, 0.5), (3, 2, 3, 0.5)]:
    p = SelbergParams(*args)
    closed = selberg.selberg_integral(p).linear()
    brute = estimators.brute_force_selberg(p, 96)
    print(f"  {args}: closed {closed:.12g}  quadrature {brute:.12g}  rel diff {abs(closed - brute) / closed:.1e}")

p = SelbergParams(3, 2, 1, 0.5)
mc = estimators.mc_aomoto_moment(p, 1, 100_000, 1)
print(f"\nAomoto: <x_1> under the Selberg density {p}")
print(f"  product formula {selberg.aomoto_ratio(p, 1).linear():.6f}, rejection MC {mc.mean:.6f} +- {mc.std_error:.1e}")

print("\nAs beta grows the Selberg weight (1-x)^beta becomes exp(-L x), giving the Laguerre form.")
N, a, g = 3, 2.0, 0.5
lag = selberg.laguerre_selberg(N, a, g)
for L in (1e2, 1e3, 1e4):
    M = L + (1 + a) / 2 + g * (N - 1)
    s = selberg.selberg_integral(SelbergParams(N, a, L + 1, g)).log + (a * N + g * N * (N - 1)) * math.log(M)
    print(f"  L={L:>7g}: ratio to Laguerre {math.exp(s - lag.log):.10f}")

print("\nThe fixed-trace (simplex) constant three ways:")
for N, a, b in [(2, 1, 2), (3, 1, 2), (3, 2, 1)]:
    direct = selberg.simplex_constant(N, a, b).linear()
    bridge = selberg.fixed_trace_from_laguerre(N, a, b).linear()
    brute = estimators.brute_force_simplex(N, a, b)
    print(f"  N={N} a={a} b={b}: product {direct:.10g}  Laplace bridge {bridge:.10g}  quadrature {brute:.10g}")
