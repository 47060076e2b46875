"""Closed-form volumes of groups and state spaces, kept in the log domain.

Run: python3 demos/01_group_volumes.py
"""

import math

from haarvol import volumes

print("Unitary groups grow, then collapse: vol(U(n)) peaks at n = 9.")
for n in (1, 2, 5, 9, 12, 18, 30, 60):
    lv = volumes.unitary_group_volume(n).value
    print(f"  n={n:>2}  log vol(U(n)) = {lv.log:12.4f}")

print("\nEach step multiplies by a sphere: vol(U(n+1)) = vol(S^(2n+1)) vol(U(n)).")
for n in (3, 7):
    step = volumes.unitary_group_volume(n + 1).value / volumes.unitary_group_volume(n).value
    print(f"  n={n}: ratio {step.linear():.10f}, sphere {volumes.sphere_volume(2 * n + 1).value.linear():.10f}")

print("\nThe qubit state space is the Bloch ball of radius 1/sqrt(2) in the HS metric:")
r = 1 / math.sqrt(2)
print(f"  vol_HS(D(C^2))   = {volumes.density_set_volume(2, 'hs').value.linear():.15f}")
print(f"  (4/3) pi r^3     = {4 / 3 * math.pi * r**3:.15f}")
print(f"  boundary area    = {volumes.boundary_hyperarea_hs(2).value.linear():.15f}")
print(f"  4 pi r^2         = {4 * math.pi * r**2:.15f}")

print("\nState spaces shrink fast. Gamma(n^2) in the denominator overflows a double once")
print("n^2 > 171, so everything is carried as a log with a sign (linear underflows to 0):")
for n in (3, 8, 20, 40):
    d = volumes.density_set_volume(n, "hs").as_dict()
    print(f"  n={n:>2}  log vol_HS = {d['log']:12.4f}   linear = {d['linear']}")

print("\nReal density matrices: the qutrit value differs from Monte Carlo unless the")
print("denominator is Gamma(n(n+1)/2); see demos/05 for the hit-or-miss check.")
for n in (2, 3, 4):
    print(f"  vol(D(R^{n})) = {volumes.density_set_volume_real(n).value.linear():.8f}")
