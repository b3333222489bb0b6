"""Map the regions of parameter space by critical-point count.

The number of critical points (8, 10, 12, or 14) changes across a
two-vaulted separatrix surface K = K*(rho, chi), whose vaults meet along a
cusp line.  This demo prints a coarse text map of the chi = -pi/2 plane
and samples the interior separatrix with its cusp.
"""

import numpy as np

from octupolar import cusp_location, k_star, region_scan
from octupolar.separatrix import g_function

chi = -np.pi / 2
samples = region_scan(chi, 24, 1.2, 16)
print(f"critical-point counts on the chi = -pi/2 plane "
      f"(rho right 0..2, K up 0..1.2; separatrix g overlaid as '*'):")
grid = {}
for s in samples:
    grid[(round(s.rho, 6), round(s.bigk, 6))] = s.count
rhos = sorted({r for r, _ in grid})
ks = sorted({k for _, k in grid})
for k in reversed(ks):
    row = ""
    for r in rhos:
        c = grid[(r, k)]
        near = abs(k - g_function(r)) < 1.2 / 16 / 2
        row += "*" if near else {10: ".", 12: "o", 14: "#"}.get(c, "?")
    print("  " + row)
print("  legend: . = 10   # = 14   * = near the boundary curve")

chi = -np.pi / 3
print(f"\ninterior separatrix at chi = -pi/3:")
for rho in (0.4, 0.8, 1.0, 1.1547, 1.4, 1.8):
    ks_ = k_star(rho, chi)
    print(f"  rho={rho:6.4f}: K* = {ks_.k:.6f}  (s* = {ks_.s_star:+.4f}, {ks_.branch})")
rho_c, k_c = cusp_location(chi)
print(f"  cusp at rho = {rho_c:.6f}, K = {k_c:.6f} "
      f"(closed form: rho = {-1 / np.sin(chi):.6f}, K = {np.sqrt((1 / np.sin(chi) ** 2 - 1) / 3):.6f})")
