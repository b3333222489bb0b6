"""Eigenpairs of an oriented traceless symmetric tensor.

The critical points of the cubic form on the unit sphere are the real
eigenpairs.  The solver walks the reduced parameter space (rho, chi, K):
the poles come for free, the x2 = 0 circle hosts the background family,
and everything else reduces to the roots of a single degree-six
polynomial.  The topology module classifies each point and checks that
the indices sum to 2.
"""

import numpy as np

from octupolar import OrientedParams, full_topology, solve_oriented

for label, p in [
    ("three-fold symmetric axis point", OrientedParams(0.0, -np.pi / 2, 0.5)),
    ("tetrahedral point", OrientedParams(0.0, -np.pi / 2, 1 / np.sqrt(2))),
    ("generic interior point", OrientedParams(1.2, -1.1, 0.9)),
    ("monkey-saddle circle", OrientedParams(1.0, -np.pi / 2, 0.0)),
]:
    sol = solve_oriented(p)
    rep = full_topology(p)
    print(f"\n{label}:  rho={p.rho}, chi={p.chi:+.4f}, K={p.bigk}")
    print(f"  {rep.total} critical points "
          f"({rep.n_max} maxima / {rep.n_min} minima / {rep.n_saddle} saddles), "
          f"index sum {rep.index_sum}")
    for q in sol.pairs:
        print(f"    lambda={q.lam:+.6f}  x=({q.x[0]:+.4f},{q.x[1]:+.4f},{q.x[2]:+.4f})"
              f"  [{q.branch}]")

# eigenvalues are exactly the values of the cubic form at its critical points
p = OrientedParams(1.2, -1.1, 0.9)
from octupolar import eval_potential, from_rho_chi_K
t = from_rho_chi_K(p)
q = solve_oriented(p).pairs[1]
print("\ncheck: phi(x) - lambda =", eval_potential(t, q.x) - q.lam)
