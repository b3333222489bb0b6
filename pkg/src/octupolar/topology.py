"""
Classification of critical points on the sphere and global index bookkeeping.

A critical point is classified by the two eigenvalues of the tangential
Hessian P (6 A x - 3 lam I) P; when either is negligible the topological
index comes from the winding number of the normalized surface gradient
around a small circle.  The indices of all critical points must sum to 2,
the Euler characteristic of the sphere.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _optim
from .eigen import Eigenpair, solve_oriented
from .potential import OrientedParams, from_rho_chi_K
from .tensors import as_array

__all__ = ["CriticalPoint", "TopologyReport", "classify", "full_topology",
           "oracle_critical_points"]

KINDS = ("maximum", "minimum", "saddle", "degenerate_saddle", "monkey_saddle")

_DEGEN_REL = 1e-7


@dataclass(frozen=True)
class CriticalPoint:
    x: np.ndarray
    lam: float
    kind: str
    index: int
    hessian_eigs: tuple[float, float]

    def antipode(self) -> "CriticalPoint":
        swap = {"maximum": "minimum", "minimum": "maximum"}
        return CriticalPoint(x=-self.x, lam=-self.lam,
                             kind=swap.get(self.kind, self.kind),
                             index=self.index,
                             hessian_eigs=tuple(-h for h in self.hessian_eigs[::-1]))


@dataclass(frozen=True)
class TopologyReport:
    params: OrientedParams | None
    points: tuple
    index_sum: int
    counts: dict
    continuum: bool = False

    @property
    def total(self) -> int:
        return len(self.points)

    @property
    def n_max(self) -> int:
        return self.counts.get("maximum", 0)

    @property
    def n_min(self) -> int:
        return self.counts.get("minimum", 0)

    @property
    def n_saddle(self) -> int:
        return sum(self.counts.get(k, 0)
                   for k in ("saddle", "degenerate_saddle", "monkey_saddle"))


def _tangent_basis(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    a = np.array([0.0, 0.0, 1.0]) if abs(x[2]) < 0.9 else np.array([1.0, 0.0, 0.0])
    u = np.cross(x, a)
    u /= np.linalg.norm(u)
    return u, np.cross(x, u)


def _winding_index(a: np.ndarray, x: np.ndarray, radius: float = 1e-3,
                   samples: int = 720) -> int:
    """Winding number of the normalized surface gradient around x."""
    u, v = _tangent_basis(x)
    th = 2.0 * np.pi * np.arange(samples) / samples
    pts = (np.cos(radius) * x[None, :]
           + np.sin(radius) * (np.cos(th)[:, None] * u + np.sin(th)[:, None] * v))
    pts /= np.linalg.norm(pts, axis=1)[:, None]
    grad = 3.0 * np.einsum("ijk,nj,nk->ni", a, pts, pts)
    sgrad = grad - np.einsum("ni,ni->n", grad, pts)[:, None] * pts
    gu = sgrad @ u
    gv = sgrad @ v
    ang = np.unwrap(np.arctan2(gv, gu))
    closing = np.arctan2(gv[0], gu[0]) - ang[-1]
    closing = (closing + np.pi) % (2.0 * np.pi) - np.pi
    total = (ang[-1] - ang[0]) + closing
    return int(np.rint(total / (2.0 * np.pi)))


def classify(t, pair: Eigenpair | tuple) -> CriticalPoint:
    """Classify one critical point of the cubic form restricted to the sphere."""
    a = as_array(t)
    if isinstance(pair, Eigenpair):
        x, lam = np.asarray(pair.x, dtype=float), float(pair.lam)
    else:
        x, lam = np.asarray(pair[0], dtype=float), float(pair[1])
    scale = max(float(np.max(np.abs(a))), 1e-300)
    res = float(np.max(np.abs(np.einsum("ijk,jk->i", a, np.outer(x, x)) - lam * x)))
    if res > 1e-6 * max(1.0, scale):
        raise ValueError(f"point is not critical (residual {res:.2e})")
    u, v = _tangent_basis(x)
    h = 6.0 * np.einsum("ijk,k->ij", a, x) - 3.0 * lam * np.eye(3)
    m2 = np.array([[u @ h @ u, u @ h @ v], [v @ h @ u, v @ h @ v]])
    h1, h2 = np.linalg.eigvalsh(m2)
    big = max(abs(h1), abs(h2))
    hscale = 6.0 * scale
    both_degenerate = big <= _DEGEN_REL * hscale
    one_degenerate = min(abs(h1), abs(h2)) <= _DEGEN_REL * big if big > 0 else True
    if both_degenerate or one_degenerate:
        idx = _winding_index(a, x)
        if idx == 1:
            kind = "maximum" if (h1 + h2) < 0 else "minimum"
        elif idx == -1:
            kind = "saddle"
        elif idx == -2 and both_degenerate:
            kind = "monkey_saddle"
        else:
            kind = "degenerate_saddle"
        return CriticalPoint(x=x, lam=lam, kind=kind, index=idx,
                             hessian_eigs=(float(h1), float(h2)))
    if h2 < 0:
        kind, idx = "maximum", 1
    elif h1 > 0:
        kind, idx = "minimum", 1
    else:
        kind, idx = "saddle", -1
    return CriticalPoint(x=x, lam=lam, kind=kind, index=idx,
                         hessian_eigs=(float(h1), float(h2)))


def _report(points, params, continuum) -> TopologyReport:
    counts: dict = {}
    for pt in points:
        counts[pt.kind] = counts.get(pt.kind, 0) + 1
    index_sum = sum(pt.index for pt in points)
    if not continuum and index_sum != 2:
        raise RuntimeError(f"index sum {index_sum} != 2; classification inconsistent")
    return TopologyReport(params=params, points=tuple(points),
                          index_sum=index_sum, counts=counts, continuum=continuum)


def full_topology(p: OrientedParams) -> TopologyReport:
    """Solve and classify every critical point (both antipodal partners)."""
    sol = solve_oriented(p)
    a = from_rho_chi_K(p).array
    points = []
    for pair in sol.pairs:
        cp = classify(a, pair)
        points.append(cp)
        points.append(cp.antipode())
    return _report(points, p, sol.continuum)


def oracle_critical_points(t, samples: int = 100_000) -> TopologyReport:
    """Independent dense-sampling search, classified like the solver output.

    Fibonacci-sphere seeding with projected-gradient warm-up and batched
    Newton refinement; clusters of near-critical scatter around degenerate
    points are merged through a midpoint-criticality test.
    """
    if samples < 1000:
        raise ValueError("use at least 1000 samples")
    a = as_array(t)
    classes, continuum = _optim.find_critical_classes(a, samples=samples)
    points = []
    for x, lam in classes:
        cp = classify(a, (x, lam))
        points.append(cp)
        points.append(cp.antipode())
    if continuum:
        return TopologyReport(params=None, points=tuple(points),
                              index_sum=sum(p.index for p in points),
                              counts={}, continuum=True)
    return _report(points, None, continuum)
