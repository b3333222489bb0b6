"""
Real generalized eigenpairs of an oriented traceless symmetric tensor.

The critical points of the cubic form on the unit sphere split into the
poles, the "background" family on the great circle x2 = 0, and all
remaining points, which map to roots of a single-variable polynomial of
degree six in s = x1/x2 (with t = x3/x2 recovered from a quotient that is
linear in t).  The symmetry planes of the reduced parameter space need
their own lower-degree branches; every branch below was checked against a
dense numerical search.

For a tensor that is only symmetric in its last two indices the analogous
objects are the stationary pairs of the bilinear form x . A[y (x) y]; these
feed the incremental rank-one approximation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _optim
from .potential import OrientedParams, canonicalize_params, from_rho_chi_K, rotation_z
from .tensors import as_array

__all__ = [
    "Eigenpair",
    "WalcherPoly",
    "EigenSolution",
    "CEigenTriple",
    "walcher_coefficients",
    "walcher_split",
    "real_roots",
    "solve_oriented",
    "count_bound",
    "c_eigenpairs",
    "best_rank_one",
    "incremental_rank_one",
]

_TOL_PLANE = 1e-11       # membership thresholds for K = 0
_TOL_CHI = 1e-7          # membership of the chi symmetry planes and the axis;
                         # closer than this the generic quotient loses all
                         # precision, while the plane solver plus one Newton
                         # polish recovers the true points
_TOL_SNAP = 1e-12        # relative snap of near-zero discriminants
_RESIDUAL_TOL = 1e-9


@dataclass(frozen=True)
class Eigenpair:
    """One antipodal class (lam, x) with A x^2 = lam x and |x| = 1.

    Only the representative with x3 > 0 (ties: x1 > 0, then x2 > 0) is
    stored; the conjugate (-lam, -x) is implied.
    """

    lam: float
    x: np.ndarray
    branch: str
    multiplicity_hint: int = 1

    def conjugate(self) -> tuple[float, np.ndarray]:
        return (-self.lam, -self.x)


@dataclass(frozen=True)
class WalcherPoly:
    """Degree-six reduction polynomial; coefficients ascending in s.

    ``spurious_roots`` holds (s_minus, s_plus), the zeros of the quotient
    denominator; only s_plus can contaminate the root set, and only on the
    rho = 2 boundary where the polynomial itself vanishes there.
    """

    s_coeffs: np.ndarray
    spurious_roots: tuple[float, float]

    def __call__(self, s):
        return np.polyval(self.s_coeffs[::-1], s)

    def derivative_coeffs(self) -> np.ndarray:
        c = self.s_coeffs
        return np.array([i * c[i] for i in range(1, len(c))])


def walcher_split(rho: float, chi: float) -> tuple[np.ndarray, np.ndarray]:
    """Coefficient arrays (b, c) with S_i = K^2 b_i + c_i, ascending in s."""
    co, si = np.cos(chi), np.sin(chi)
    b = np.array([
        0.0,
        -6.0 * rho * co,
        6.0 * (rho * si + 6.0),
        -4.0 * rho * co,
        4.0 * (rho * si - 6.0),
        2.0 * rho * co,
        2.0 * (2.0 - rho * si),
    ])
    c = np.array([
        -rho ** 2 * co ** 2 * (1.0 + rho * si),
        2.0 * rho ** 2 * co * (3.0 * rho * co ** 2 - 2.0 * si - 2.0 * rho),
        5.0 * rho ** 2 * co ** 2 * (3.0 * rho * si + 1.0) - 4.0 * rho ** 2 * (1.0 + rho * si),
        4.0 * rho ** 3 * co * (4.0 - 5.0 * co ** 2),
        5.0 * rho ** 2 * co ** 2 * (1.0 - 3.0 * rho * si) + 4.0 * rho ** 2 * (rho * si - 1.0),
        2.0 * rho ** 2 * co * (3.0 * rho * co ** 2 + 2.0 * si - 2.0 * rho),
        rho ** 2 * co ** 2 * (rho * si - 1.0),
    ])
    return b, c


def walcher_coefficients(p: OrientedParams) -> WalcherPoly:
    """Reduction-polynomial coefficients at the given parameters."""
    b, c = walcher_split(p.rho, p.chi)
    s = b * p.bigk ** 2 + c
    tn, sc = np.tan(p.chi), 1.0 / np.cos(p.chi)
    return WalcherPoly(s_coeffs=s, spurious_roots=(tn - sc, tn + sc))


def real_roots(coeffs, realness: float = 1e-8, cluster: float = 1e-6):
    """Real roots with multiplicities of a polynomial (ascending coefficients).

    Roots come from the eigenvalues of the companion matrix; a root is
    accepted as real when |Im| <= realness * (1 + |Re|) and nearby reals are
    clustered (radius ``cluster`` after normalizing the coefficients).
    Returns a list of (root, multiplicity) sorted ascending.
    """
    c = np.asarray(coeffs, dtype=float)
    if c.size == 0 or not np.any(c != 0.0):
        raise ValueError("polynomial is identically zero")
    scale = np.max(np.abs(c))
    c = c / scale
    hi = c.size
    while hi > 1 and abs(c[hi - 1]) <= 1e-12:
        hi -= 1
    lo = 0
    while lo < hi - 1 and abs(c[lo]) <= 1e-12:
        lo += 1
    out = []
    if lo > 0:
        out.append([0.0, lo])
    poly = c[lo:hi]
    if poly.size > 1:
        roots = np.roots(poly[::-1])
        reals = sorted(float(r.real) for r in roots
                       if abs(r.imag) <= realness * (1.0 + abs(r.real)))
        for r in reals:
            if out and out[-1][1] > 0 and abs(r - out[-1][0] * 1.0) <= cluster * (1.0 + abs(r)) \
                    and not (out[-1][0] == 0.0 and lo > 0 and len(out) == 1 and abs(r) > cluster):
                k = out[-1][1]
                out[-1][0] = (out[-1][0] * k + r) / (k + 1)
                out[-1][1] = k + 1
            else:
                out.append([r, 1])
    out.sort(key=lambda rm: rm[0])
    merged = []
    for r, m in out:
        if merged and abs(r - merged[-1][0]) <= cluster * (1.0 + abs(r)):
            k = merged[-1][1]
            merged[-1][0] = (merged[-1][0] * k + r * m) / (k + m)
            merged[-1][1] = k + m
        else:
            merged.append([r, m])
    return [(r, m) for r, m in merged]


def count_bound(r: int, n: int) -> int:
    """Upper bound ((r-1)^n - 1)/(r-2) on equivalence classes of eigenvalues."""
    if r <= 2:
        raise ValueError("rank r must exceed 2")
    if n < 1:
        raise ValueError("n must be positive")
    return ((r - 1) ** n - 1) // (r - 2)


@dataclass(frozen=True)
class EigenSolution:
    """All stored eigenpair classes at one parameter point."""

    params: OrientedParams
    pairs: tuple
    continuum: bool = False

    @property
    def critical_point_total(self) -> int:
        return 2 * len(self.pairs)

    def to_report(self) -> dict:
        return {
            "params": {"rho": self.params.rho, "chi": self.params.chi,
                       "K": self.params.bigk},
            "pairs": [{"lambda": p.lam, "x": list(map(float, p.x)),
                       "branch": p.branch, "multiplicity": p.multiplicity_hint}
                      for p in self.pairs],
            "critical_point_total": self.critical_point_total,
            "continuum": self.continuum,
        }


# ---------------------------------------------------------------------------
# branch solvers; all work in the canonical sector and return raw entries
# (x_unit, branch, multiplicity) in that frame, poles excluded
# ---------------------------------------------------------------------------

def _entry_from_st(s: float, t: float, branch: str, mult: int = 1):
    n = np.sqrt(1.0 + s * s + t * t)
    return (np.array([s, 1.0, t]) / n, branch, mult)


def _quad_roots(a: float, b: float, c: float, snap: float = _TOL_SNAP):
    """Roots of a x^2 + b x + c with a relative snap of tiny discriminants.

    Returns (roots, multiplicity) pairs; a discriminant within snap of zero
    collapses to a double root, which keeps exactly-on-boundary parameter
    evaluations from losing their coalesced solutions to round-off.
    """
    if abs(a) <= 1e-300:
        if abs(b) <= 1e-300:
            return []
        return [(-c / b, 1)]
    disc = b * b - 4.0 * a * c
    scale = b * b + 4.0 * abs(a * c) + 1e-300
    if abs(disc) <= snap * scale:
        return [(-b / (2.0 * a), 2)]
    if disc < 0.0:
        return []
    sq = np.sqrt(disc)
    return [((-b - sq) / (2.0 * a), 1), ((-b + sq) / (2.0 * a), 1)]


def _solve_axis(k: float):
    """rho = 0, K > 0: three-fold symmetric family about the polar axis."""
    out = []
    for t, m in _quad_roots(2.0, -k, -0.5):
        out.append(_entry_from_st(0.0, t, "axis-meridian", m))
    for t, m in _quad_roots(1.0, k, -1.0):
        for s in (np.sqrt(3.0), -np.sqrt(3.0)):
            out.append(_entry_from_st(s, t, "axis-offset", m))
    return out, False


def _disk_coeffs(rho, chi, s):
    co, si = np.cos(chi), np.sin(chi)
    c2 = rho * si + 2.0 - rho * co * s
    c0 = 0.5 * (rho * si - 1.0) * s * s + rho * co * s - 0.5 * (rho * si + 1.0)
    return c2, c0


def _solve_disk_interior(rho: float, chi: float):
    """K = 0, chi away from -pi/2: equatorial roots plus two vertical lines."""
    out = []
    co, si = np.cos(chi), np.sin(chi)
    # t = 0 branch: quadratic in s with discriminant rho^2 - 1
    a = 0.5 * (rho * si - 1.0)
    for s, m in _quad_roots(a, rho * co, -0.5 * (rho * si + 1.0)):
        out.append(_entry_from_st(s, 0.0, "disk-equator", m))
    # vertical lines where the t-linear factor vanishes: s = tan chi +/- sec chi
    for s in (np.tan(chi) + 1.0 / co, np.tan(chi) - 1.0 / co):
        c2, c0 = _disk_coeffs(rho, chi, s)
        if abs(c2) <= 1e-12 * (abs(c0) + 1.0):
            continue  # the quadratic degenerates (rho = 2 line); no solutions
        t2 = -c0 / c2
        scale = abs(c0 / c2) + 1.0
        if t2 > _TOL_SNAP * scale:
            tq = np.sqrt(t2)
            out.append(_entry_from_st(s, tq, "disk-vertical"))
            out.append(_entry_from_st(s, -tq, "disk-vertical"))
        elif abs(t2) <= _TOL_SNAP * scale:
            out.append(_entry_from_st(s, 0.0, "disk-vertical", 2))
    return out, False


def _background_pi2(rho: float):
    x1 = np.sqrt(2.0 * (rho + 2.0) / (5.0 + 3.0 * rho))
    x3 = np.sqrt((rho + 1.0) / (5.0 + 3.0 * rho))
    return [(np.array([x1, 0.0, x3]), "background", 1),
            (np.array([-x1, 0.0, x3]), "background", 1)]


def _solve_disk_pi2(rho: float):
    """chi = -pi/2, K = 0: meridian and equator roots plus the background."""
    out = []
    for t, m in _quad_roots(2.0 - rho, 0.0, 0.5 * (rho - 1.0)):
        out.append(_entry_from_st(0.0, t, "disk-meridian", m))
    s2 = (rho - 1.0) / (rho + 1.0)
    if s2 > _TOL_SNAP:
        out.append(_entry_from_st(np.sqrt(s2), 0.0, "disk-equator"))
        out.append(_entry_from_st(-np.sqrt(s2), 0.0, "disk-equator"))
    elif abs(rho - 1.0) <= _TOL_SNAP * (rho + 1.0):
        out.append(_entry_from_st(0.0, 0.0, "disk-equator", 2))
    out.extend(_background_pi2(rho))
    return out, False


def _solve_chi_pi2(rho: float, k: float):
    """chi = -pi/2, K > 0."""
    out = []
    if abs(rho - 2.0) <= _TOL_PLANE:
        out.append(_entry_from_st(0.0, (rho - 1.0) / (2.0 * k), "pi2-meridian"))
    else:
        for t, m in _quad_roots(2.0 - rho, -k, 0.5 * (rho - 1.0)):
            out.append(_entry_from_st(0.0, t, "pi2-meridian", m))
    a = k * k * (rho + 2.0)
    b = -2.0 * k * k * (rho + 6.0) - 2.0 * rho ** 2 * (rho + 1.0)
    c = 3.0 * k * k * (6.0 - rho) + 2.0 * rho ** 2 * (rho - 1.0)
    for sig, m in _quad_roots(a, b, c):
        if sig <= _TOL_SNAP * (1.0 + abs(sig)):
            continue
        s = np.sqrt(sig)
        t = k * (sig - 3.0) / (2.0 * rho)
        out.append(_entry_from_st(s, t, "pi2-biquad", m))
        out.append(_entry_from_st(-s, t, "pi2-biquad", m))
    return out, False


def _solve_chi_pi6(rho: float, k: float):
    """chi = -pi/6, K > 0, handled in the frame rotated by 2 pi/3.

    In that frame the parameters read (rho, pi/2, K); the solutions are
    rotated back by Rz(4 pi/3) at the end.
    """
    out = []
    continuum = False
    for t, m in _quad_roots(rho + 2.0, -k, -0.5 * (rho + 1.0)):
        out.append((_entry_from_st(0.0, t, "pi6-meridian", m), t))
    branch = []
    if abs(rho - 2.0) <= _TOL_PLANE:
        if abs(k - 1.0) <= _TOL_PLANE:
            continuum = True
            # the whole t = K(3 - s^2)/(2 rho) curve is critical; only the
            # meridian root off that curve stays isolated
            t_orbit = 3.0 * k / (2.0 * rho)
            out = [(e, t) for e, t in out if abs(t - t_orbit) > 1e-9]
        else:
            for s in (np.sqrt(3.0), -np.sqrt(3.0)):
                branch.append((s, 0.0, 1))
    else:
        a = k * k * (rho - 2.0)
        b = 2.0 * (k * k * (6.0 - rho) + rho ** 2 * (1.0 - rho))
        c = -3.0 * k * k * (6.0 + rho) + 2.0 * rho ** 2 * (1.0 + rho)
        for sig, m in _quad_roots(a, b, c):
            if sig <= _TOL_SNAP * (1.0 + abs(sig)):
                continue
            s = np.sqrt(sig)
            t = k * (3.0 - sig) / (2.0 * rho)
            branch.append((s, t, m))
            branch.append((-s, t, m))
    for s, t, m in branch:
        out.append((_entry_from_st(s, t, "pi6-biquad", m), t))
    rot = rotation_z(4.0 * np.pi / 3.0)
    rotated = [((rot @ x, br, m)) for (x, br, m), _ in out]
    return rotated, continuum


def _solve_generic(rho: float, chi: float, k: float):
    """Interior of the sector: the degree-six reduction polynomial."""
    out = []
    b, c = walcher_split(rho, chi)
    coeffs = b * k * k + c
    scale = np.max(np.abs(coeffs))
    co, si = np.cos(chi), np.sin(chi)

    def t_of(s):
        q = rho * (co * (s * s - 1.0) - 2.0 * s * si)
        return k * s * (s * s - 3.0) / q

    def _pv(cf, s):
        return float(np.polyval(cf[::-1], s))

    def _pvscale(cf, s):
        return float(np.polyval(np.abs(cf)[::-1], abs(s))) + 1e-300

    s_plus = np.tan(chi) + 1.0 / co
    w_plus_small = abs(_pv(coeffs, s_plus)) <= 1e-10 * _pvscale(coeffs, s_plus)
    work = coeffs
    if abs(rho - 2.0) <= 1e-9 and w_plus_small:
        # the boundary keeps a permanent root annihilating the quotient
        # denominator; divide it out so its genuine neighbours stay sharp
        deflated = np.zeros(6)
        carry = 0.0
        for i in range(6, 0, -1):
            carry = work[i] + s_plus * carry
            deflated[i - 1] = carry
        work = deflated
        scale = np.max(np.abs(work))
    deg6_lost = abs(coeffs[6]) <= 1e-10 * np.max(np.abs(coeffs))
    hi = len(work)
    while hi > 1 and abs(work[hi - 1]) <= 1e-10 * scale:
        hi -= 1
    lo = 0
    while lo < hi - 1 and abs(work[lo]) <= 1e-10 * scale:
        lo += 1
    if lo > 0:
        out.append(_entry_from_st(0.0, t_of(0.0), "walcher", lo))
    red = work[lo:hi] / scale
    roots = np.roots(red[::-1]) if red.size > 1 else np.array([])
    wval = lambda s: _pv(work, s)
    wscale = lambda s: _pvscale(work, s)
    dercoeffs = np.array([i * work[i] for i in range(1, len(work))])
    der2coeffs = np.array([i * dercoeffs[i] for i in range(1, len(dercoeffs))])

    def stationary_near(s0: float) -> float:
        for _ in range(40):
            dp = float(np.polyval(dercoeffs[::-1], s0))
            ddp = float(np.polyval(der2coeffs[::-1], s0))
            if ddp == 0.0:
                break
            step = dp / ddp
            s0 -= step
            if abs(step) < 1e-14 * (1.0 + abs(s0)):
                break
        return s0

    # pair up coalescing roots (real pairs or conjugate pairs); a pair is a
    # genuine double root when the polynomial nearly vanishes at the nearby
    # stationary point of itself
    n_roots = len(roots)
    used = np.zeros(n_roots, dtype=bool)
    clustered: list[list] = []
    for i in range(n_roots):
        if used[i]:
            continue
        best_j, best_d = -1, np.inf
        for j in range(n_roots):
            if j == i or used[j]:
                continue
            d = abs(roots[i] - roots[j])
            if d < best_d:
                best_j, best_d = j, d
        if best_j >= 0 and best_d <= 1e-5 * (1.0 + abs(roots[i])):
            s0 = stationary_near(float(roots[i].real))
            if abs(wval(s0)) <= 1e-9 * wscale(s0):
                used[i] = used[best_j] = True
                clustered.append([s0, 2])
                continue
        used[i] = True
        if abs(roots[i].imag) <= 1e-9 * (1.0 + abs(roots[i].real)):
            clustered.append([float(roots[i].real), 1])
    clustered.sort(key=lambda rm: rm[0])
    for r, m in clustered:
        if abs(rho - 2.0) <= 1e-9 and w_plus_small and abs(r - s_plus) <= 1e-8 * (1.0 + abs(s_plus)):
            continue  # spurious root annihilating the quotient denominator
        if m >= 2:
            qv = rho * (co * (r * r - 1.0) - 2.0 * r * si)
            qscale = rho * (abs(co) * (r * r + 1.0) + 2.0 * abs(r * si)) + 1e-300
            if abs(qv) <= 1e-6 * qscale:
                # near a zero of the quotient denominator the "double root"
                # is really two solutions with distinct t at (almost) one s
                c2q = rho * si + 2.0 - rho * co * r
                c1q = k * (r * r - 1.0)
                c0q = 0.5 * (rho * si - 1.0) * r * r + rho * co * r - 0.5 * (rho * si + 1.0)
                for t, mt in _quad_roots(c2q, c1q, c0q):
                    out.append(_entry_from_st(r, t, "walcher", mt))
                continue
        out.append(_entry_from_st(r, t_of(r), "walcher", m))
    if deg6_lost:
        # degree dropped: the lost roots migrate to the x2 = 0 great circle
        x1 = np.sqrt(2.0 * (2.0 - rho * si) / (5.0 - 3.0 * rho * si))
        x3 = np.sqrt((1.0 - rho * si) / (5.0 - 3.0 * rho * si))
        out.append((np.array([x1, 0.0, x3]), "background", 1))
    return out, False


def solve_oriented(p: OrientedParams, polish: bool = True) -> EigenSolution:
    """All stored eigenpair classes of the oriented tensor at ``p``.

    Parameters anywhere in the cylinder (rho in [0, 2], chi in [-pi, pi],
    any real K) are first reduced to the canonical sector; solutions are
    mapped back to the requested frame.  The poles are always included.
    The continuum flag marks the two axisymmetric parameter points, whose
    isolated classes are still listed.
    """
    canon, op, _mirrored = canonicalize_params(p.rho, p.chi, p.bigk)
    rho, chi, k = canon.rho, canon.chi, canon.bigk
    if rho <= _TOL_CHI and k <= _TOL_PLANE:
        entries, continuum = [], True
    elif rho <= _TOL_CHI:
        entries, continuum = _solve_axis(k)
    elif k <= _TOL_PLANE:
        if abs(chi + np.pi / 2) <= _TOL_CHI:
            entries, continuum = _solve_disk_pi2(rho)
        else:
            entries, continuum = _solve_disk_interior(rho, chi)
    elif abs(chi + np.pi / 2) <= _TOL_CHI:
        entries, continuum = _solve_chi_pi2(rho, k)
    elif abs(chi + np.pi / 6) <= _TOL_CHI:
        entries, continuum = _solve_chi_pi6(rho, k)
    else:
        entries, continuum = _solve_generic(rho, chi, k)

    a_user = from_rho_chi_K(p).array
    back = op.T
    raw = [(np.array([0.0, 0.0, 1.0]), "pole", 1)] + list(entries)
    points = []
    for x, branch, mult in raw:
        xu = back @ x
        xu = xu / np.linalg.norm(xu)
        lam = float(np.einsum("ijk,i,j,k->", a_user, xu, xu, xu))
        points.append((xu, lam, (branch, mult)))
    points = _optim.dedupe_classes(points, tol=1e-8)

    pairs = []
    for x, lam, (branch, mult) in points:
        res = float(np.max(np.abs(np.einsum("ijk,jk->i", a_user, np.outer(x, x)) - lam * x)))
        if res > 1e-11 and polish:
            xr, lr = _optim.newton_refine(a_user, x[None, :], np.array([lam]), iters=30)
            x, lam = xr[0], float(lr[0])
            res = float(np.max(np.abs(np.einsum("ijk,jk->i", a_user, np.outer(x, x)) - lam * x)))
        if res > _RESIDUAL_TOL:
            raise RuntimeError(f"eigenpair residual {res:.2e} exceeds tolerance on branch {branch}")
        xc, lc = _optim.canonical_rep(x, lam)
        pairs.append(Eigenpair(lam=float(lc), x=xc, branch=branch, multiplicity_hint=mult))
    # a polish step may have pulled plane-adjacent duplicates together
    final = _optim.dedupe_classes([(q.x, q.lam, (q.branch, q.multiplicity_hint))
                                   for q in pairs], tol=1e-8)
    pairs = [Eigenpair(lam=float(l), x=x, branch=b, multiplicity_hint=m)
             for x, l, (b, m) in final]
    pairs.sort(key=lambda e: (-e.lam, -round(e.x[0], 12), -round(e.x[1], 12)))
    return EigenSolution(params=p, pairs=tuple(pairs), continuum=continuum)


# ---------------------------------------------------------------------------
# stationary pairs of the bilinear form for last-two-index symmetric tensors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CEigenTriple:
    """Stationary value with left vector x and right vector y.

    The variants (lam, x, -y), (-lam, -x, y), (-lam, -x, -y) are implied.
    """

    lam: float
    x: np.ndarray
    y: np.ndarray


def _check_piezo(a: np.ndarray, tol: float = 1e-10) -> None:
    scale = max(float(np.max(np.abs(a))), 1e-300)
    if np.max(np.abs(a - np.transpose(a, (0, 2, 1)))) > tol * scale:
        raise ValueError("tensor must be symmetric in its last two indices")


def c_eigenpairs(t, starts: int = 64) -> list[CEigenTriple]:
    """Stationary triples of x . A[y (x) y] by multi-start alternating ascent.

    The x-step normalizes A : y (x) y; the y-step takes the top eigenvector
    of the symmetric matrix x . A.  Converged triples are deduplicated up
    to the sign family and returned with lam >= 0, sorted descending.
    """
    a = as_array(t)
    _check_piezo(a)
    if starts < 1:
        raise ValueError("starts must be at least 1")
    seeds = _optim.fibonacci_sphere(starts)
    found: list[CEigenTriple] = []
    norm_a = float(np.sqrt(np.einsum("ijk,ijk->", a, a))) or 1.0
    for y in seeds:
        lam_prev = -np.inf
        x = None
        for _ in range(500):
            cvec = np.einsum("ijk,j,k->i", a, y, y)
            nc = np.linalg.norm(cvec)
            if nc < 1e-14 * norm_a:
                break
            x = cvec / nc
            bmat = np.einsum("i,ijk->jk", x, a)
            w, v = np.linalg.eigh(bmat)
            y = v[:, -1]
            lam = float(w[-1])
            if abs(lam - lam_prev) <= 1e-15 * (1.0 + abs(lam)):
                break
            lam_prev = lam
        if x is None:
            continue
        lam = float(np.einsum("ijk,i,j,k->", a, x, y, y))
        if lam < 0.0:
            lam, x = -lam, -x
        r1 = np.max(np.abs(np.einsum("ijk,j,k->i", a, y, y) - lam * x))
        r2 = np.max(np.abs(np.einsum("i,ijk,j->k", x, a, y) - lam * y))
        if max(r1, r2) > 1e-8 * max(1.0, norm_a):
            continue
        dup = False
        for f in found:
            if abs(f.lam - lam) <= 1e-9 * (1.0 + abs(lam)):
                for sy in (1.0, -1.0):
                    if np.linalg.norm(f.x - x) < 1e-6 and np.linalg.norm(f.y - sy * y) < 1e-6:
                        dup = True
                        break
            if dup:
                break
        if not dup:
            found.append(CEigenTriple(lam=lam, x=x.copy(), y=y.copy()))
    found.sort(key=lambda f: -f.lam)
    return found


def best_rank_one(t, starts: int = 64) -> tuple[float, np.ndarray, np.ndarray]:
    """Best approximation lam x (x) y (x) y in the Frobenius norm."""
    triples = c_eigenpairs(t, starts=starts)
    if not triples:
        raise RuntimeError("no stationary triple found")
    top = triples[0]
    return top.lam, top.x, top.y


def incremental_rank_one(t, max_terms: int = 13, starts: int = 64,
                         rel_tol: float = 1e-10):
    """Greedy deflation by successive best rank-one terms.

    Returns (terms, residuals): the extracted (lam, x, y) triples and the
    Frobenius norm of the remainder after each step (non-increasing).
    """
    a = as_array(t).copy()
    norm0 = float(np.sqrt(np.einsum("ijk,ijk->", a, a)))
    terms, residuals = [], []
    for _ in range(max_terms):
        if np.sqrt(np.einsum("ijk,ijk->", a, a)) <= rel_tol * max(norm0, 1e-300):
            break
        lam, x, y = best_rank_one(a, starts=starts)
        terms.append((lam, x, y))
        a = a - lam * np.einsum("i,j,k->ijk", x, y, y)
        residuals.append(float(np.sqrt(np.einsum("ijk,ijk->", a, a))))
    return terms, residuals
