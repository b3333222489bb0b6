"""
Distortion analysis of a nematic director gradient.

The gradient of a unit director field splits into splay S = div n, twist
T = n . curl n, bend b = -(grad n) n, and a symmetric traceless remainder
D annihilating n, whose positive eigenvalue q ("octupolar splay") and
eigenvectors complete the distortion frame (n1, n2, n).  Both forms of the
elastic energy density are evaluated, and the traceless symmetric tensor
built from grad n (x) n gives the associated cubic potential, which is
blind to the twist.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .tensors import OctupolarTensor, detrace_symmetric, symmetrize

__all__ = ["DirectorGradient", "DistortionCharacteristics", "FrankConstants",
           "decompose_gradient", "reconstruct_gradient", "oseen_frank",
           "lc_octupolar_potential", "lc_octupolar_tensor"]


@dataclass(frozen=True)
class DirectorGradient:
    """Gradient matrix g_ij = dn_i/dx_j together with the director n."""

    g: np.ndarray
    n: np.ndarray

    def __post_init__(self):
        g = np.asarray(self.g, dtype=float)
        n = np.asarray(self.n, dtype=float)
        if g.shape != (3, 3) or n.shape != (3,):
            raise ValueError("g must be 3x3 and n a 3-vector")
        if abs(np.linalg.norm(n) - 1.0) > 1e-10:
            raise ValueError("director must be a unit vector")
        scale = max(float(np.max(np.abs(g))), 1.0)
        if np.max(np.abs(n @ g)) > 1e-10 * scale:
            raise ValueError("unit-length field requires n . grad n = 0 columnwise")
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "n", n)

    @classmethod
    def from_json(cls, obj: dict) -> "DirectorGradient":
        g = np.asarray(obj["gradient"], dtype=float).reshape(3, 3)
        return cls(g=g, n=np.asarray(obj["n"], dtype=float))


@dataclass(frozen=True)
class DistortionCharacteristics:
    """(S, T, b1, b2, q) plus the right-handed frame (n1, n2, n)."""

    splay: float
    twist: float
    b1: float
    b2: float
    q: float
    n1: np.ndarray
    n2: np.ndarray
    n: np.ndarray
    frame_arbitrary: bool = False   # set when q = 0 leaves (n1, n2) free

    @property
    def bend_norm(self) -> float:
        return float(np.hypot(self.b1, self.b2))

    def to_report(self) -> dict:
        return {"S": self.splay, "T": self.twist, "b1": self.b1, "b2": self.b2,
                "q": self.q, "n1": self.n1.tolist(), "n2": self.n2.tolist(),
                "n": self.n.tolist(), "frame_arbitrary": self.frame_arbitrary}


@dataclass(frozen=True)
class FrankConstants:
    k11: float
    k22: float
    k33: float
    k24: float

    def ericksen_ok(self) -> bool:
        return (self.k11 >= self.k24 >= 0.0 and self.k22 >= self.k24
                and self.k33 >= 0.0)


def _curl_from_gradient(g: np.ndarray) -> np.ndarray:
    return np.array([g[2, 1] - g[1, 2], g[0, 2] - g[2, 0], g[1, 0] - g[0, 1]])


def _complete_frame(n: np.ndarray) -> np.ndarray:
    # deterministic completion: smallest-index axis least aligned with n
    k = int(np.argmin(np.abs(n)))
    e = np.zeros(3)
    e[k] = 1.0
    n1 = e - np.dot(e, n) * n
    return n1 / np.linalg.norm(n1)


def decompose_gradient(dg: DirectorGradient) -> DistortionCharacteristics:
    """Split a director gradient into its distortion characteristics."""
    g, n = dg.g, dg.n
    splay = float(np.trace(g))
    curl = _curl_from_gradient(g)
    twist = float(np.dot(n, curl))
    b = -g @ n
    proj = np.eye(3) - np.outer(n, n)
    wn = np.array([[0.0, -n[2], n[1]], [n[2], 0.0, -n[0]], [-n[1], n[0], 0.0]])
    d = g - (-np.outer(b, n) + 0.5 * twist * wn + 0.5 * splay * proj)
    d = 0.5 * (d + d.T)
    q = float(np.sqrt(max(0.0, 0.5 * np.einsum("ij,ij->", d, d))))
    arbitrary = q <= 1e-12 * max(1.0, float(np.max(np.abs(g))))
    if arbitrary:
        n1 = _complete_frame(n)
    else:
        w, v = np.linalg.eigh(d)
        n1 = v[:, int(np.argmax(w))]
        if n1[int(np.argmax(np.abs(n1)))] < 0:
            n1 = -n1
    n2 = np.cross(n, n1)
    return DistortionCharacteristics(
        splay=splay, twist=twist, b1=float(np.dot(b, n1)), b2=float(np.dot(b, n2)),
        q=q, n1=n1, n2=n2, n=n.copy(), frame_arbitrary=arbitrary)


def reconstruct_gradient(dc: DistortionCharacteristics) -> DirectorGradient:
    """Rebuild the gradient matrix from the characteristics and frame."""
    n1, n2, n = dc.n1, dc.n2, dc.n
    frame = np.stack([n1, n2, n])
    if np.max(np.abs(frame @ frame.T - np.eye(3))) > 1e-9 or np.max(np.abs(np.cross(n1, n2) - n)) > 1e-9:
        raise ValueError("frame must be right-handed orthonormal")
    g = ((0.5 * dc.splay + dc.q) * np.outer(n1, n1)
         + (0.5 * dc.splay - dc.q) * np.outer(n2, n2)
         - dc.b1 * np.outer(n1, n) - dc.b2 * np.outer(n2, n)
         + 0.5 * dc.twist * (np.outer(n2, n1) - np.outer(n1, n2)))
    return DirectorGradient(g=g, n=n.copy())


def oseen_frank(dc: DistortionCharacteristics, k: FrankConstants):
    """Elastic energy density in both forms, plus the positivity check.

    The classic form is evaluated on the reconstructed gradient; the
    mode-resolved form uses the characteristics directly.  The two agree
    identically; both are returned so callers can cross-check.
    """
    g = reconstruct_gradient(dc).g
    n = dc.n
    div_n = float(np.trace(g))
    curl = _curl_from_gradient(g)
    n_curl = float(np.dot(n, curl))
    n_x_curl = np.cross(n, curl)
    w_classic = (0.5 * k.k11 * div_n ** 2
                 + 0.5 * k.k22 * n_curl ** 2
                 + 0.5 * k.k33 * float(np.dot(n_x_curl, n_x_curl))
                 + k.k24 * (float(np.einsum("ij,ji->", g, g)) - div_n ** 2))
    w_modes = (0.5 * (k.k11 - k.k24) * dc.splay ** 2
               + 0.5 * (k.k22 - k.k24) * dc.twist ** 2
               + 0.5 * k.k33 * (dc.b1 ** 2 + dc.b2 ** 2)
               + k.k24 * 2.0 * dc.q ** 2)
    return w_classic, w_modes, k.ericksen_ok()


def lc_octupolar_tensor(dc: DistortionCharacteristics) -> OctupolarTensor:
    """Traceless symmetric part of (grad n) (x) n, expressed in lab axes."""
    g = reconstruct_gradient(dc).g
    raw = np.einsum("ij,k->ijk", g, dc.n)
    irr, _ = detrace_symmetric(symmetrize(raw))
    return irr


def lc_octupolar_potential(dc: DistortionCharacteristics, x) -> float:
    """Cubic potential of the distortion tensor, in distortion-frame coordinates.

    Independent of the twist; homogeneous of degree three off the sphere.
    """
    x1, x2, x3 = np.asarray(x, dtype=float)
    r2 = x1 * x1 + x2 * x2 + x3 * x3
    return float((0.5 * dc.splay + dc.q) * x1 ** 2 * x3
                 + (0.5 * dc.splay - dc.q) * x2 ** 2 * x3
                 - dc.b1 * x1 * x3 ** 2 - dc.b2 * x2 * x3 ** 2
                 + 0.2 * r2 * (dc.b1 * x1 + dc.b2 * x2 - dc.splay * x3))
