"""Split a third-rank tensor into its invariant pieces.

A 27-component tensor carries four permutation-symmetry channels (fully
symmetric, two mixed, fully antisymmetric) and, alternatively, a harmonic
ladder: one scalar, three vectors, two deviators, and a traceless
symmetric remainder.  Both decompositions reconstruct the input exactly.
"""

import numpy as np

from octupolar import harmonic_decompose, symmetry_decompose, detrace_symmetric
from octupolar.tensors import SymTensor3

rng = np.random.default_rng(0)
a = rng.normal(size=(3, 3, 3))

print("input tensor, flat view:")
print(np.array2string(a.reshape(27), precision=3))

d = symmetry_decompose(a)
print("\npermutation-symmetry channels (Frobenius norms):")
for name in ("a1", "a21", "a22", "a3"):
    part = getattr(d, name).array
    print(f"  {name:>3}: {np.linalg.norm(part):.6f}")
print("  reconstruction error:", np.max(np.abs(d.reassemble() - a)))

h = harmonic_decompose(a)
print("\nharmonic pieces:")
print(f"  scalar           : {h.a_scalar:+.6f}")
for name in ("v1", "v2", "v3"):
    print(f"  vector {name}        : {np.array2string(getattr(h, name), precision=4)}")
print(f"  deviator d1 eigs : {np.linalg.eigvalsh(h.d1)}")
print(f"  deviator d2 eigs : {np.linalg.eigvalsh(h.d2)}")
print(f"  octupolar part   : alpha0={h.d3.alpha0:+.4f} ... (7 parameters)")
print("  reconstruction error:", np.max(np.abs(h.reassemble() - a)))

# the detracer splits any fully symmetric tensor into harmonic + trace parts
s = SymTensor3.from_array(sum(np.transpose(a, p) for p in
                              __import__("itertools").permutations(range(3))) / 6.0)
irr, v = detrace_symmetric(s)
print("\ndetracer: partial-trace vector", np.array2string(v, precision=4))
print("  harmonic part is traceless:", np.max(np.abs(np.einsum("iik->k", irr.array))))
