"""Critical points of the trace-type cubic form as the ratio mu varies.

With the traceless part removed, an oriented fully symmetric tensor
leaves a two-parameter family governed by mu = A3/A2.  Two critical
points live on an ellipse and slide with mu until they coalesce at
|mu| = sqrt(2); the mu = 0 line carries a whole critical meridian.
"""

import numpy as np

from octupolar import TraceParams, trace_classify, trace_critical_points, trace_critical_values

for mu in (-2.0, -np.sqrt(2.0), -0.8, 0.8, np.sqrt(2.0), 2.0):
    p = TraceParams(0.0, 1.0, mu)
    rep = trace_critical_points(p)
    kinds = trace_classify(p)
    vals = trace_critical_values(p)
    n_north = len(rep.points)
    print(f"\nmu = {mu:+.4f}  ({2 * n_north} critical points on the sphere)")
    for q in rep:
        print(f"  {q.label}: ({q.x1:+.4f}, {q.x2:+.4f})  {kinds[q.label][0]:<17} "
              f"index {kinds[q.label][1]:+d}  value {vals[q.label]:+.6f}")

print("\nmu = 0 is a global bifurcation: the x1 = 0 meridian is critical")
rep = trace_critical_points(TraceParams(0.0, 1.0, 0.0))
print("  continuum flagged:", rep.continuum_meridian,
      " equatorial extrema:", np.round(rep.equator_extrema, 4).tolist())

print("\ndegenerate family A2 = 0:")
rep = trace_critical_points(TraceParams(0.0, 0.0, 1.0))
print("  isolated points:", [(q.label, round(q.x2, 4)) for q in rep],
      " critical meridian:", rep.continuum_meridian)
