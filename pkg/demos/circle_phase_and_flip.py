"""A Nikishin system on the unit circle: normality, phase and the flip.

The two generators are uniform on the arcs [0.3, 1.3] and [2.0, 3.0]. The
square root needed for half-integer moments is cut along a ray in the gap
between the arcs.

Run with ``python3 demos/circle_phase_and_flip.py``.
"""

import numpy as np

from nikishin import (Arc, CircleMeasure, GeneratorChainUC, build_system,
                      check_F_nonvanishing, detkit, flip_r2_uc, mop_solver)
from nikishin.precision import mpf

arcs = [Arc(mpf("0.3"), mpf("1.3")), Arc(mpf("2.0"), mpf("3.0"))]
system = build_system(GeneratorChainUC([CircleMeasure(a) for a in arcs]))
print("branch cut angle:", float(system.branch.t0))

# indices whose components share parity are phi-normal
for n in [(2, 2), (3, 1), (4, 2)]:
    v = mop_solver.normality(system, n)
    print(f"{n}: {v.verdict.value}, scaled min {float(v.scaled_min):.3e}, residual {v.residual:.1e}")

# zeros of z**(|n|/2) phi_n for n = (2, 2)
phi = mop_solver.laurent_poly_uc(system, (2, 2))
roots = np.array(mop_solver.zeros(phi))
print("zeros of phi_(2,2):", np.round(roots, 5))
print("moduli:", np.round(np.abs(roots), 5))

# the Chebyshev determinant on ordered tuples of the first arc has a fixed phase
report = detkit.phase_check_uc(system, (3, 1), trials=100, rng=3)
print(f"phase at (3,1): mean {report.mean_phase:.6f}, l mod 4 = {report.l_mod4}, "
      f"spread {report.max_deviation:.1e}")

# exchanging the measures needs F_{sigma2} to stay away from zero on the first arc
print("min |F| on first arc:", check_F_nonvanishing(system.generators.sigmas[1], arcs[0]).min_abs)
flipped = flip_r2_uc(system)
for n in [(2, 2), (3, 1)]:
    print(f"flipped {n}: {mop_solver.normality(flipped, n).verdict.value}")

# mixed parity indices are outside the theory: scan them only as an exploration
table = mop_solver.scan(system, mop_solver.index_grid(2, 3),
                        mode=mop_solver.ScanMode.EXPLORE_MIXED_PARITY)
for row in table:
    flag = " (exploratory)" if row.exploratory else ""
    print(f"  {row.index}: {row.verdict.verdict.value}{flag}")
