"""
An independent Monte Carlo oracle
=================================

Quadrature results are cross-checked against plain Monte Carlo with uniform
points from normalized Gaussians.  The estimates are seeded and blocked so a
larger run extends a smaller one instead of reshuffling it.
"""

import numpy as np

from dualquerm.dualvol import dual_mixed_volume
from dualquerm.intersect import section_context, section_volume
from dualquerm.oracle import mc_dual_mixed_volume, mc_section_volume
from dualquerm.quadrature import build_sphere_rule
from dualquerm.starbody import Bump, BumpTerm, Ellipsoid, LpBall

rule = build_sphere_rule(2, 32)
bodies = (Ellipsoid((0.7, 1.2, 1.9)), LpBall(3.0, 1.1), Bump(1.0, (BumpTerm(0.25, (1.0, 1.0, 0.0), 2),)))

det = dual_mixed_volume(bodies, rule)
for samples in (10_000, 100_000, 1_000_000):
    est = mc_dual_mixed_volume(bodies, samples, seed=3)
    z = (det - est.value) / est.stderr
    print(f"{samples:>9} samples: MC {est.value:.6f} +- {est.stderr:.1e}   rule {det:.6f}   z = {z:+.2f}")

# Central section of Ellipsoid(1, 1, 2) by the plane orthogonal to (1, 1, 1).
u = np.ones(3) / np.sqrt(3)
E = Ellipsoid((1.0, 1.0, 2.0))
est = mc_section_volume(E, u, 1_000_000, seed=77)
print(f"section: rule {section_volume(E, section_context(u, (E, E), 32)):.10f}, "
      f"MC {est.value:.5f} +- {est.stderr:.1e}")
