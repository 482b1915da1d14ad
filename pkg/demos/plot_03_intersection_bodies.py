"""
Intersection bodies and their volumes
=====================================

The radial function of a mixed intersection body at ``u`` is a dual mixed
volume of the central sections by ``u^⊥``.  Its quermassintegrals are double
integrals: an outer rule over ``S^(n-1)`` and, at every outer node, an inner
rule over the great subsphere.
"""

import numpy as np

from dualquerm.dualvol import dual_quermassintegral
from dualquerm.intersect import (intersection_body, mixed_intersection_body, querm_of_intersection_fused,
                                 section_context, section_volume)
from dualquerm.quadrature import build_sphere_rule
from dualquerm.starbody import UNIT_BALL, Ball, Ellipsoid

outer = build_sphere_rule(2, 32)

# The intersection body of the unit ball in R^3 is the ball of radius pi.
IB = intersection_body(UNIT_BALL, n=3, resolution=32)
print("rho(IB) on a few nodes:", IB.radial(outer.nodes[:4]), "pi =", np.pi)
print("I(2B) radius:", intersection_body(Ball(2.0), n=3).radial(outer.nodes[:1])[0], "= 4 pi")

# Ellipsoid sections have a closed form: area = pi a1 a2 a3 / |diag(a) u|.
E = Ellipsoid((1.0, 1.0, 2.0))
u = np.ones(3) / np.sqrt(3)
ctx = section_context(u, (E, E), 32)
print(f"section area {section_volume(E, ctx):.14f}, closed form "
      f"{np.pi * 2 / np.linalg.norm(np.array([1, 1, 2]) * u):.14f}")

# Volume of IE two ways: the fused double sum and the body-then-integral path.
fused = querm_of_intersection_fused((E, E), 0, outer, 32)
unfused = dual_quermassintegral(intersection_body(E, resolution=32), 0, outer)
print(f"V(IE): fused {fused:.12f}, unfused {unfused:.12f}")

# Resolution ladder for the same quantity: differences shrink quickly.
prev = None
for res in (8, 16, 32):
    v = querm_of_intersection_fused((E, E), 0, build_sphere_rule(2, res), res)
    print(f"res {res:>2}: {v:.12f}" + ("" if prev is None else f"  diff {abs(v - prev):.2e}"))
    prev = v

# A genuinely mixed body: one ellipsoid section paired with one ball section.
IEB = mixed_intersection_body((E, UNIT_BALL), 24)
print("rho(I(E, B)) at e1, e3:", IEB.radial(np.eye(3)[[0, 2]]))
