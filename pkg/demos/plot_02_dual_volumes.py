"""
Star bodies and dual mixed volumes
==================================

Star bodies are described only by their radial functions.  Radial sums,
dilates and the dual mixed volume are all linear or multilinear in those
functions, so several identities can be checked to rounding.
"""

import numpy as np

from dualquerm.dualvol import dual_mixed_volume, dual_quermassintegral, expansion_check
from dualquerm.quadrature import build_sphere_rule
from dualquerm.starbody import UNIT_BALL, Bump, BumpTerm, Dilate, Ellipsoid, LpBall, RadialCombination

rule = build_sphere_rule(2, 32)

E = Ellipsoid((1.0, 1.0, 2.0))
P = LpBall(3.0)
bump = Bump(1.0, (BumpTerm(0.3, (0.0, 0.0, 1.0), 2),))

# W~_0 is the ordinary volume; for the ellipsoid it must be 4 pi / 3 * 1 * 1 * 2.
print(f"V(E) = {dual_quermassintegral(E, 0, rule):.14f}, closed form {8 * np.pi / 3:.14f}")

# W~_i of the unit ball does not depend on i.
print("W~_i(B):", [round(dual_quermassintegral(UNIT_BALL, i, rule), 14) for i in (0, 1, 1.5, 2)])

# Homogeneity: W~_i(lam K) = lam^(n - i) W~_i(K).
lam, i = 1.7, 0.8
ratio = dual_quermassintegral(Dilate(lam, bump), i, rule) / dual_quermassintegral(bump, i, rule)
print(f"W~_i(lam K) / W~_i(K) = {ratio:.14f}, lam^(3-i) = {lam ** (3 - i):.14f}")

# The dual mixed volume is symmetric in its arguments.
print("V~(E, P, bump) =", dual_mixed_volume((E, P, bump), rule), "=", dual_mixed_volume((bump, E, P), rule))

# The volume of a radial sum expands binomially in dual mixed volumes.
rep = expansion_check(E, bump, 0.7, 1.3, rule)
print(f"V(0.7 E +~ 1.3 bump): direct {rep.direct:.12f}, expanded {rep.expanded:.12f}")

# Radial sums are ordinary star bodies and can be nested.
S = RadialCombination(0.5, E, 0.5, P)
print(f"V(E/2 +~ P/2) = {dual_quermassintegral(S, 0, rule):.10f}")
