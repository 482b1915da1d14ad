"""
Product quadrature on spheres
=============================

Every integral in the package is a weighted sum over the nodes of a product
rule on ``S^m``.  This script shows the rule, checks that it integrates
constants and low moments exactly, and watches the error fall as the
resolution doubles.
"""

import numpy as np

from dualquerm.quadrature import build_sphere_rule, estimate_rule_error, integrate, sphere_area

# A resolution-8 rule on the ordinary sphere S^2: 16 azimuths times 8 polar nodes.
rule = build_sphere_rule(2, 8)
print(f"{len(rule)} nodes on S^2, weights sum to {rule.weights.sum():.15f} (4 pi = {4 * np.pi:.15f})")

# Constants and even moments come out exact to rounding at any resolution.
for m in (1, 2, 3, 4):
    r = build_sphere_rule(m, 4)
    second = integrate(r, lambda X: X[:, 0] ** 2)
    print(f"S^{m}: area {sphere_area(m):.12f}, int x_1^2 = {second:.12f} vs {sphere_area(m) / (m + 1):.12f}")

# A smooth but non-polynomial integrand with a closed form:
# int_{S^2} 1 / (c - a.x) dS = 2 pi log((c + 1) / (c - 1)) for a unit vector a.
c = 1.05
a = np.array([0.3, -0.5, 0.8])
a /= np.linalg.norm(a)
exact = 2 * np.pi * np.log((c + 1) / (c - 1))
f = lambda X: 1.0 / (c - X @ a)
print("\nresolution   error        halving estimate")
for res in (4, 8, 16, 32):
    err = abs(integrate(build_sphere_rule(2, res), f) - exact)
    print(f"{res:>10}   {err:.3e}    {estimate_rule_error(f, 2, res):.3e}")
