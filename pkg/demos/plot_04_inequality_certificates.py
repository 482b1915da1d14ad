"""
Inequality certificates
=======================

Each checker evaluates both sides of one inequality, orients it as
``lhs <= rhs`` and reports the relative slack against a tolerance measured
from the quadrature itself (ten times the change when resolutions halve).
Dilates give equality; anything else leaves visible slack.
"""

from dualquerm.inequalities import CHECKS, Rules, run_check
from dualquerm.starbody import UNIT_BALL, Bump, BumpTerm, Dilate, Ellipsoid

rules = Rules(3, 24)
E = Ellipsoid((1.0, 1.0, 2.0))
bump = Bump(1.0, (BumpTerm(0.3, (0.0, 0.0, 1.0), 2),))


def show(rep):
    print(f"{rep.name:<22} rel_slack {rep.rel_slack:+.3e}  tol {rep.tol:.1e}  {rep.verdict}")


print("-- dilate pairs: every check certifies equality")
roles = {"K": E, "L": Dilate(2.0, E), "D": bump, "bodies": (E, Dilate(0.5, E), Dilate(3.0, E))}
for name in sorted(CHECKS):
    if name.startswith("two_term"):
        continue
    r = dict(roles)
    if name in ("af_intersection", "af_product"):
        r["bodies"] = roles["bodies"][:2]
    show(run_check(name, r, {"i": 0.5, "alpha": 0.3, "lam_D": 2.0}, rules))

print("\n-- ellipsoid and bump against the ball: strict inequality")
for K in (E, bump):
    for name in ("minkowski_mixed", "af_product", "bm_corollary"):
        show(run_check(name, {"K": K, "L": UNIT_BALL}, {}, rules))

print("\n-- the two-term scalar inequality behind the sum version")
show(run_check("two_term_holder", {}, {"a": 1, "b": 2, "c": 3, "d": 1, "p": 0.4}, rules))
show(run_check("two_term_holder", {}, {"a": 1, "b": 2, "c": 3, "d": 6, "p": 0.4}, rules))
# with exponents p - 1 on c and d the statement is false; the checker says so
show(run_check("two_term_holder_printed", {}, {"a": 1, "b": 1, "c": 0.1, "d": 0.1, "p": 0.5}, rules))
