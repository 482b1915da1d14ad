"""
Searching for extremal bodies
=============================

Nelder-Mead runs in the parameter box of a body family and minimizes the
relative slack of one inequality.  For a true inequality the search can only
approach the equality case; for a false one it trips the falsification alarm.
"""

from dualquerm.errors import FalsificationError
from dualquerm.families import get_family
from dualquerm.inequalities import Rules
from dualquerm.search import search_extremal

rules = Rules(3, 16)

# Ellipsoid semiaxes in [0.5, 2]^3 against the ball: the minimum is at a sphere.
res = search_extremal("bm_corollary", get_family("ellipsoid_axes", 3), 200, 7, rules, {"i": 0})
print(f"{res.evaluations} evaluations, best rel_slack {res.best_rel_slack:.2e} at axes "
      + ", ".join(f"{a:.5f}" for a in res.best_params))
for row in res.trace[::40]:
    print(f"  eval {row['eval']:>3}  restart {row['restart']}  best so far {row['best']:.3e}")

# Bump coefficients: the search drives them towards zero, i.e. towards the ball.
res = search_extremal("minkowski_mixed", get_family("bump_coeffs", 3), 120, 1, rules)
print(f"bump search: best rel_slack {res.best_rel_slack:.2e} at {[round(c, 4) for c in res.best_params]}")

# The variant with exponents p - 1 is false and the search finds a witness at once.
try:
    search_extremal("two_term_holder_printed", get_family("holder_scalars", 3), 50, 0, rules)
except FalsificationError as exc:
    print("alarm:", exc)
    print("reproduce with", {k: exc.metadata[k] for k in ("check", "family", "seed", "point")})
