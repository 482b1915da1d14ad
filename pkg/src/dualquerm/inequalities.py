"""Numerical certificates for inequalities between dual quermassintegrals.

Every checker evaluates both sides of an inequality oriented as
``lhs <= rhs`` and returns an :class:`IneqReport`.  With ``tol="auto"`` the
tolerance is measured, not assumed: both sides are recomputed with the
outer and inner resolutions halved, and

    tol = max(10 * max(|lhs - lhs_half| / |lhs|, |rhs - rhs_half| / |rhs|), TOL_FLOOR)

``tol`` is relative.  A report fails iff ``rel_slack < -tol``, and an
expected equality is confirmed iff ``|rel_slack| <= tol``.

Whether equality is expected is decided from the inputs (numerical dilate
test on the radial functions), never from the computed slack.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Callable, Dict, Optional, Sequence, Tuple, Union

from .dualvol import dual_mixed_volume
from .errors import ParameterError
from .intersect import ith_multiset, querm_of_intersection_fused
from .quadrature import SphereRule, build_sphere_rule
from .starbody import UNIT_BALL, BodyExpr, are_dilates, dilate, radial_combine

__all__ = [
    "TOL_FLOOR",
    "Rules",
    "IneqReport",
    "HolderPairInput",
    "check_two_term_holder",
    "check_two_term_holder_printed",
    "check_dual_af_volumes",
    "check_minkowski_mixed",
    "check_querm_sum_minkowski",
    "check_af_intersection",
    "check_af_product",
    "check_af_hybrid",
    "check_brunn_minkowski",
    "check_bm_corollary",
    "check_strengthened_form",
    "CHECKS",
    "run_check",
]

TOL_FLOOR = 1e-12

PASS, FAIL, EQUALITY = "pass", "fail", "equality-confirmed"

Tolerance = Union[str, float]


@dataclass(frozen=True)
class Rules:
    """Dimension plus outer (``S^(n-1)``) and inner (subsphere) resolutions."""

    n: int
    outer: int = 24
    inner: Optional[int] = None

    def __post_init__(self):
        if int(self.n) != self.n or self.n <= 2:
            raise ParameterError(f"dimension must be an integer > 2, got {self.n!r}")
        if self.inner is None:
            object.__setattr__(self, "inner", self.outer)
        for name in ("outer", "inner"):
            v = getattr(self, name)
            if int(v) != v or v < 1:
                raise ParameterError(f"{name} resolution must be a positive integer, got {v!r}")

    @property
    def sphere(self) -> SphereRule:
        return build_sphere_rule(self.n - 1, self.outer)

    def halved(self) -> "Rules":
        return Rules(self.n, max(1, self.outer // 2), max(1, self.inner // 2))

    def querm(self, bodies: Sequence[BodyExpr], i: float) -> float:
        """``W~_i`` of the mixed intersection body of ``bodies``, fused path."""
        return querm_of_intersection_fused(tuple(bodies), i, self.sphere, self.inner)


@dataclass
class IneqReport:
    name: str
    label: str
    lhs: float
    rhs: float
    slack: float
    rel_slack: float
    tol: float
    equality_expected: bool
    verdict: str
    n: Optional[int] = None
    i: Optional[float] = None
    j: Optional[int] = None
    r: Optional[int] = None
    alpha: Optional[float] = None
    outer_res: Optional[int] = None
    inner_res: Optional[int] = None
    rel_error: float = 0.0
    notes: Tuple[str, ...] = ()
    extra: Dict[str, float] = field(default_factory=dict)

    @property
    def failed(self) -> bool:
        return self.verdict == FAIL

    def as_dict(self) -> dict:
        return asdict(self)


def _rel_slack(lhs, rhs):
    scale = max(abs(lhs), abs(rhs))
    return 0.0 if scale == 0.0 else (rhs - lhs) / scale


def _rel_change(a, b):
    return abs(a - b) / abs(a) if a else abs(a - b)


def _finish(name, label, lhs, rhs, tol_value, equality_expected, rel_error=0.0, notes=(), extra=None, **meta):
    slack = rhs - lhs
    rel = _rel_slack(lhs, rhs)
    if rel < -tol_value:
        verdict = FAIL
    elif equality_expected and abs(rel) <= tol_value:
        verdict = EQUALITY
    else:
        verdict = PASS
    return IneqReport(
        name=name, label=label, lhs=lhs, rhs=rhs, slack=slack, rel_slack=rel, tol=tol_value,
        equality_expected=bool(equality_expected), verdict=verdict, rel_error=rel_error,
        notes=tuple(notes), extra=dict(extra or {}), **meta,
    )


def _quadrature_report(name, label, sides: Callable[[Rules], Tuple[float, float]], rules: Rules, tol: Tolerance,
                       equality_expected, notes=(), extra=None, **meta):
    lhs, rhs = sides(rules)
    lhs_h, rhs_h = sides(rules.halved())
    err = max(_rel_change(lhs, lhs_h), _rel_change(rhs, rhs_h))
    return _finish(name, label, lhs, rhs, _tolerance(tol, err), equality_expected, rel_error=err,
                   notes=notes, extra=extra, n=rules.n, outer_res=rules.outer, inner_res=rules.inner, **meta)


def _tolerance(tol, err):
    if tol == "auto":
        return max(10.0 * err, TOL_FLOOR)
    tol = float(tol)
    if not tol >= 0.0:
        raise ParameterError(f"fixed tolerance must be >= 0, got {tol!r}")
    return tol


def _all_dilates(bodies, n):
    first = bodies[0]
    return all(are_dilates(first, b, n) for b in bodies[1:])


def _require_i(i, n):
    if not 0.0 <= i < n:
        raise ParameterError(f"need 0 <= i < n, got i={i}, n={n}")
    return float(i)


def _require_int(name, v, lo, hi):
    if int(v) != v or not lo <= v <= hi:
        raise ParameterError(f"need integer {lo} <= {name} <= {hi}, got {name}={v!r}")
    return int(v)


def _require_bodies(bodies, count, n):
    bodies = tuple(bodies)
    if len(bodies) != count:
        raise ParameterError(f"need {count} bodies in R^{n}, got {len(bodies)}")
    for b in bodies:
        if b.dim is not None and b.dim != n:
            raise ParameterError(f"{type(b).__name__} lives in R^{b.dim}, not R^{n}")
    return bodies


# -- scalar inequality ------------------------------------------------------

@dataclass(frozen=True)
class HolderPairInput:
    """``a, b >= 0``, ``c, d > 0`` and ``0 < p < 1``."""

    a: float
    b: float
    c: float
    d: float
    p: float

    def __post_init__(self):
        if not (self.a >= 0 and self.b >= 0):
            raise ParameterError(f"need a, b >= 0, got a={self.a}, b={self.b}")
        if not (self.c > 0 and self.d > 0):
            raise ParameterError(f"need c, d > 0, got c={self.c}, d={self.d}")
        if not 0 < self.p < 1:
            raise ParameterError(f"need 0 < p < 1, got p={self.p}")


def check_two_term_holder(x: HolderPairInput, tol: Tolerance = "auto") -> IneqReport:
    """``a^p c^(1-p) + b^p d^(1-p) <= (a + b)^p (c + d)^(1-p)``.

    Equality iff ``ad = bc``.  The larger side is reported as ``rhs``.
    """
    a, b, c, d, p = x.a, x.b, x.c, x.d, x.p
    small = a ** p * c ** (1 - p) + b ** p * d ** (1 - p)
    big = (a + b) ** p * (c + d) ** (1 - p)
    tol_value = TOL_FLOOR if tol == "auto" else _tolerance(tol, 0.0)
    equal = math.isclose(a * d, b * c, rel_tol=1e-12, abs_tol=0.0) or (a == 0 and b == 0)
    return _finish("two_term_holder", "two-term Hölder inequality", small, big, tol_value, equal,
                   extra={"ad": a * d, "bc": b * c, "p": p})


def check_two_term_holder_printed(x: HolderPairInput, tol: Tolerance = "auto") -> IneqReport:
    """Variant with exponents ``p - 1`` on ``c`` and ``d``::

        a^p c^(p-1) + b^p d^(p-1) <= (a + b)^p (c + d)^(1-p)

    This form is false in general (take ``c = d`` small).  It exists as a
    known-false target for the falsification alarm of the CLI and search.
    """
    a, b, c, d, p = x.a, x.b, x.c, x.d, x.p
    small = a ** p * c ** (p - 1) + b ** p * d ** (p - 1)
    big = (a + b) ** p * (c + d) ** (1 - p)
    tol_value = TOL_FLOOR if tol == "auto" else _tolerance(tol, 0.0)
    return _finish("two_term_holder_printed", "two-term inequality with exponents p-1 (known false)",
                   small, big, tol_value, False, extra={"p": p})


# -- dual mixed volumes -----------------------------------------------------

def check_dual_af_volumes(bodies: Sequence[BodyExpr], r: int, rules: Rules, tol: Tolerance = "auto") -> IneqReport:
    """``V~(K_1..K_n)^r <= prod_{m<=r} V~(K_m [r copies], K_{r+1}, ..., K_n)``."""
    n = rules.n
    bodies = _require_bodies(bodies, n, n)
    r = _require_int("r", r, 1, n)

    def sides(rr):
        rule = rr.sphere
        lhs = dual_mixed_volume(bodies, rule) ** r
        rhs = 1.0
        for m in range(r):
            rhs *= dual_mixed_volume((bodies[m],) * r + bodies[r:], rule)
        return lhs, rhs

    return _quadrature_report("dual_af_volumes", "dual Aleksandrov-Fenchel inequality for dual mixed volumes",
                              sides, rules, tol, _all_dilates(bodies, n), r=r)


# -- mixed intersection bodies ----------------------------------------------

def check_minkowski_mixed(K: BodyExpr, L: BodyExpr, i: float, j: int, rules: Rules,
                          tol: Tolerance = "auto") -> IneqReport:
    """``W~_i(I_j(K, L))^(n-1) <= W~_i(IK)^(n-j-1) W~_i(IL)^j``."""
    n = rules.n
    K, L = _require_bodies((K, L), 2, n)
    i = _require_i(i, n)
    j = _require_int("j", j, 1, n - 2)

    def sides(rr):
        mixed = rr.querm(ith_multiset(K, L, j, n), i)
        wk = rr.querm((K,) * (n - 1), i)
        wl = rr.querm((L,) * (n - 1), i)
        return mixed ** (n - 1), wk ** (n - j - 1) * wl ** j

    return _quadrature_report("minkowski_mixed", "Minkowski inequality for mixed intersection bodies",
                              sides, rules, tol, are_dilates(K, L, n), i=i, j=j)


def _dilation_factor(K, L, n):
    u = build_sphere_rule(n - 1, 2).nodes[:1]
    return float(L.radial(u)[0] / K.radial(u)[0])


def check_querm_sum_minkowski(K: BodyExpr, L: BodyExpr, D: BodyExpr, lam_D: float, i: float, j: int,
                              rules: Rules, tol: Tolerance = "auto") -> IneqReport:
    """Minkowski inequality for the dual quermassintegral sum, ``D' = lam_D * D``::

        S(I_j(K, L), I_j(D, D'))^(n-1) <= S(IK, ID)^(n-j-1) * S(IL, ID')^j

    with ``S(X, Y) = W~_i(X) + W~_i(Y)``.

    Equality needs ``K, L`` dilates *and* the two summands proportional,
    which for ``L = c K`` means ``c = lam_D``; ``extra["holder_ratio"]``
    records ``W~_i(IK) W~_i(ID') / (W~_i(ID) W~_i(IL))``, equal to 1 exactly
    in that case.
    """
    n = rules.n
    K, L, D = _require_bodies((K, L, D), 3, n)
    i = _require_i(i, n)
    if i > n - 1:
        raise ParameterError(f"the quermassintegral sum is defined for 0 <= i <= n-1, got i={i}")
    j = _require_int("j", j, 1, n - 2)
    Dp = dilate(lam_D, D)
    values = {}

    def sides(rr):
        wk = rr.querm((K,) * (n - 1), i)
        wl = rr.querm((L,) * (n - 1), i)
        wd = rr.querm((D,) * (n - 1), i)
        wdp = rr.querm((Dp,) * (n - 1), i)
        mixed_kl = rr.querm(ith_multiset(K, L, j, n), i)
        mixed_d = rr.querm(ith_multiset(D, Dp, j, n), i)
        values.setdefault("holder_ratio", wk * wdp / (wd * wl))
        lhs = (mixed_kl + mixed_d) ** (n - 1)
        rhs = (wk + wd) ** (n - j - 1) * (wl + wdp) ** j
        return lhs, rhs

    kl_dilates = are_dilates(K, L, n)
    notes = []
    equality = False
    if kl_dilates:
        c = _dilation_factor(K, L, n)
        equality = math.isclose(c, lam_D, rel_tol=1e-9)
        if not equality:
            notes.append(f"K, L dilates with factor {c:.12g} != lam_D; sum terms not proportional")
    report = _quadrature_report("querm_sum_minkowski",
                                "Minkowski inequality for the dual quermassintegral sum of mixed intersection bodies",
                                sides, rules, tol, equality, notes=notes, i=i, j=j)
    report.extra.update(values, lam_D=float(lam_D), kl_dilates=float(kl_dilates))
    return report


def check_af_intersection(bodies: Sequence[BodyExpr], i: float, r: int, rules: Rules,
                          tol: Tolerance = "auto") -> IneqReport:
    """``W~_i(I(K_1..K_{n-1}))^r <= prod_{m<=r} W~_i(I(K_m [r copies], K_{r+1}, ..., K_{n-1}))``.

    The product index is the only free integer besides ``r``; no separate
    ``j`` parameter exists.
    """
    n = rules.n
    bodies = _require_bodies(bodies, n - 1, n)
    i = _require_i(i, n)
    r = _require_int("r", r, 1, n - 1)

    def sides(rr):
        lhs = rr.querm(bodies, i) ** r
        rhs = 1.0
        for m in range(r):
            rhs *= rr.querm((bodies[m],) * r + bodies[r:], i)
        return lhs, rhs

    return _quadrature_report("af_intersection", "Aleksandrov-Fenchel inequality for mixed intersection bodies",
                              sides, rules, tol, _all_dilates(bodies, n), i=i, r=r)


def check_af_product(bodies: Sequence[BodyExpr], i: float, rules: Rules, tol: Tolerance = "auto") -> IneqReport:
    """``W~_i(I(K_1..K_{n-1}))^(n-1) <= prod_m W~_i(IK_m)``."""
    n = rules.n
    report = check_af_intersection(bodies, i, n - 1, rules, tol)
    report.name = "af_product"
    report.label = "Aleksandrov-Fenchel product inequality for mixed intersection bodies"
    return report


def check_af_hybrid(K: BodyExpr, L: BodyExpr, i: float, j: int, rules: Rules, tol: Tolerance = "auto") -> IneqReport:
    """``W~_i(I(K [n-j-2], B [j], L))^(n-j-1) <= W~_i(I_j K)^(n-j-2) W~_i(I_j L)``.

    ``K`` must appear at least once, so ``0 <= j <= n - 3`` (``j = 0`` in
    ``R^3``).
    """
    n = rules.n
    K, L = _require_bodies((K, L), 2, n)
    i = _require_i(i, n)
    if int(j) != j or not 0 <= j < n - 1:
        raise ParameterError(f"need integer 0 <= j < n-1, got j={j}")
    if n - j - 2 < 1:
        raise ParameterError(f"j={j} leaves no copy of K in R^{n}; use j <= {n - 3}")
    j = int(j)
    B = UNIT_BALL

    def sides(rr):
        lhs = rr.querm((K,) * (n - j - 2) + (B,) * j + (L,), i) ** (n - j - 1)
        wk = rr.querm(ith_multiset(K, B, j, n), i)
        wl = rr.querm(ith_multiset(L, B, j, n), i)
        return lhs, wk ** (n - j - 2) * wl

    notes = ("R^3 admits only j = 0",) if n == 3 else ()
    return _quadrature_report("af_hybrid", "Aleksandrov-Fenchel inequality with unit-ball padding",
                              sides, rules, tol, are_dilates(K, L, n), notes=notes, i=i, j=j)


def _bm_exponent(n, i):
    return 1.0 / ((n - i) * (n - 1))


def _blends(K, L, alpha):
    return radial_combine(alpha, K, 1.0 - alpha, L), radial_combine(1.0 - alpha, K, alpha, L)


def check_brunn_minkowski(K: BodyExpr, L: BodyExpr, i: float, alpha: float, rules: Rules,
                          tol: Tolerance = "auto") -> IneqReport:
    """``W~_i(I(K +~ L))^e <= W~_i(I(A))^e + W~_i(I(C))^e``, ``e = 1/((n-i)(n-1))``,

    with blends ``A = alpha K +~ (1-alpha) L`` and ``C = (1-alpha) K +~ alpha L``.
    Equality is expected iff the blends are dilates.
    """
    n = rules.n
    K, L = _require_bodies((K, L), 2, n)
    i = _require_i(i, n)
    alpha = float(alpha)
    if not 0.0 <= alpha <= 1.0:
        raise ParameterError(f"need 0 <= alpha <= 1, got {alpha}")
    e = _bm_exponent(n, i)
    S = radial_combine(1.0, K, 1.0, L)
    A, C = _blends(K, L, alpha)

    def sides(rr):
        lhs = rr.querm((S,) * (n - 1), i) ** e
        rhs = rr.querm((A,) * (n - 1), i) ** e + rr.querm((C,) * (n - 1), i) ** e
        return lhs, rhs

    notes = ()
    if (n - 1) * (n - i) < 1:
        notes = ("(n-1)(n-i) < 1: the L^q triangle inequality behind this bound is unavailable",)
    return _quadrature_report("brunn_minkowski", "Brunn-Minkowski inequality for intersection bodies",
                              sides, rules, tol, are_dilates(A, C, n), notes=notes, i=i, alpha=alpha)


def check_bm_corollary(K: BodyExpr, L: BodyExpr, i: float, rules: Rules, tol: Tolerance = "auto") -> IneqReport:
    """``W~_i(I(K +~ L))^e <= W~_i(IK)^e + W~_i(IL)^e`` (the ``alpha = 1`` case)."""
    report = check_brunn_minkowski(K, L, i, 1.0, rules, tol)
    report.name = "bm_corollary"
    report.label = "Brunn-Minkowski inequality for intersection bodies, alpha = 1"
    return report


def check_strengthened_form(K: BodyExpr, L: BodyExpr, i: float, alpha: float, rules: Rules,
                            tol: Tolerance = "auto") -> IneqReport:
    """``W~_i(I(A))^e + W~_i(I(C))^e <= W~_i(IK)^e + W~_i(IL)^e``.

    The blended right side of the Brunn-Minkowski check never exceeds the
    unblended one.  ``alpha`` in ``{0, 1}`` makes both sides identical.
    """
    n = rules.n
    K, L = _require_bodies((K, L), 2, n)
    i = _require_i(i, n)
    alpha = float(alpha)
    if not 0.0 <= alpha <= 1.0:
        raise ParameterError(f"need 0 <= alpha <= 1, got {alpha}")
    e = _bm_exponent(n, i)
    A, C = _blends(K, L, alpha)

    def sides(rr):
        lhs = rr.querm((A,) * (n - 1), i) ** e + rr.querm((C,) * (n - 1), i) ** e
        rhs = rr.querm((K,) * (n - 1), i) ** e + rr.querm((L,) * (n - 1), i) ** e
        return lhs, rhs

    equality = alpha in (0.0, 1.0) or are_dilates(K, L, n)
    return _quadrature_report("strengthened_form", "blended Brunn-Minkowski bound versus the plain bound",
                              sides, rules, tol, equality, i=i, alpha=alpha)


# -- registry ---------------------------------------------------------------

def _bodies_of(roles, count):
    if "bodies" in roles:
        return tuple(roles["bodies"])
    K, L = roles["K"], roles.get("L", roles["K"])
    return tuple(K if m % 2 == 0 else L for m in range(count))


CHECKS: Dict[str, Callable] = {
    "two_term_holder": lambda roles, p, rules, tol: check_two_term_holder(
        HolderPairInput(p["a"], p["b"], p["c"], p["d"], p["p"]), tol),
    "two_term_holder_printed": lambda roles, p, rules, tol: check_two_term_holder_printed(
        HolderPairInput(p["a"], p["b"], p["c"], p["d"], p["p"]), tol),
    "dual_af_volumes": lambda roles, p, rules, tol: check_dual_af_volumes(
        _bodies_of(roles, rules.n), p.get("r", 2), rules, tol),
    "minkowski_mixed": lambda roles, p, rules, tol: check_minkowski_mixed(
        roles["K"], roles["L"], p.get("i", 0), p.get("j", 1), rules, tol),
    "querm_sum_minkowski": lambda roles, p, rules, tol: check_querm_sum_minkowski(
        roles["K"], roles["L"], roles.get("D", UNIT_BALL), p.get("lam_D", 1.0), p.get("i", 0), p.get("j", 1),
        rules, tol),
    "af_intersection": lambda roles, p, rules, tol: check_af_intersection(
        _bodies_of(roles, rules.n - 1), p.get("i", 0), p.get("r", 2), rules, tol),
    "af_product": lambda roles, p, rules, tol: check_af_product(
        _bodies_of(roles, rules.n - 1), p.get("i", 0), rules, tol),
    "af_hybrid": lambda roles, p, rules, tol: check_af_hybrid(
        roles["K"], roles["L"], p.get("i", 0), p.get("j", 0), rules, tol),
    "brunn_minkowski": lambda roles, p, rules, tol: check_brunn_minkowski(
        roles["K"], roles["L"], p.get("i", 0), p.get("alpha", 0.5), rules, tol),
    "bm_corollary": lambda roles, p, rules, tol: check_bm_corollary(
        roles["K"], roles["L"], p.get("i", 0), rules, tol),
    "strengthened_form": lambda roles, p, rules, tol: check_strengthened_form(
        roles["K"], roles["L"], p.get("i", 0), p.get("alpha", 0.5), rules, tol),
}

# body roles each check reads; "bodies" may stand in for a K/L alternation
CHECK_ROLES = {
    "two_term_holder": (),
    "two_term_holder_printed": (),
    "dual_af_volumes": ("K", "L"),
    "minkowski_mixed": ("K", "L"),
    "querm_sum_minkowski": ("K", "L", "D"),
    "af_intersection": ("K", "L"),
    "af_product": ("K", "L"),
    "af_hybrid": ("K", "L"),
    "brunn_minkowski": ("K", "L"),
    "bm_corollary": ("K", "L"),
    "strengthened_form": ("K", "L"),
}


def run_check(name: str, roles: dict, params: dict, rules: Rules, tol: Tolerance = "auto") -> IneqReport:
    """Dispatch a check by name; ``roles`` maps ``K``, ``L``, ``D`` or ``bodies`` to bodies."""
    try:
        fn = CHECKS[name]
    except KeyError:
        raise ParameterError(f"unknown check {name!r}; known: {', '.join(sorted(CHECKS))}") from None
    try:
        return fn(roles, params, rules, tol)
    except KeyError as exc:
        raise ParameterError(f"check {name!r} needs {exc.args[0]!r}") from None
