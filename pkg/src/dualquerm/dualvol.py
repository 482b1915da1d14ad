"""Dual mixed volumes and dual quermassintegrals on a sphere rule.

For star bodies ``K_1..K_n`` in ``R^n``::

    V~(K_1, ..., K_n) = (1/n) * integral over S^(n-1) of prod_k rho(K_k, u) dS(u)
    V~_i(K, L)        = (1/n) * integral of rho(K)^(n-i) rho(L)^i
    W~_i(K)           = V~_i(K, B) = (1/n) * integral of rho(K)^(n-i)

The index ``i`` may be any real number.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import comb

import numpy as np

from .errors import ParameterError, StarBodyViolation
from .quadrature import SphereRule, integrate
from .starbody import BodyExpr, radial_combine

__all__ = [
    "safe_power",
    "radial_values",
    "dual_mixed_volume",
    "dual_mixed_volume_i",
    "dual_quermassintegral",
    "dual_querm_sum",
    "ExpansionReport",
    "expansion_check",
]

# ratio above which powers are taken through logarithms
_LOG_SPAN = 1e6


def safe_power(x: np.ndarray, e: float) -> np.ndarray:
    """``x ** e`` for positive ``x``, via ``exp(e log x)`` when ``x`` spans many decades."""
    x = np.asarray(x, dtype=float)
    if e == 0:
        return np.ones_like(x)
    if e == 1:
        return x
    lo, hi = float(np.min(x)), float(np.max(x))
    if lo > 0 and hi / lo > _LOG_SPAN:
        return np.exp(e * np.log(x))
    return x ** e


def radial_values(K: BodyExpr, nodes: np.ndarray) -> np.ndarray:
    """``rho(K, .)`` at every node, raising on a non-positive value."""
    values = np.asarray(K.radial(nodes), dtype=float)
    bad = ~(values > 0.0)
    if np.any(bad):
        p = int(np.flatnonzero(bad)[0])
        raise StarBodyViolation(
            f"radial function of {K!r} is {values[p]!r} in direction {nodes[p].tolist()}",
            direction=np.array(nodes[p]),
            value=float(values[p]),
        )
    return values


def _product_of_powers(factors, nodes):
    """``prod_k rho(K_k)^e_k`` with identical bodies grouped into one power."""
    grouped = Counter()
    order = []
    for body, e in factors:
        if body not in grouped:
            order.append(body)
        grouped[body] += e
    out = None
    for body in order:
        e = grouped[body]
        if e == 0:
            continue
        term = safe_power(radial_values(body, nodes), e)
        out = term if out is None else out * term
    return np.ones(nodes.shape[0]) if out is None else out


def _check_rule(rule: SphereRule, *bodies):
    for K in bodies:
        if K.dim is not None and K.dim != rule.dim:
            raise ParameterError(f"{type(K).__name__} lives in R^{K.dim} but the rule is on S^{rule.m}")


def dual_mixed_volume(bodies, rule: SphereRule) -> float:
    """``V~(K_1, ..., K_n)`` for exactly ``n = rule.dim`` bodies."""
    bodies = tuple(bodies)
    n = rule.dim
    if len(bodies) != n:
        raise ParameterError(f"need {n} bodies in R^{n}, got {len(bodies)}")
    _check_rule(rule, *bodies)
    return integrate(rule, lambda U: _product_of_powers([(K, 1) for K in bodies], U)) / n


def dual_mixed_volume_i(K: BodyExpr, L: BodyExpr, i: float, rule: SphereRule) -> float:
    """``V~_i(K, L) = (1/n) integral rho(K)^(n-i) rho(L)^i``."""
    n = rule.dim
    _check_rule(rule, K, L)
    i = float(i)
    return integrate(rule, lambda U: _product_of_powers([(K, n - i), (L, i)], U)) / n


def dual_quermassintegral(K: BodyExpr, i: float, rule: SphereRule) -> float:
    """``W~_i(K) = (1/n) integral rho(K)^(n-i)``; ``W~_0`` is the volume."""
    n = rule.dim
    _check_rule(rule, K)
    e = n - float(i)
    return integrate(rule, lambda U: safe_power(radial_values(K, U), e)) / n


def dual_querm_sum(K: BodyExpr, D: BodyExpr, i: float, rule: SphereRule) -> float:
    """``W~_i(K) + W~_i(D)``, defined for ``0 <= i <= n - 1``."""
    n = rule.dim
    if not 0.0 <= i <= n - 1:
        raise ParameterError(f"the quermassintegral sum is defined for 0 <= i <= n-1, got i={i}")
    return dual_quermassintegral(K, i, rule) + dual_quermassintegral(D, i, rule)


@dataclass(frozen=True)
class ExpansionReport:
    direct: float
    expanded: float
    difference: float


def expansion_check(K: BodyExpr, L: BodyExpr, lam: float, mu: float, rule: SphereRule) -> ExpansionReport:
    """Compare ``V(lam K +~ mu L)`` with its binomial expansion in dual mixed volumes."""
    n = rule.dim
    direct = dual_quermassintegral(radial_combine(lam, K, mu, L), 0, rule)
    expanded = 0.0
    for i in range(n + 1):
        coef = comb(n, i) * lam ** (n - i) * mu ** i
        if coef:
            expanded += coef * dual_mixed_volume_i(K, L, i, rule)
    return ExpansionReport(direct, expanded, abs(direct - expanded))
