"""Central sections and (mixed) intersection bodies.

For ``K_1..K_{n-1}`` in ``R^n`` and a unit vector ``u`` the mixed
intersection body has radial value::

    rho(I(K_1..K_{n-1}), u) = (1/(n-1)) * integral over S^(n-1) ∩ u^⊥ of prod_k rho(K_k, w) dw

which is the ``(n-1)``-dimensional dual mixed volume of the sections.
Intersection bodies are lazy leaves (:class:`IntersectionBodyOf`); their
quermassintegrals can also be computed in one fused double sum.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence, Tuple

import numpy as np

from .dualvol import radial_values, safe_power
from .errors import ParameterError
from .quadrature import SphereRule, SubsphereRule, build_sphere_rule, build_subsphere_rule, subsphere_frames
from .starbody import UNIT_BALL, BodyExpr, IntersectionBodyOf, body_dim

__all__ = [
    "SectionContext",
    "section_context",
    "section_radial",
    "section_volume",
    "section_dual_mixed_volume",
    "section_dual_mixed_volumes",
    "mixed_intersection_body",
    "intersection_body",
    "ith_intersection_body",
    "ith_multiset",
    "querm_of_intersection_fused",
]

# upper bound on outer x inner points evaluated at once
_CHUNK_POINTS = 1 << 19


@dataclass(frozen=True, eq=False)
class SectionContext:
    u: np.ndarray
    sub: SubsphereRule
    bodies: Tuple[BodyExpr, ...]

    @property
    def n(self):
        return self.u.shape[0]


def section_context(u, bodies: Sequence[BodyExpr], resolution: int = 24) -> SectionContext:
    bodies = tuple(bodies)
    u = np.asarray(u, dtype=float)
    n = u.shape[0]
    if len(bodies) != n - 1:
        raise ParameterError(f"need {n - 1} bodies for sections in R^{n}, got {len(bodies)}")
    sub = build_subsphere_rule(u, n, resolution)
    return SectionContext(sub.u, sub, bodies)


def section_radial(K: BodyExpr, ctx: SectionContext, w) -> float:
    """Radial function of the section ``K ∩ E_u`` at ``w`` in ``E_u``."""
    w = np.asarray(w, dtype=float).reshape(-1)
    if abs(np.linalg.norm(w) - 1.0) > 1e-9 or abs(float(w @ ctx.u)) > 1e-9:
        raise ParameterError(f"{w.tolist()} is not a unit vector orthogonal to u = {ctx.u.tolist()}")
    return float(radial_values(K, w[None, :])[0])


def _grouped(bodies):
    counts = Counter()
    order = []
    for b in bodies:
        if b not in counts:
            order.append(b)
        counts[b] += 1
    return [(b, counts[b]) for b in order]


def _section_integrand(groups, W):
    out = None
    for body, k in groups:
        term = safe_power(radial_values(body, W), k)
        out = term if out is None else out * term
    return out


def section_dual_mixed_volume(ctx: SectionContext) -> float:
    """``v~(K_1 ∩ E_u, ..., K_{n-1} ∩ E_u)`` on the context's subsphere rule."""
    values = _section_integrand(_grouped(ctx.bodies), ctx.sub.nodes)
    return float(np.sum(ctx.sub.weights * values)) / (ctx.n - 1)


def section_volume(K: BodyExpr, ctx: SectionContext) -> float:
    """``(n-1)``-volume of the central section ``K ∩ E_u``."""
    values = _section_integrand([(K, ctx.n - 1)], ctx.sub.nodes)
    return float(np.sum(ctx.sub.weights * values)) / (ctx.n - 1)


def section_dual_mixed_volumes(bodies: Sequence[BodyExpr], U: np.ndarray, resolution: int) -> np.ndarray:
    """Vectorized ``v~`` of the sections by ``u^⊥`` for every row ``u`` of ``U``.

    Each row uses the same frame and nodes as :func:`section_dual_mixed_volume`
    would for that ``u``; results agree with it to rounding.
    """
    bodies = tuple(bodies)
    U = np.asarray(U, dtype=float)
    P, n = U.shape
    if len(bodies) != n - 1:
        raise ParameterError(f"need {n - 1} bodies for sections in R^{n}, got {len(bodies)}")
    base = build_sphere_rule(n - 2, resolution)
    groups = _grouped(bodies)
    Q = len(base)
    out = np.empty(P)
    step = max(1, _CHUNK_POINTS // Q)
    for start in range(0, P, step):
        frames = subsphere_frames(U[start:start + step])
        W = np.einsum("qk,pkn->pqn", base.nodes, frames)
        values = _section_integrand(groups, W)
        out[start:start + step] = np.sum(values * base.weights, axis=1)
    return out / (n - 1)


def mixed_intersection_body(bodies: Sequence[BodyExpr], resolution: int = 24) -> IntersectionBodyOf:
    """``I(K_1, ..., K_{n-1})`` as a lazily evaluated star body."""
    return IntersectionBodyOf(tuple(bodies), resolution)


def intersection_body(K: BodyExpr, n: int = None, resolution: int = 24) -> IntersectionBodyOf:
    """``IK = I(K, ..., K)``.  ``n`` may be omitted when ``K`` fixes it."""
    n = _resolve_n(n, K)
    return IntersectionBodyOf((K,) * (n - 1), resolution)


def ith_multiset(K: BodyExpr, L: BodyExpr, j: int, n: int) -> Tuple[BodyExpr, ...]:
    """``n - j - 1`` copies of ``K`` followed by ``j`` copies of ``L``."""
    if int(j) != j or not 0 <= j <= n - 1:
        raise ParameterError(f"need integer 0 <= j <= n-1, got j={j}, n={n}")
    j = int(j)
    return (K,) * (n - j - 1) + (L,) * j


def ith_intersection_body(K: BodyExpr, L: BodyExpr = UNIT_BALL, j: int = 1, n: int = None,
                          resolution: int = 24) -> IntersectionBodyOf:
    """``I_j(K, L)``; with the default ``L = B`` this is ``I_j K``."""
    n = _resolve_n(n, K, L)
    return IntersectionBodyOf(ith_multiset(K, L, j, n), resolution)


def _resolve_n(n, *bodies):
    d = body_dim(*bodies)
    if n is None:
        if d is None:
            raise ParameterError("dimension cannot be inferred from the bodies; pass n")
        return d
    if d is not None and d != n:
        raise ParameterError(f"bodies live in R^{d}, not R^{n}")
    if n < 3:
        raise ParameterError(f"dimension must be >= 3, got {n}")
    return n


def querm_of_intersection_fused(bodies: Sequence[BodyExpr], i: float, outer: SphereRule,
                                inner_resolution: int) -> float:
    """``W~_i(I(K_1..K_{n-1}))`` as one double sum, without building the body.

    ``(1/n) sum_p w_p v~(sections by u_p^⊥)^(n-i)``.
    """
    bodies = tuple(bodies)
    n = outer.dim
    if len(bodies) != n - 1:
        raise ParameterError(f"need {n - 1} bodies in R^{n}, got {len(bodies)}")
    return _fused(bodies, float(i), n, outer.resolution, int(inner_resolution))


@lru_cache(maxsize=4096)
def _fused(bodies, i, n, outer_resolution, inner_resolution):
    outer = build_sphere_rule(n - 1, outer_resolution)
    v = section_dual_mixed_volumes(bodies, outer.nodes, inner_resolution)
    return float(np.sum(outer.weights * safe_power(v, n - i))) / n
