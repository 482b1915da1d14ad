"""Deterministic product quadrature on unit spheres and great subspheres.

A rule on ``S^m`` (a subset of ``R^(m+1)``) is built recursively: the last
coordinate is the polar variable ``t = cos(theta)`` and the remaining
coordinates are ``sin(theta) * w`` with ``w`` a node of the rule on
``S^(m-1)``.  The surface element factors as
``sin(theta)^(m-1) dtheta dS_{m-1}``.

* ``m = 1``: ``2 * resolution`` equally spaced nodes (trapezoidal rule).
* ``m = 2``: Gauss-Legendre nodes in ``t`` (the Jacobian is 1).
* ``m >= 3``: Gauss-Gegenbauer nodes in ``t`` for the Jacobian weight
  ``(1 - t^2)^((m-2)/2)``, the Legendre rule's natural generalization.
  Each polar factor integrates polynomials of degree ``2 * resolution - 1``
  exactly.

Every rule is symmetric under ``u -> -u`` (node for node), so integrals of
odd functions vanish to rounding and mirrored directions share subsphere
frames.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy import special

from .errors import EvaluationError, ParameterError

__all__ = [
    "SphereRule",
    "SubsphereRule",
    "sphere_area",
    "build_sphere_rule",
    "build_subsphere_rule",
    "subsphere_frames",
    "integrate",
    "estimate_rule_error",
]


def sphere_area(m: int) -> float:
    """Surface measure of the unit sphere ``S^m`` in ``R^(m+1)``."""
    return 2.0 * math.pi ** ((m + 1) / 2) / math.gamma((m + 1) / 2)


@dataclass(frozen=True, eq=False)
class SphereRule:
    """Nodes and positive weights on ``S^m``.

    ``nodes`` has shape ``(P, m + 1)`` and ``weights`` shape ``(P,)``; both
    arrays are read-only.
    """

    m: int
    nodes: np.ndarray
    weights: np.ndarray
    resolution: int

    @property
    def dim(self) -> int:
        """Dimension of the ambient space."""
        return self.m + 1

    def __len__(self):
        return self.weights.shape[0]


@dataclass(frozen=True, eq=False)
class SubsphereRule:
    """A rule on ``S^(n-1) ∩ E_u``, the unit sphere of the hyperplane ``u^⊥``.

    ``basis`` has shape ``(n - 1, n)``; ``embedded.nodes`` holds the base
    rule's nodes pushed through ``basis`` into ``R^n``.
    """

    u: np.ndarray
    basis: np.ndarray
    embedded: SphereRule

    @property
    def nodes(self) -> np.ndarray:
        return self.embedded.nodes

    @property
    def weights(self) -> np.ndarray:
        return self.embedded.weights


def _readonly(a):
    a = np.ascontiguousarray(a, dtype=float)
    a.setflags(write=False)
    return a


def _circle(resolution):
    count = 2 * resolution
    phi = 2.0 * math.pi * np.arange(count) / count
    nodes = np.column_stack([np.cos(phi), np.sin(phi)])
    weights = np.full(count, 2.0 * math.pi / count)
    return nodes, weights


def _polar_factor(m, resolution):
    """Polar nodes ``(t, s)`` with ``t^2 + s^2 = 1`` and weights for level ``m``."""
    if m == 2:
        t, w = np.polynomial.legendre.leggauss(resolution)
    else:
        t, w = special.roots_gegenbauer(resolution, (m - 1) / 2)
    s = np.sqrt(np.clip(1.0 - t * t, 0.0, None))
    # t is antisymmetric to rounding only; force exact mirror symmetry
    half = resolution // 2
    t[resolution - half:] = -t[:half][::-1]
    s[resolution - half:] = s[:half][::-1]
    w[resolution - half:] = w[:half][::-1]
    if resolution % 2:
        t[half] = 0.0
        s[half] = 1.0
    return t, s, w


@lru_cache(maxsize=64)
def build_sphere_rule(m: int, resolution: int) -> SphereRule:
    """Product rule on ``S^m`` with ``resolution`` polar nodes per level.

    The rule has ``2 * resolution * resolution**(m - 1)`` nodes.  Results are
    cached, so repeated requests return the same immutable object.
    """
    if isinstance(m, bool) or not isinstance(m, (int, np.integer)) or m < 1:
        raise ParameterError(f"sphere dimension must be an integer >= 1, got {m!r}")
    if isinstance(resolution, bool) or not isinstance(resolution, (int, np.integer)) or resolution < 1:
        raise ParameterError(f"resolution must be an integer >= 1, got {resolution!r}")
    m, resolution = int(m), int(resolution)

    nodes, weights = _circle(resolution)
    for level in range(2, m + 1):
        t, s, w = _polar_factor(level, resolution)
        # polar index outermost, previous level innermost
        nodes = np.concatenate(
            [s[:, None, None] * nodes[None, :, :],
             np.broadcast_to(t[:, None, None], (resolution, nodes.shape[0], 1))],
            axis=2,
        ).reshape(-1, level + 1)
        weights = (w[:, None] * weights[None, :]).reshape(-1)
    return SphereRule(m, _readonly(nodes), _readonly(weights), resolution)


def subsphere_frames(U) -> np.ndarray:
    """Orthonormal bases of ``u^⊥`` for each row of ``U``.

    Gram-Schmidt is run on ``u`` followed by the standard basis vectors in
    index order, skipping the one with the largest ``|u_k|``.  ``U`` of shape
    ``(P, n)`` gives bases of shape ``(P, n - 1, n)``.  The construction is
    even in ``u`` so ``u`` and ``-u`` share a frame.
    """
    U = np.asarray(U, dtype=float)
    P, n = U.shape
    norms = np.linalg.norm(U, axis=1)
    if np.any(norms == 0.0):
        raise ParameterError("cannot build a subsphere around the zero vector")
    U = U / norms[:, None]
    skip = np.argmax(np.abs(U), axis=1)
    keep = np.array([[k for k in range(n) if k != a] for a in range(n)])
    cand = np.eye(n)[keep[skip]]  # (P, n-1, n)

    basis = np.empty((P, n - 1, n))
    for c in range(n - 1):
        v = cand[:, c, :]
        # two passes keep orthogonality at the 1e-16 level
        for _ in range(2):
            v = v - np.sum(v * U, axis=1)[:, None] * U
            for q in range(c):
                b = basis[:, q, :]
                v = v - np.sum(v * b, axis=1)[:, None] * b
        basis[:, c, :] = v / np.linalg.norm(v, axis=1)[:, None]
    return basis


def build_subsphere_rule(u, n: int, resolution: int) -> SubsphereRule:
    """Rule on the great subsphere orthogonal to ``u`` in ``R^n``."""
    if n < 3:
        raise ParameterError(f"dimension must be >= 3, got {n}")
    u = np.asarray(u, dtype=float).reshape(-1)
    if u.shape[0] != n:
        raise ParameterError(f"direction has {u.shape[0]} components, expected {n}")
    norm = float(np.linalg.norm(u))
    if norm == 0.0:
        raise ParameterError("cannot build a subsphere around the zero vector")
    if abs(norm - 1.0) > 1e-9:
        raise ParameterError(f"direction must be a unit vector, |u| = {norm!r}")
    u = u / norm
    basis = subsphere_frames(u[None, :])[0]
    base = build_sphere_rule(n - 2, resolution)
    embedded = SphereRule(n - 2, _readonly(base.nodes @ basis), base.weights, resolution)
    return SubsphereRule(_readonly(u), _readonly(basis), embedded)


def integrate(rule: SphereRule, f: Callable) -> float:
    """Return ``sum_p w_p f(node_p)``.

    ``f`` receives the full ``(P, dim)`` node array and must return ``P``
    values.  Summation is numpy's fixed-order pairwise reduction, so the
    result does not depend on threading.
    """
    values = np.asarray(f(rule.nodes), dtype=float)
    if values.shape != rule.weights.shape:
        values = np.broadcast_to(values, rule.weights.shape)
    bad = ~np.isfinite(values)
    if np.any(bad):
        p = int(np.flatnonzero(bad)[0])
        raise EvaluationError(
            f"integrand is {values[p]} at node {p} = {rule.nodes[p].tolist()}",
            point=rule.nodes[p].copy(),
        )
    return float(np.sum(rule.weights * values))


def estimate_rule_error(f: Callable, m: int, resolution: int) -> float:
    """Practical error estimate ``|I(r) - I(r // 2)|`` on ``S^m``."""
    if resolution < 2:
        raise ParameterError(f"resolution must be >= 2 for an error estimate, got {resolution}")
    fine = integrate(build_sphere_rule(m, resolution), f)
    coarse = integrate(build_sphere_rule(m, resolution // 2), f)
    return abs(fine - coarse)
