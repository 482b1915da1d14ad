"""Star bodies as immutable expression trees over closed-form radial functions.

Every node exposes ``radial(U)``, vectorized over the trailing axis of ``U``
(an array of unit vectors of shape ``(..., n)``).  ``eval_radial`` is the
checked single-direction entry point.

All nodes are frozen dataclasses holding only tuples and floats, so they are
hashable, comparable and safe to share between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from .errors import DegenerateBodyError, ParameterError, StarBodyViolation
from .quadrature import build_sphere_rule

__all__ = [
    "BodyExpr",
    "Ball",
    "Ellipsoid",
    "LpBall",
    "BumpTerm",
    "Bump",
    "RadialCombination",
    "Dilate",
    "IntersectionBodyOf",
    "GlobalParams",
    "StarBodyReport",
    "UNIT_BALL",
    "eval_radial",
    "radial_combine",
    "dilate",
    "validate_star_body",
    "body_dim",
    "are_dilates",
]


def _positive(name, value):
    value = float(value)
    if not value > 0.0 or not math.isfinite(value):
        raise ParameterError(f"{name} must be a positive finite number, got {value!r}")
    return value


class BodyExpr:
    """Base class of star-body expression nodes."""

    def radial(self, U: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    @property
    def dim(self) -> Optional[int]:
        """Ambient dimension fixed by the node, or ``None`` if any ``n`` works."""
        return None

    def children(self) -> Tuple["BodyExpr", ...]:
        return ()


@dataclass(frozen=True)
class Ball(BodyExpr):
    radius: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "radius", _positive("radius", self.radius))

    def radial(self, U):
        U = np.asarray(U)
        return np.full(U.shape[:-1], self.radius)


UNIT_BALL = Ball(1.0)


@dataclass(frozen=True)
class Ellipsoid(BodyExpr):
    """Axis-aligned ellipsoid, ``rho(u) = (sum u_k^2 / a_k^2)^(-1/2)``."""

    axes: Tuple[float, ...]

    def __post_init__(self):
        axes = tuple(_positive("semiaxis", a) for a in self.axes)
        if len(axes) < 2:
            raise ParameterError("an ellipsoid needs at least two semiaxes")
        object.__setattr__(self, "axes", axes)

    @property
    def dim(self):
        return len(self.axes)

    def radial(self, U):
        U = np.asarray(U, dtype=float)
        _check_dim(self, U)
        inv = 1.0 / np.asarray(self.axes) ** 2
        return 1.0 / np.sqrt(np.sum(U * U * inv, axis=-1))


@dataclass(frozen=True)
class LpBall(BodyExpr):
    """``rho(u) = scale * (sum |u_k|^p)^(-1/p)`` for ``p >= 1``."""

    p: float
    scale: float = 1.0

    def __post_init__(self):
        p = float(self.p)
        if not p >= 1.0 or not math.isfinite(p):
            raise ParameterError(f"LpBall requires finite p >= 1, got {self.p!r}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "scale", _positive("scale", self.scale))

    def radial(self, U):
        U = np.asarray(U, dtype=float)
        return self.scale * np.sum(np.abs(U) ** self.p, axis=-1) ** (-1.0 / self.p)


@dataclass(frozen=True)
class BumpTerm:
    """One term ``c * (u . v)^(2m)`` of a bump body."""

    c: float
    v: Tuple[float, ...]
    m: int = 1

    def __post_init__(self):
        c = float(self.c)
        if not c >= 0.0 or not math.isfinite(c):
            raise ParameterError(f"bump coefficient must be >= 0, got {self.c!r}")
        if int(self.m) != self.m or self.m < 1:
            raise ParameterError(f"bump half-exponent must be a positive integer, got {self.m!r}")
        v = tuple(float(x) for x in self.v)
        if not any(v):
            raise ParameterError("bump direction must be non-zero")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "m", int(self.m))


@dataclass(frozen=True)
class Bump(BodyExpr):
    """``rho(u) = c0 + sum_k c_k (u . v_k)^(2 m_k)`` with ``c0 > 0, c_k >= 0``."""

    c0: float
    terms: Tuple[BumpTerm, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "c0", _positive("c0", self.c0))
        terms = tuple(t if isinstance(t, BumpTerm) else BumpTerm(*t) for t in self.terms)
        dims = {len(t.v) for t in terms}
        if len(dims) > 1:
            raise ParameterError(f"bump directions have mixed lengths {sorted(dims)}")
        object.__setattr__(self, "terms", terms)

    @property
    def dim(self):
        return len(self.terms[0].v) if self.terms else None

    def radial(self, U):
        U = np.asarray(U, dtype=float)
        _check_dim(self, U)
        out = np.full(U.shape[:-1], self.c0)
        for t in self.terms:
            out = out + t.c * (U @ np.asarray(t.v)) ** (2 * t.m)
        return out


@dataclass(frozen=True)
class RadialCombination(BodyExpr):
    """``lam * K +~ mu * L``: radial functions add linearly."""

    lam: float
    K: BodyExpr
    mu: float
    L: BodyExpr

    def __post_init__(self):
        lam, mu = float(self.lam), float(self.mu)
        if not (lam >= 0.0 and mu >= 0.0):
            raise ParameterError(f"combination coefficients must be >= 0, got {lam!r}, {mu!r}")
        if lam == 0.0 and mu == 0.0:
            raise DegenerateBodyError("radial combination with both coefficients zero")
        _common_dim(self.K, self.L)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "mu", mu)

    @property
    def dim(self):
        return _common_dim(self.K, self.L)

    def children(self):
        return (self.K, self.L)

    def radial(self, U):
        return self.lam * self.K.radial(U) + self.mu * self.L.radial(U)


@dataclass(frozen=True)
class Dilate(BodyExpr):
    lam: float
    K: BodyExpr

    def __post_init__(self):
        object.__setattr__(self, "lam", _positive("dilation factor", self.lam))

    @property
    def dim(self):
        return self.K.dim

    def children(self):
        return (self.K,)

    def radial(self, U):
        return self.lam * self.K.radial(U)


@dataclass(frozen=True)
class IntersectionBodyOf(BodyExpr):
    """Mixed intersection body of ``n - 1`` bodies in ``R^n``.

    The radial value at ``u`` is the ``(n-1)``-dimensional dual mixed volume
    of the central sections by ``u^⊥``, integrated with a subsphere rule of
    the captured ``resolution``.
    """

    bodies: Tuple[BodyExpr, ...]
    resolution: int = 24

    def __post_init__(self):
        bodies = tuple(self.bodies)
        if len(bodies) < 2:
            raise ParameterError("a mixed intersection body needs n - 1 >= 2 bodies")
        if int(self.resolution) != self.resolution or self.resolution < 1:
            raise ParameterError(f"inner resolution must be a positive integer, got {self.resolution!r}")
        d = _common_dim(*bodies)
        if d is not None and d != len(bodies) + 1:
            raise ParameterError(f"{len(bodies)} bodies define R^{len(bodies) + 1} but the bodies live in R^{d}")
        object.__setattr__(self, "bodies", bodies)
        object.__setattr__(self, "resolution", int(self.resolution))

    @property
    def dim(self):
        return len(self.bodies) + 1

    def children(self):
        return self.bodies

    def radial(self, U):
        from .intersect import section_dual_mixed_volumes

        U = np.asarray(U, dtype=float)
        _check_dim(self, U)
        flat = U.reshape(-1, U.shape[-1])
        values = section_dual_mixed_volumes(self.bodies, flat, self.resolution)
        return values.reshape(U.shape[:-1])


def _check_dim(body, U):
    d = body.dim
    if d is not None and U.shape[-1] != d:
        raise ParameterError(f"{type(body).__name__} lives in R^{d} but was evaluated on vectors of length {U.shape[-1]}")


def _common_dim(*bodies):
    dims = {b.dim for b in bodies} - {None}
    if len(dims) > 1:
        raise ParameterError(f"bodies live in different dimensions {sorted(dims)}")
    return dims.pop() if dims else None


def body_dim(*bodies, default=None):
    """The common ambient dimension of ``bodies`` (``default`` if unconstrained)."""
    d = _common_dim(*bodies)
    return default if d is None else d


@dataclass(frozen=True)
class GlobalParams:
    """Dimension and indices shared by the inequality checkers."""

    n: int
    i: float = 0.0
    j: int = 1
    r: int = 1
    alpha: float = 1.0

    def __post_init__(self):
        if int(self.n) != self.n or self.n <= 2:
            raise ParameterError(f"dimension must be an integer > 2, got {self.n!r}")

    def require_i(self):
        if not 0.0 <= self.i < self.n:
            raise ParameterError(f"need 0 <= i < n, got i={self.i}, n={self.n}")

    def require_j(self):
        if int(self.j) != self.j or not 0 < self.j < self.n - 1:
            raise ParameterError(f"need integer 0 < j < n-1, got j={self.j}, n={self.n}")

    def require_r(self):
        if int(self.r) != self.r or not 0 < self.r <= self.n - 1:
            raise ParameterError(f"need integer 0 < r <= n-1, got r={self.r}, n={self.n}")

    def require_alpha(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ParameterError(f"need 0 <= alpha <= 1, got {self.alpha}")


def eval_radial(K: BodyExpr, u) -> float:
    """``rho(K, u)`` for a single unit vector ``u``."""
    u = np.asarray(u, dtype=float).reshape(-1)
    norm = float(np.linalg.norm(u))
    if abs(norm - 1.0) > 1e-9:
        raise ParameterError(f"direction must be a unit vector, |u| = {norm!r}")
    value = float(K.radial(u[None, :])[0])
    if not value > 0.0:
        raise StarBodyViolation(
            f"radial function is {value!r} in direction {u.tolist()}", direction=u, value=value
        )
    return value


def radial_combine(lam: float, K: BodyExpr, mu: float, L: BodyExpr) -> RadialCombination:
    return RadialCombination(lam, K, mu, L)


def dilate(lam: float, K: BodyExpr) -> Dilate:
    return Dilate(lam, K)


@dataclass(frozen=True)
class StarBodyReport:
    min_rho: float
    argmin: np.ndarray = field(compare=False)
    ok: bool


def validate_star_body(K: BodyExpr, rule) -> StarBodyReport:
    """Minimum of ``rho(K, .)`` over the nodes of ``rule``; ``ok`` iff positive."""
    d = K.dim
    if d is not None and d != rule.dim:
        raise ParameterError(f"body lives in R^{d} but the rule is on S^{rule.m}")
    values = K.radial(rule.nodes)
    k = int(np.argmin(values))
    lo = float(values[k])
    return StarBodyReport(lo, rule.nodes[k].copy(), bool(np.isfinite(lo) and lo > 0.0))


def are_dilates(K: BodyExpr, L: BodyExpr, n: int, resolution: int = 6, rtol: float = 1e-9) -> bool:
    """Numerical dilate test: ``rho(L)/rho(K)`` constant on a reference rule.

    Exact equality of bodies short-circuits without evaluation.
    """
    if K == L:
        return True
    rule = build_sphere_rule(n - 1, resolution)
    ratio = L.radial(rule.nodes) / K.radial(rule.nodes)
    return bool(np.ptp(ratio) <= rtol * np.max(np.abs(ratio)))
