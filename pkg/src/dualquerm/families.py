"""Random and parameterized generators of star bodies.

The randomized family is: balls, dilates, ellipsoids with semiaxes in
``[0.5, 2]``, ``LpBall`` with ``p`` in ``{1, 1.5, 3}``, and bumps with
``c0 = 1`` and coefficients at most ``0.3``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict

import numpy as np

from .errors import GenerationError
from .starbody import UNIT_BALL, Ball, BodyExpr, Bump, BumpTerm, Dilate, Ellipsoid, LpBall

__all__ = [
    "KINDS",
    "random_body",
    "random_roles",
    "dilate_roles",
    "ParamFamily",
    "FAMILIES",
    "get_family",
]

KINDS = ("ball", "dilate", "ellipsoid", "lpball", "bump")


def _unit(rng, n):
    v = rng.standard_normal(n)
    return tuple(float(x) for x in v / np.linalg.norm(v))


def random_body(rng: np.random.Generator, n: int, kind: str = None) -> BodyExpr:
    """Draw one body of the test family (``kind`` chosen uniformly if omitted)."""
    kind = kind or KINDS[int(rng.integers(len(KINDS)))]
    if kind == "ball":
        return Ball(float(rng.uniform(0.5, 2.0)))
    if kind == "dilate":
        inner = random_body(rng, n, KINDS[2 + int(rng.integers(3))])
        return Dilate(float(rng.uniform(0.5, 2.0)), inner)
    if kind == "ellipsoid":
        return Ellipsoid(tuple(float(a) for a in rng.uniform(0.5, 2.0, n)))
    if kind == "lpball":
        return LpBall(float(rng.choice([1.0, 1.5, 3.0])), float(rng.uniform(0.5, 2.0)))
    if kind == "bump":
        count = 1 + int(rng.integers(3))
        terms = tuple(BumpTerm(float(rng.uniform(0.0, 0.3)), _unit(rng, n), 1 + int(rng.integers(2)))
                      for _ in range(count))
        return Bump(1.0, terms)
    raise GenerationError(f"unknown body kind {kind!r}")


def random_roles(rng: np.random.Generator, n: int) -> Dict[str, object]:
    """Independent random ``K, L, D`` plus an ``n``-body list."""
    return {
        "K": random_body(rng, n),
        "L": random_body(rng, n),
        "D": random_body(rng, n),
        "bodies": tuple(random_body(rng, n) for _ in range(n)),
    }


def dilate_roles(rng: np.random.Generator, n: int) -> Dict[str, object]:
    """Roles that are all dilates of one random body.

    ``lam_D`` is the factor relating ``L`` to ``K``, the value for which the
    quermassintegral-sum inequality is sharp.
    """
    base = random_body(rng, n, KINDS[2 + int(rng.integers(3))])
    c = float(rng.uniform(0.5, 2.0))
    scales = rng.uniform(0.5, 2.0, n)
    return {
        "K": base,
        "L": Dilate(c, base),
        "D": Dilate(float(rng.uniform(0.5, 2.0)), base),
        "bodies": tuple(Dilate(float(s), base) for s in scales),
        "lam_D": c,
    }


@dataclass(frozen=True)
class ParamFamily:
    """Maps a parameter vector in the box ``[lower, upper]`` to check roles.

    A ``"params"`` entry in the result supplies scalar check parameters.
    """

    name: str
    lower: tuple
    upper: tuple
    build: Callable[[np.ndarray], Dict[str, object]]

    @property
    def size(self):
        return len(self.lower)

    def __call__(self, params) -> Dict[str, object]:
        params = np.asarray(params, dtype=float)
        try:
            return self.build(params)
        except Exception as exc:
            raise GenerationError(f"family {self.name!r} rejected parameters {params.tolist()}: {exc}",
                                  params=params.tolist()) from exc


def _ball_scale(n):
    return ParamFamily("ball_scale", (0.5,), (2.0,),
                       lambda x: {"K": UNIT_BALL, "L": Ball(float(x[0]))})


def _ellipsoid_axes(n):
    return ParamFamily("ellipsoid_axes", (0.5,) * n, (2.0,) * n,
                       lambda x: {"K": Ellipsoid(tuple(float(a) for a in x)), "L": UNIT_BALL})


def _bump_coeffs(n):
    def build(x):
        terms = tuple(BumpTerm(float(c), tuple(float(k == d) for d in range(n)), 2) for k, c in enumerate(x))
        return {"K": Bump(1.0, terms), "L": UNIT_BALL}

    return ParamFamily("bump_coeffs", (0.0,) * n, (0.3,) * n, build)


def _lp_exponent(n):
    return ParamFamily("lp_exponent", (1.0,), (4.0,),
                       lambda x: {"K": LpBall(float(x[0])), "L": UNIT_BALL})


def _holder_scalars(n):
    keys = ("a", "b", "c", "d", "p")
    return ParamFamily("holder_scalars", (0.0, 0.0, 0.05, 0.05, 0.05), (2.0, 2.0, 2.0, 2.0, 0.95),
                       lambda x: {"params": {k: float(v) for k, v in zip(keys, x)}})


FAMILIES: Dict[str, Callable[[int], ParamFamily]] = {
    "ball_scale": _ball_scale,
    "ellipsoid_axes": _ellipsoid_axes,
    "bump_coeffs": _bump_coeffs,
    "lp_exponent": _lp_exponent,
    "holder_scalars": _holder_scalars,
}


def get_family(name: str, n: int) -> ParamFamily:
    try:
        return FAMILIES[name](n)
    except KeyError:
        raise GenerationError(f"unknown family {name!r}; known: {', '.join(sorted(FAMILIES))}") from None
