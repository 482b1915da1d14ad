"""Monte Carlo estimators independent of the product quadrature.

Uniform points on a sphere come from normalized standard Gaussian vectors.
Samples are drawn in fixed-size blocks, block ``b`` from the stream
``SeedSequence(seed, spawn_key=(b,))``; values are concatenated in block
order before any reduction.  An estimate therefore depends only on
``(seed, samples)``, never on how blocks are scheduled.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .dualvol import radial_values
from .errors import EvaluationError, ParameterError
from .quadrature import sphere_area, subsphere_frames
from .starbody import BodyExpr, body_dim

__all__ = [
    "McEstimate",
    "BLOCK",
    "uniform_sphere_points",
    "mc_sphere_integrate",
    "mc_section_volume",
    "mc_section_dual_mixed_volume",
    "mc_dual_mixed_volume",
    "mc_dual_mixed_volume_i",
    "fixture_record",
    "write_fixtures",
    "read_fixtures",
]

BLOCK = 1 << 16


@dataclass(frozen=True)
class McEstimate:
    value: float
    stderr: float
    samples: int
    seed: int

    def within(self, x: float, k: float = 4.0) -> bool:
        """True if ``x`` lies within ``k`` standard errors of the estimate."""
        return abs(x - self.value) <= k * self.stderr


def _check(samples, seed):
    if int(samples) != samples or samples < 2:
        raise ParameterError(f"need at least 2 samples, got {samples!r}")
    if int(seed) != seed or not 0 <= seed < 2 ** 64:
        raise ParameterError(f"seed must be an unsigned 64-bit integer, got {seed!r}")
    return int(samples), int(seed)


def uniform_sphere_points(m: int, samples: int, seed: int) -> np.ndarray:
    """``samples`` uniform points on ``S^m``, shape ``(samples, m + 1)``."""
    samples, seed = _check(samples, seed)
    chunks = []
    for b, start in enumerate(range(0, samples, BLOCK)):
        rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(b,)))
        g = rng.standard_normal((min(BLOCK, samples - start), m + 1))
        chunks.append(g / np.linalg.norm(g, axis=1)[:, None])
    return np.concatenate(chunks)


def _estimate(values, measure, samples, seed, points):
    values = np.asarray(values, dtype=float)
    bad = ~np.isfinite(values)
    if np.any(bad):
        p = int(np.flatnonzero(bad)[0])
        raise EvaluationError(f"integrand is {values[p]} at sample {p}", point=points[p].copy())
    mean = float(np.mean(values))
    # exact zero for constant integrands
    sd = 0.0 if np.all(values == values[0]) else float(np.std(values, ddof=1))
    return McEstimate(measure * mean, measure * sd / math.sqrt(samples), samples, seed)


def mc_sphere_integrate(f: Callable, m: int, samples: int, seed: int) -> McEstimate:
    """Estimate the integral of ``f`` over ``S^m``; ``f`` maps ``(N, m+1)`` to ``(N,)``."""
    pts = uniform_sphere_points(m, samples, seed)
    values = np.broadcast_to(np.asarray(f(pts), dtype=float), (pts.shape[0],))
    return _estimate(values, sphere_area(m), samples, seed, pts)


def _section_points(u, samples, seed):
    u = np.asarray(u, dtype=float).reshape(-1)
    n = u.shape[0]
    if abs(np.linalg.norm(u) - 1.0) > 1e-9:
        raise ParameterError(f"direction must be a unit vector, |u| = {np.linalg.norm(u)!r}")
    basis = subsphere_frames(u[None, :])[0]
    return uniform_sphere_points(n - 2, samples, seed) @ basis


def mc_section_dual_mixed_volume(bodies: Sequence[BodyExpr], u, samples: int, seed: int) -> McEstimate:
    """Estimate ``(1/(n-1)) integral over S^(n-1) ∩ u^⊥ of prod rho(K_k, w)``."""
    bodies = tuple(bodies)
    n = len(bodies) + 1
    if np.asarray(u).reshape(-1).shape[0] != n:
        raise ParameterError(f"{len(bodies)} bodies need a direction in R^{n}")
    W = _section_points(u, samples, seed)
    values = np.ones(W.shape[0])
    for K in bodies:
        values = values * radial_values(K, W)
    return _estimate(values, sphere_area(n - 2) / (n - 1), samples, seed, W)


def mc_section_volume(K: BodyExpr, u, samples: int, seed: int) -> McEstimate:
    """Estimate the ``(n-1)``-volume of ``K ∩ u^⊥``."""
    n = np.asarray(u).reshape(-1).shape[0]
    return mc_section_dual_mixed_volume((K,) * (n - 1), u, samples, seed)


def mc_dual_mixed_volume(bodies: Sequence[BodyExpr], samples: int, seed: int) -> McEstimate:
    """Estimate ``(1/n) integral over S^(n-1) of prod rho(K_k, u)``."""
    bodies = tuple(bodies)
    n = len(bodies)
    d = body_dim(*bodies)
    if d is not None and d != n:
        raise ParameterError(f"{n} bodies given for R^{d}")
    pts = uniform_sphere_points(n - 1, samples, seed)
    values = np.ones(pts.shape[0])
    for K in bodies:
        values = values * radial_values(K, pts)
    return _estimate(values, sphere_area(n - 1) / n, samples, seed, pts)


def mc_dual_mixed_volume_i(K: BodyExpr, L: BodyExpr, i: float, n: int, samples: int, seed: int) -> McEstimate:
    """Estimate ``(1/n) integral rho(K)^(n-i) rho(L)^i`` for real ``i``."""
    pts = uniform_sphere_points(n - 1, samples, seed)
    values = radial_values(K, pts) ** (n - i) * radial_values(L, pts) ** i
    return _estimate(values, sphere_area(n - 1) / n, samples, seed, pts)


def fixture_record(integral_id: str, inputs: dict, est: McEstimate) -> dict:
    """One JSON-ready fixture row ``{integral id, inputs, value, stderr, samples, seed}``."""
    return {"integral": integral_id, "inputs": inputs, **asdict(est)}


def write_fixtures(path, records) -> None:
    Path(path).write_text(json.dumps(list(records), indent=2, sort_keys=True) + "\n", encoding="utf-8")


def read_fixtures(path) -> dict:
    """Fixture records keyed by integral id."""
    return {r["integral"]: r for r in json.loads(Path(path).read_text(encoding="utf-8"))}
