"""Derivative-free search for near-equality (or violating) inputs.

Nelder-Mead runs in the unit cube that parameterizes a family's box, from
random starting points, minimizing the relative slack of one inequality.
The budget counts inequality evaluations across all restarts.  Any
evaluation with ``rel_slack < -tol`` stops the search with a
:class:`~dualquerm.errors.FalsificationError`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List

import numpy as np
from scipy.optimize import minimize

from .errors import FalsificationError, ParameterError
from .families import ParamFamily
from .inequalities import Rules, run_check

__all__ = ["SearchResult", "search_extremal"]

RESTARTS = 3
STEP_TOL = 1e-4


@dataclass
class SearchResult:
    check: str
    family: str
    seed: int
    best_params: List[float]
    best_rel_slack: float
    best_tol: float
    evaluations: int
    trace: List[dict] = field(default_factory=list)


class _BudgetSpent(Exception):
    pass


def search_extremal(check: str, family: ParamFamily, budget: int, seed: int, rules: Rules,
                    params: dict = None, tol="auto") -> SearchResult:
    """Minimize ``rel_slack`` of ``check`` over ``family``.

    ``params`` holds the check's scalar parameters (``i``, ``j``, ...).
    Returns the best point and the full trace (one row per evaluation with
    the running best).
    """
    if int(budget) != budget or budget < 1:
        raise ParameterError(f"budget must be a positive integer, got {budget!r}")
    params = dict(params or {})
    lo = np.asarray(family.lower, dtype=float)
    width = np.asarray(family.upper, dtype=float) - lo
    rng = np.random.default_rng(seed)
    result = SearchResult(check, family.name, int(seed), [], np.inf, 0.0, 0)

    def objective(x, restart):
        if result.evaluations >= budget:
            raise _BudgetSpent
        point = lo + np.clip(x, 0.0, 1.0) * width
        roles = family(point)
        report = run_check(check, roles, {**params, **roles.pop("params", {})}, rules, tol)
        result.evaluations += 1
        if report.rel_slack < result.best_rel_slack:
            result.best_rel_slack = report.rel_slack
            result.best_params = point.tolist()
            result.best_tol = report.tol
        result.trace.append({
            "eval": result.evaluations,
            "restart": restart,
            "params": point.tolist(),
            "rel_slack": report.rel_slack,
            "tol": report.tol,
            "best": result.best_rel_slack,
        })
        if report.failed:
            raise FalsificationError(
                f"{check} violated on family {family.name} at {point.tolist()}: "
                f"rel_slack {report.rel_slack:.3e} < -tol {report.tol:.3e}",
                metadata={"check": check, "family": family.name, "seed": int(seed), "params": params,
                          "point": point.tolist(), "rules": [rules.n, rules.outer, rules.inner],
                          "report": report.as_dict()},
                result=result,
            )
        return report.rel_slack

    bounds = [(0.0, 1.0)] * family.size
    for restart in range(1 + RESTARTS):
        x0 = rng.uniform(0.0, 1.0, family.size)
        try:
            minimize(objective, x0, args=(restart,), method="Nelder-Mead", bounds=bounds,
                     options={"maxfev": budget - result.evaluations, "xatol": STEP_TOL, "fatol": 1e-15})
        except _BudgetSpent:
            break
        if result.evaluations >= budget:
            break
    return result
