"""Command-line entry point.

::

    dualquerm verify   --config <path|builtin> [--out DIR] [--format csv|json] [--seed N]
                       [--outer-res K] [--inner-res K]
    dualquerm converge --config ...
    dualquerm search   --config ...

Exit codes: 0 when every check holds, 1 when some inequality is violated
beyond tolerance (reproduction metadata goes to stderr and to the
``.meta.json`` sidecar), 2 for configuration or usage errors.

Report files are deterministic for a fixed config and seed; wall-clock data
lives only in the sidecar.
"""

from __future__ import annotations

import argparse
import copy
import csv
import io
import json
import platform
import sys
import time
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from .config import SuiteConfig, config_from_dict, load_config, resolve_ref
from .errors import ConfigError, DualQuermError, FalsificationError
from .families import dilate_roles, get_family, random_roles
from .inequalities import CHECK_ROLES, Rules, run_check
from .search import search_extremal
from .suites import BUILTIN_SUITES

__all__ = ["REPORT_COLUMNS", "cmd_verify", "cmd_converge", "cmd_search", "main", "build_parser"]

REPORT_COLUMNS = ("check_name", "paper_ref", "n", "i", "j", "r", "alpha", "lhs", "rhs", "slack", "rel_slack",
                  "tol", "equality_expected", "verdict", "outer_res", "inner_res", "seed")
CONVERGE_COLUMNS = ("outer", "inner", "value", "diff")
TRACE_COLUMNS = ("eval", "restart", "params", "rel_slack", "tol", "best")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Overrides:
    def __init__(self, out=None, fmt=None, seed=None, outer_res=None, inner_res=None):
        self.out, self.fmt, self.seed = out, fmt, seed
        self.outer_res, self.inner_res = outer_res, inner_res


def _load(ref, ov: _Overrides) -> SuiteConfig:
    """Config from a builtin name or a JSON path, with command-line overrides applied."""
    if ref in BUILTIN_SUITES:
        raw = copy.deepcopy(BUILTIN_SUITES[ref])
    else:
        path = Path(ref)
        if not path.is_file():
            raise ConfigError(f"no such file or builtin suite {ref!r}; builtins: {', '.join(BUILTIN_SUITES)}",
                              "--config")
        raw = copy.deepcopy(load_config(path).raw)
    if ov.seed is not None:
        raw["seed"] = ov.seed
    res = dict(raw.get("resolution", {}) or {})
    if ov.outer_res is not None:
        # inner follows outer unless pinned on the command line
        res["outer"] = res["inner"] = ov.outer_res
    if ov.inner_res is not None:
        res["inner"] = ov.inner_res
    raw["resolution"] = res
    out = dict(raw.get("output", {}) or {})
    if ov.out is not None:
        out["dir"] = ov.out
    if ov.fmt is not None:
        out["format"] = ov.fmt
    raw["output"] = out
    return config_from_dict(raw)


def _num(x):
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating,)):
        return float(x)
    return x


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if hasattr(obj, "__dataclass_fields__"):
        return {"type": type(obj).__name__, **{k: _jsonable(getattr(obj, k)) for k in obj.__dataclass_fields__}}
    return _num(obj)


def _dump_json(obj) -> str:
    return json.dumps(_jsonable(obj), indent=2, sort_keys=True, allow_nan=True) + "\n"


def _csv_text(columns, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow(["" if row.get(c) is None else _cell(row.get(c)) for c in columns])
    return buf.getvalue()


def _cell(v):
    v = _num(v)
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, (list, tuple)):
        return json.dumps(_jsonable(v))
    return v


def _write_outputs(cfg: SuiteConfig, stem: str, columns, rows, body: dict, meta: dict) -> Path:
    out_dir = Path(cfg.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    if cfg.out_format == "csv":
        path = out_dir / f"{stem}.csv"
        path.write_text(_csv_text(columns, rows), encoding="utf-8")
    else:
        path = out_dir / f"{stem}.json"
        path.write_text(_dump_json({**body, "rows": rows}), encoding="utf-8")
    (out_dir / f"{stem}.meta.json").write_text(_dump_json(meta), encoding="utf-8")
    return path


def _meta(command, cfg: SuiteConfig, started: float, **extra) -> dict:
    return {
        "command": command,
        "suite": cfg.name,
        "seed": cfg.seed,
        "config": cfg.raw,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "elapsed_s": round(time.perf_counter() - started, 3),
        "python": platform.python_version(),
        "numpy": np.__version__,
        **extra,
    }


# ---------------------------------------------------------------- verify

def _explicit_roles(check: dict, cfg: SuiteConfig, where: str) -> dict:
    roles = {}
    for role in ("K", "L", "D"):
        if role in check:
            roles[role] = resolve_ref(check[role], cfg, f"{where}.{role}")
    if "bodies" in check:
        roles["bodies"] = tuple(resolve_ref(b, cfg, f"{where}.bodies[{m}]") for m, b in enumerate(check["bodies"]))
    return roles


def _tuple_roles(name: str, cfg: SuiteConfig, t: int) -> dict:
    rng = np.random.default_rng(np.random.SeedSequence(cfg.seed, spawn_key=(t,)))
    roles = (dilate_roles if cfg.random_mode == "dilate" else random_roles)(rng, cfg.n)
    if name in ("af_intersection", "af_product"):
        roles["bodies"] = roles["bodies"][: cfg.n - 1]
    return roles


def _plan(cfg: SuiteConfig):
    """``(where, check name, roles, params, tuple index)`` in report order."""
    for k, check in enumerate(cfg.checks):
        where = f"checks[{k}]"
        name = check["check"]
        params = {key: v for key, v in check.items() if key not in ("check", "K", "L", "D", "bodies")}
        explicit = _explicit_roles(check, cfg, where)
        needs_bodies = bool(CHECK_ROLES.get(name))
        if cfg.random_tuples and needs_bodies and not explicit:
            for t in range(cfg.random_tuples):
                roles = _tuple_roles(name, cfg, t)
                p = dict(params)
                if "lam_D" in roles and "lam_D" not in check:
                    p["lam_D"] = roles.pop("lam_D")
                roles.pop("lam_D", None)
                yield where, name, roles, p, t
        else:
            if needs_bodies and not explicit:
                raise ConfigError("check needs bodies (K/L/D or bodies) or a random section", where)
            yield where, name, explicit, params, None


def run_suite(cfg: SuiteConfig):
    """Evaluate every planned check; returns ``(rows, failures)``."""
    rules = Rules(cfg.n, cfg.outer_res, cfg.inner_res)
    rows, failures = [], []
    for where, name, roles, params, t in _plan(cfg):
        try:
            report = run_check(name, roles, params, rules, cfg.tolerance)
        except DualQuermError as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(str(exc), where) from exc
        row = {
            "check_name": report.name,
            "paper_ref": report.label,
            "n": report.n if report.n is not None else cfg.n,
            "i": report.i, "j": report.j, "r": report.r, "alpha": report.alpha,
            "lhs": report.lhs, "rhs": report.rhs, "slack": report.slack, "rel_slack": report.rel_slack,
            "tol": report.tol, "equality_expected": report.equality_expected, "verdict": report.verdict,
            "outer_res": report.outer_res, "inner_res": report.inner_res, "seed": cfg.seed,
        }
        rows.append({c: _num(row[c]) for c in REPORT_COLUMNS})
        if report.failed:
            failures.append({"row": len(rows) - 1, "where": where, "tuple": t, "params": params,
                             "roles": _jsonable(roles), "report": _jsonable(report.as_dict()),
                             "rules": [rules.n, rules.outer, rules.inner], "seed": cfg.seed})
    return rows, failures


def cmd_verify(config, out=None, fmt=None, seed=None, outer_res=None, inner_res=None, stdout=None,
               stderr=None) -> int:
    """Run a verification suite and write its report; returns the exit code."""
    stdout, stderr = stdout or sys.stdout, stderr or sys.stderr
    started = time.perf_counter()
    try:
        cfg = _load(config, _Overrides(out, fmt, seed, outer_res, inner_res))
        if not cfg.checks:
            raise ConfigError("no checks configured", "checks")
        rows, failures = run_suite(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=stderr)
        return EXIT_USAGE
    body = {"suite": cfg.name, "n": cfg.n, "seed": cfg.seed, "columns": list(REPORT_COLUMNS)}
    path = _write_outputs(cfg, cfg.name, REPORT_COLUMNS, rows, body,
                          _meta("verify", cfg, started, rows=len(rows), failures=failures))
    counts = {}
    for row in rows:
        counts[row["verdict"]] = counts.get(row["verdict"], 0) + 1
    summary = ", ".join(f"{v} {k}" for k, v in sorted(counts.items()))
    print(f"{cfg.name}: {len(rows)} rows ({summary}) -> {path}", file=stdout)
    if failures:
        for f in failures:
            print("VIOLATION " + json.dumps(_jsonable(f), sort_keys=True), file=stderr)
        return EXIT_FAIL
    return EXIT_OK


# ---------------------------------------------------------------- converge

def convergence_table(cfg: SuiteConfig, fixed_inner=None):
    """Rows ``{outer, inner, value, diff}`` along the configured ladder."""
    conv = cfg.converge
    ladder = conv["ladder"]
    if not isinstance(ladder, list) or len(ladder) < 2:
        raise ConfigError("ladder needs at least two resolutions", "converge.ladder")
    for m, r in enumerate(ladder):
        if isinstance(r, bool) or not isinstance(r, int) or r < 4:
            raise ConfigError(f"resolutions must be integers >= 4, got {r!r}", f"converge.ladder[{m}]")
    bodies = [resolve_ref(b, cfg, f"converge.bodies[{m}]") for m, b in enumerate(conv["bodies"])]
    if len(bodies) == 1:
        bodies = bodies * (cfg.n - 1)
    if len(bodies) != cfg.n - 1:
        raise ConfigError(f"expected {cfg.n - 1} bodies (or one), got {len(bodies)}", "converge.bodies")
    i = conv.get("i", 0)
    rows, prev = [], None
    for r in ladder:
        rules = Rules(cfg.n, r, fixed_inner if fixed_inner is not None else r)
        try:
            value = float(rules.querm(bodies, i))
        except DualQuermError as exc:
            raise ConfigError(str(exc), "converge") from exc
        rows.append({"outer": rules.outer, "inner": rules.inner, "value": value,
                     "diff": None if prev is None else abs(value - prev)})
        prev = value
    return rows


def cmd_converge(config, out=None, fmt=None, seed=None, outer_res=None, inner_res=None, stdout=None,
                 stderr=None) -> int:
    """Tabulate ``W~_i`` of a mixed intersection body along a resolution ladder.

    ``--inner-res`` pins the inner resolution so only the outer one varies;
    ``--outer-res`` is ignored here because the ladder sets it.
    """
    stdout, stderr = stdout or sys.stdout, stderr or sys.stderr
    started = time.perf_counter()
    try:
        cfg = _load(config, _Overrides(out, fmt, seed, None, None))
        if cfg.converge is None:
            raise ConfigError("missing section", "converge")
        if inner_res is not None and (int(inner_res) != inner_res or inner_res < 4):
            raise ConfigError(f"must be an integer >= 4, got {inner_res!r}", "--inner-res")
        rows = convergence_table(cfg, inner_res)
    except ConfigError as exc:
        print(f"config error: {exc}", file=stderr)
        return EXIT_USAGE
    body = {"suite": cfg.name, "n": cfg.n, "i": cfg.converge.get("i", 0), "columns": list(CONVERGE_COLUMNS)}
    path = _write_outputs(cfg, f"{cfg.name}.converge", CONVERGE_COLUMNS, rows, body, _meta("converge", cfg, started))
    print(f"{'outer':>6} {'inner':>6} {'value':>22} {'diff':>12}", file=stdout)
    for row in rows:
        diff = "" if row["diff"] is None else f"{row['diff']:.3e}"
        print(f"{row['outer']:>6} {row['inner']:>6} {row['value']:>22.15g} {diff:>12}", file=stdout)
    print(f"-> {path}", file=stdout)
    return EXIT_OK


# ---------------------------------------------------------------- search

def cmd_search(config, out=None, fmt=None, seed=None, outer_res=None, inner_res=None, stdout=None,
               stderr=None) -> int:
    """Run the extremal search configured under ``search`` and write its trace."""
    stdout, stderr = stdout or sys.stdout, stderr or sys.stderr
    started = time.perf_counter()
    try:
        cfg = _load(config, _Overrides(out, fmt, seed, outer_res, inner_res))
        srch = cfg.search
        if srch is None:
            raise ConfigError("missing section", "search")
        budget = srch.get("budget", 200)
        if isinstance(budget, bool) or not isinstance(budget, int) or budget < 1:
            raise ConfigError(f"must be a positive integer, got {budget!r}", "search.budget")
        try:
            family = get_family(srch["family"], cfg.n)
        except DualQuermError as exc:
            raise ConfigError(str(exc), "search.family") from exc
        params = srch.get("params", {})
        if not isinstance(params, dict):
            raise ConfigError("expected an object", "search.params")
        rules = Rules(cfg.n, cfg.outer_res, cfg.inner_res)
    except ConfigError as exc:
        print(f"config error: {exc}", file=stderr)
        return EXIT_USAGE

    stem = f"{cfg.name}.search"
    falsified = None
    try:
        result = search_extremal(srch["check"], family, budget, cfg.seed, rules, params, cfg.tolerance)
    except FalsificationError as exc:
        falsified, result = exc, exc.result
    except DualQuermError as exc:
        print(f"config error: search: {exc}", file=stderr)
        return EXIT_USAGE

    summary = {"check": result.check, "family": result.family, "seed": result.seed, "budget": budget,
               "evaluations": result.evaluations, "best_params": result.best_params,
               "best_rel_slack": result.best_rel_slack, "best_tol": result.best_tol,
               "falsified": falsified is not None}
    extra = {"summary": summary}
    if falsified is not None:
        extra["falsification"] = falsified.metadata
    path = _write_outputs(cfg, stem, TRACE_COLUMNS, result.trace, {"suite": cfg.name, "summary": summary},
                          _meta("search", cfg, started, **extra))
    print(f"{result.check} over {result.family}: {result.evaluations} evaluations, "
          f"best rel_slack {result.best_rel_slack:.3e} (tol {result.best_tol:.1e}) -> {path}", file=stdout)
    if falsified is not None:
        print(f"VIOLATION {falsified}", file=stderr)
        print("VIOLATION " + json.dumps(_jsonable(falsified.metadata), sort_keys=True), file=stderr)
        return EXIT_FAIL
    return EXIT_OK


# ---------------------------------------------------------------- argv

COMMANDS = {"verify": cmd_verify, "converge": cmd_converge, "search": cmd_search}


def _u64(text):
    v = int(text)
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError(f"seed must be in [0, 2^64), got {text}")
    return v


def _res(text):
    v = int(text)
    if v < 4:
        raise argparse.ArgumentTypeError(f"resolution must be >= 4, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dualquerm", description="Dual quermassintegral inequality verifier.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn in COMMANDS.items():
        p = sub.add_parser(name, help=fn.__doc__.splitlines()[0])
        p.add_argument("--config", required=True, help="JSON config path or builtin suite name")
        p.add_argument("--out", help="output directory (default: config output.dir or .)")
        p.add_argument("--format", choices=("csv", "json"), dest="fmt")
        p.add_argument("--seed", type=_u64)
        p.add_argument("--outer-res", type=_res)
        p.add_argument("--inner-res", type=_res)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    fn = COMMANDS[args.command]
    return fn(args.config, out=args.out, fmt=args.fmt, seed=args.seed, outer_res=args.outer_res,
              inner_res=args.inner_res)


if __name__ == "__main__":
    sys.exit(main())
