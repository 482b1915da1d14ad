"""Suite configuration: JSON loading, the body grammar, and validation.

Body grammar (one key per body)::

    {"ball": {"r": 1.0}}
    {"ellipsoid": {"axes": [1, 1, 2]}}
    {"lpball": {"p": 3, "s": 1}}
    {"bump": {"c0": 1, "terms": [{"c": 0.2, "v": [0, 0, 1], "m": 2}]}}
    {"combine": {"lambda": 1, "K": "<name>", "mu": 1, "L": "<name>"}}
    {"dilate": {"lambda": 2, "K": "<name>"}}
    {"intersection": {"bodies": ["<name>", ...], "inner_res": 32}}

References may also be inline body objects instead of names.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from .errors import ConfigError, DualQuermError
from .inequalities import CHECKS
from .starbody import Ball, BodyExpr, Bump, BumpTerm, Dilate, Ellipsoid, IntersectionBodyOf, LpBall, RadialCombination

__all__ = ["SuiteConfig", "parse_body", "load_config", "config_from_dict", "CHECK_KEYS"]

CHECK_KEYS = {"check", "K", "L", "D", "bodies", "i", "j", "r", "alpha", "lam_D", "a", "b", "c", "d", "p"}
_TOP_KEYS = {"n", "bodies", "checks", "random", "resolution", "tolerance", "seed", "output", "converge",
             "search", "name", "description"}


def _fields(spec, where, allowed, required=()):
    if not isinstance(spec, dict):
        raise ConfigError(f"expected an object, got {type(spec).__name__}", where)
    unknown = set(spec) - set(allowed)
    if unknown:
        raise ConfigError(f"unknown field(s) {sorted(unknown)}", where)
    missing = [k for k in required if k not in spec]
    if missing:
        raise ConfigError(f"missing field(s) {missing}", where)
    return spec


def _ref(value, named, where, stack):
    if isinstance(value, str):
        if value in named:
            return named[value]
        raise ConfigError(f"undefined body {value!r}", where)
    return parse_body(value, named, where, stack)


def parse_body(spec: Any, named: Dict[str, BodyExpr] = None, where: str = "body", stack=()) -> BodyExpr:
    """Build a :class:`BodyExpr` from one grammar object."""
    named = named if named is not None else {}
    if not isinstance(spec, dict) or len(spec) != 1:
        raise ConfigError("a body is an object with exactly one kind key", where)
    (kind, args), = spec.items()
    here = f"{where}.{kind}"
    try:
        if kind == "ball":
            _fields(args, here, {"r"})
            return Ball(args.get("r", 1.0))
        if kind == "ellipsoid":
            _fields(args, here, {"axes"}, ("axes",))
            return Ellipsoid(tuple(args["axes"]))
        if kind == "lpball":
            _fields(args, here, {"p", "s"}, ("p",))
            return LpBall(args["p"], args.get("s", 1.0))
        if kind == "bump":
            _fields(args, here, {"c0", "terms"}, ("c0",))
            terms = []
            for k, t in enumerate(args.get("terms", [])):
                _fields(t, f"{here}.terms[{k}]", {"c", "v", "m"}, ("c", "v"))
                terms.append(BumpTerm(t["c"], tuple(t["v"]), t.get("m", 1)))
            return Bump(args["c0"], tuple(terms))
        if kind == "combine":
            _fields(args, here, {"lambda", "K", "mu", "L"}, ("K", "L"))
            return RadialCombination(args.get("lambda", 1.0), _ref(args["K"], named, f"{here}.K", stack),
                                     args.get("mu", 1.0), _ref(args["L"], named, f"{here}.L", stack))
        if kind == "dilate":
            _fields(args, here, {"lambda", "K"}, ("lambda", "K"))
            return Dilate(args["lambda"], _ref(args["K"], named, f"{here}.K", stack))
        if kind == "intersection":
            _fields(args, here, {"bodies", "inner_res"}, ("bodies",))
            bodies = tuple(_ref(b, named, f"{here}.bodies[{k}]", stack) for k, b in enumerate(args["bodies"]))
            return IntersectionBodyOf(bodies, args.get("inner_res", 24))
    except ConfigError:
        raise
    except (DualQuermError, TypeError, ValueError) as exc:
        raise ConfigError(str(exc), here) from exc
    raise ConfigError(f"unknown body kind {kind!r}", where)


@dataclass
class SuiteConfig:
    n: int
    bodies: Dict[str, BodyExpr]
    checks: List[dict]
    outer_res: int = 24
    inner_res: int = 24
    tolerance: Union[str, float] = "auto"
    seed: int = 0
    random_tuples: int = 0
    random_mode: str = "random"
    out_dir: str = "."
    out_format: str = "csv"
    name: str = "suite"
    converge: Optional[dict] = None
    search: Optional[dict] = None
    raw: dict = field(default_factory=dict, repr=False)


def _int(v, where, lo=None):
    if isinstance(v, bool) or not isinstance(v, int):
        raise ConfigError(f"expected an integer, got {v!r}", where)
    if lo is not None and v < lo:
        raise ConfigError(f"must be >= {lo}, got {v}", where)
    return v


def _define_bodies(raw_bodies):
    if not isinstance(raw_bodies, dict):
        raise ConfigError("expected an object mapping names to bodies", "bodies")
    named: Dict[str, BodyExpr] = {}
    pending = dict(raw_bodies)
    # definitions may reference each other in any order
    while pending:
        progressed = False
        for name in list(pending):
            try:
                named[name] = parse_body(pending[name], named, f"bodies.{name}")
            except ConfigError as exc:
                if "undefined body" in str(exc) and any(r in pending for r in _names_in(pending[name])):
                    continue
                raise
            del pending[name]
            progressed = True
        if not progressed:
            name = sorted(pending)[0]
            parse_body(pending[name], named, f"bodies.{name}")
    return named


def _names_in(spec):
    if isinstance(spec, str):
        yield spec
    elif isinstance(spec, dict):
        for v in spec.values():
            yield from _names_in(v)
    elif isinstance(spec, list):
        for v in spec:
            yield from _names_in(v)


def config_from_dict(raw: dict) -> SuiteConfig:
    """Validate a decoded JSON config; diagnostics name the offending field."""
    if not isinstance(raw, dict):
        raise ConfigError("top level must be an object", "config")
    unknown = set(raw) - _TOP_KEYS
    if unknown:
        raise ConfigError(f"unknown field(s) {sorted(unknown)}", "config")
    if "n" not in raw:
        raise ConfigError("missing dimension", "n")
    n = _int(raw["n"], "n", 3)
    named = _define_bodies(raw.get("bodies", {}))
    for name, body in named.items():
        if body.dim is not None and body.dim != n:
            raise ConfigError(f"body lives in R^{body.dim}, config has n={n}", f"bodies.{name}")

    res = raw.get("resolution", {})
    _fields(res, "resolution", {"outer", "inner"})
    outer = _int(res.get("outer", 24), "resolution.outer", 4)
    inner = _int(res.get("inner", outer), "resolution.inner", 4)

    tol = raw.get("tolerance", "auto")
    if tol != "auto":
        if isinstance(tol, bool) or not isinstance(tol, (int, float)) or tol < 0:
            raise ConfigError(f"must be \"auto\" or a non-negative number, got {tol!r}", "tolerance")
        tol = float(tol)

    seed = _int(raw.get("seed", 0), "seed", 0)
    if seed >= 2 ** 64:
        raise ConfigError("must fit in 64 bits", "seed")

    rnd = raw.get("random", {})
    _fields(rnd, "random", {"tuples", "mode"})
    tuples = _int(rnd.get("tuples", 0), "random.tuples", 0)
    mode = rnd.get("mode", "random")
    if mode not in ("random", "dilate"):
        raise ConfigError(f"must be \"random\" or \"dilate\", got {mode!r}", "random.mode")

    checks = raw.get("checks", [])
    if not isinstance(checks, list):
        raise ConfigError("expected a list", "checks")
    for k, c in enumerate(checks):
        where = f"checks[{k}]"
        _fields(c, where, CHECK_KEYS, ("check",))
        if c["check"] not in CHECKS:
            raise ConfigError(f"unknown check {c['check']!r}", f"{where}.check")
        for role in ("K", "L", "D"):
            if role in c:
                _ref(c[role], named, f"{where}.{role}", ())
        if "bodies" in c:
            if not isinstance(c["bodies"], list):
                raise ConfigError("expected a list of bodies", f"{where}.bodies")
            for m, b in enumerate(c["bodies"]):
                _ref(b, named, f"{where}.bodies[{m}]", ())

    out = raw.get("output", {})
    _fields(out, "output", {"dir", "format", "name"})
    fmt = out.get("format", "csv")
    if fmt not in ("csv", "json"):
        raise ConfigError(f"must be \"csv\" or \"json\", got {fmt!r}", "output.format")

    conv = raw.get("converge")
    if conv is not None:
        _fields(conv, "converge", {"bodies", "i", "ladder"}, ("bodies", "ladder"))
        for m, b in enumerate(conv["bodies"]):
            _ref(b, named, f"converge.bodies[{m}]", ())
    srch = raw.get("search")
    if srch is not None:
        _fields(srch, "search", {"check", "family", "budget", "params"}, ("check", "family"))
        if srch["check"] not in CHECKS:
            raise ConfigError(f"unknown check {srch['check']!r}", "search.check")

    return SuiteConfig(
        n=n, bodies=named, checks=checks, outer_res=outer, inner_res=inner, tolerance=tol, seed=seed,
        random_tuples=tuples, random_mode=mode, out_dir=out.get("dir", "."), out_format=fmt,
        name=raw.get("name", out.get("name", "suite")), converge=conv, search=srch, raw=raw,
    )


def load_config(path) -> SuiteConfig:
    """Read a UTF-8 JSON config; malformed JSON reports line and column."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}", str(path)) from exc
    return config_from_dict(raw)


def resolve_ref(value, cfg: SuiteConfig, where: str) -> BodyExpr:
    return _ref(value, cfg.bodies, where, ())
