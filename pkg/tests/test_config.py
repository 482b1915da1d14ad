import json

import pytest

from dualquerm.config import config_from_dict, load_config, parse_body
from dualquerm.errors import ConfigError
from dualquerm.starbody import Ball, Bump, Dilate, Ellipsoid, IntersectionBodyOf, LpBall, RadialCombination
from dualquerm.suites import BUILTIN_SUITES


def _cfg(**extra):
    return {"n": 3, "bodies": {"B": {"ball": {"r": 1}}}, **extra}


class TestBodyGrammar:
    @pytest.mark.parametrize("spec,cls", [
        ({"ball": {"r": 2}}, Ball),
        ({"ellipsoid": {"axes": [1, 1, 2]}}, Ellipsoid),
        ({"lpball": {"p": 3, "s": 1}}, LpBall),
        ({"bump": {"c0": 1, "terms": [{"c": 0.2, "v": [0, 0, 1], "m": 2}]}}, Bump),
        ({"combine": {"lambda": 1, "K": "B", "mu": 2, "L": {"ball": {"r": 3}}}}, RadialCombination),
        ({"dilate": {"lambda": 2, "K": "B"}}, Dilate),
        ({"intersection": {"bodies": ["B", "B"], "inner_res": 8}}, IntersectionBodyOf),
    ])
    def test_kinds(self, spec, cls):
        assert isinstance(parse_body(spec, {"B": Ball(1.0)}), cls)

    def test_intersection_captures_resolution(self):
        body = parse_body({"intersection": {"bodies": ["B", "B"], "inner_res": 8}}, {"B": Ball(1.0)})
        assert body.resolution == 8

    @pytest.mark.parametrize("spec,needle", [
        ({"ball": {"r": -1}}, "body.ball"),
        ({"sphere": {}}, "unknown body kind"),
        ({"ellipsoid": {}}, "missing field"),
        ({"ball": {"radius": 1}}, "unknown field"),
        ({"dilate": {"lambda": 2, "K": "Q"}}, "'Q'"),
        ({"ball": {}, "ellipsoid": {}}, "exactly one"),
    ])
    def test_diagnostics(self, spec, needle):
        with pytest.raises(ConfigError, match=needle):
            parse_body(spec, {})


class TestSuiteConfig:
    def test_defaults(self):
        cfg = config_from_dict(_cfg())
        assert (cfg.outer_res, cfg.inner_res, cfg.tolerance, cfg.out_format) == (24, 24, "auto", "csv")

    def test_inner_defaults_to_outer(self):
        assert config_from_dict(_cfg(resolution={"outer": 12})).inner_res == 12

    def test_out_of_order_definitions(self):
        cfg = config_from_dict({"n": 3, "bodies": {"D": {"dilate": {"lambda": 2, "K": "E"}},
                                                   "E": {"ellipsoid": {"axes": [1, 1, 2]}}}})
        assert cfg.bodies["D"].K == cfg.bodies["E"]

    @pytest.mark.parametrize("raw,field", [
        (_cfg(checks=[{"check": "minkowski_mixed", "K": "B", "L": "Q"}]), "checks[0].L"),
        (_cfg(checks=[{"check": "bogus"}]), "checks[0].check"),
        (_cfg(checks=[{"check": "bm_corollary", "K": "B", "beta": 1}]), "checks[0]"),
        (_cfg(resolution={"outer": 2}), "resolution.outer"),
        (_cfg(tolerance=-1), "tolerance"),
        (_cfg(seed=-1), "seed"),
        (_cfg(random={"mode": "weird"}), "random.mode"),
        (_cfg(output={"format": "xml"}), "output.format"),
        ({"bodies": {}}, "n"),
        ({"n": 3, "extra": 1}, "config"),
        ({"n": 3, "bodies": {"E": {"ellipsoid": {"axes": [1, 1]}}}}, "bodies.E"),
        ({"n": 3, "bodies": {"A": {"dilate": {"lambda": 2, "K": "C"}},
                             "C": {"dilate": {"lambda": 2, "K": "A"}}}}, "bodies."),
    ])
    def test_errors_name_the_field(self, raw, field):
        with pytest.raises(ConfigError) as info:
            config_from_dict(raw)
        assert str(info.value).startswith(field)

    def test_json_line_and_column(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"n": 3,\n  "bodies": [}\n', encoding="utf-8")
        with pytest.raises(ConfigError, match="line 2, column"):
            load_config(path)

    def test_load(self, tmp_path):
        path = tmp_path / "ok.json"
        path.write_text(json.dumps(_cfg(checks=[{"check": "bm_corollary", "K": "B", "L": "B"}])), encoding="utf-8")
        assert load_config(path).checks[0]["check"] == "bm_corollary"

    @pytest.mark.parametrize("name", sorted(BUILTIN_SUITES))
    def test_builtins_validate(self, name):
        config_from_dict(BUILTIN_SUITES[name])
