"""Built-in configurations addressable by name on the command line."""

_ALL_BODY_CHECKS = [
    {"check": "dual_af_volumes", "r": 2},
    {"check": "minkowski_mixed", "i": 0, "j": 1},
    {"check": "querm_sum_minkowski", "i": 1, "j": 1},
    {"check": "af_intersection", "i": 0, "r": 2},
    {"check": "af_product", "i": 1},
    {"check": "af_hybrid", "i": 0, "j": 0},
    {"check": "brunn_minkowski", "i": 0, "alpha": 0.3},
    {"check": "bm_corollary", "i": 1},
    {"check": "strengthened_form", "i": 0, "alpha": 0.3},
]

BUILTIN_SUITES = {
    "paper-smoke": {
        "name": "paper-smoke",
        "description": "balls and dilates in R^3; every row is an equality case",
        "n": 3,
        "bodies": {
            "B": {"ball": {"r": 1.0}},
            "B2": {"ball": {"r": 2.0}},
            "E": {"ellipsoid": {"axes": [1, 1, 2]}},
            "E3": {"dilate": {"lambda": 3, "K": "E"}},
        },
        "checks": [
            {"check": "two_term_holder", "a": 2.0, "b": 3.0, "c": 4.0, "d": 6.0, "p": 0.4},
            {"check": "dual_af_volumes", "bodies": ["B", "B2", "B"], "r": 2},
            {"check": "dual_af_volumes", "bodies": ["E", "E3", "E"], "r": 3},
            {"check": "minkowski_mixed", "K": "B", "L": "B2", "i": 0, "j": 1},
            {"check": "minkowski_mixed", "K": "E", "L": "E3", "i": 1, "j": 1},
            {"check": "querm_sum_minkowski", "K": "B", "L": "B2", "D": "E", "lam_D": 2.0, "i": 0, "j": 1},
            {"check": "af_intersection", "bodies": ["E", "E3"], "i": 0, "r": 2},
            {"check": "af_product", "bodies": ["B2", "B"], "i": 2},
            {"check": "af_hybrid", "K": "E", "L": "E3", "i": 0, "j": 0},
            {"check": "brunn_minkowski", "K": "E", "L": "E3", "i": 0, "alpha": 0.25},
            {"check": "bm_corollary", "K": "B", "L": "B2", "i": 1},
            {"check": "strengthened_form", "K": "E3", "L": "E", "i": 0, "alpha": 0.6},
        ],
        "resolution": {"outer": 16, "inner": 16},
        "tolerance": "auto",
        "seed": 0,
    },
    "paper-random": {
        "name": "paper-random",
        "description": "every body check on seeded random tuples from the test family",
        "n": 3,
        "checks": _ALL_BODY_CHECKS,
        "random": {"tuples": 4, "mode": "random"},
        "resolution": {"outer": 24, "inner": 24},
        "tolerance": "auto",
        "seed": 42,
    },
    "paper-converge": {
        "name": "paper-converge",
        "description": "volume of the intersection body of Ellipsoid(1,1,2) along a resolution ladder",
        "n": 3,
        "bodies": {"E": {"ellipsoid": {"axes": [1, 1, 2]}}},
        "converge": {"bodies": ["E", "E"], "i": 0, "ladder": [8, 16, 32]},
    },
    "paper-search": {
        "name": "paper-search",
        "description": "drive an ellipsoid towards the equality case of the Brunn-Minkowski bound",
        "n": 3,
        "search": {"check": "bm_corollary", "family": "ellipsoid_axes", "budget": 200, "params": {"i": 0}},
        "resolution": {"outer": 16, "inner": 16},
        "seed": 7,
    },
}
