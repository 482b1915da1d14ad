import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dualquerm.errors import ParameterError
from dualquerm.families import dilate_roles, random_roles
from dualquerm.inequalities import (CHECK_ROLES, CHECKS, EQUALITY, FAIL, PASS, HolderPairInput, Rules,
                                    check_af_hybrid, check_af_intersection, check_af_product, check_bm_corollary,
                                    check_brunn_minkowski, check_dual_af_volumes, check_minkowski_mixed,
                                    check_querm_sum_minkowski, check_strengthened_form, check_two_term_holder,
                                    check_two_term_holder_printed, run_check)
from dualquerm.starbody import UNIT_BALL, Ball, Bump, BumpTerm, Dilate, Ellipsoid

R16 = Rules(3, 16)
E = Ellipsoid((1.0, 1.0, 2.0))
BUMP = Bump(1.0, (BumpTerm(0.3, (0.0, 0.0, 1.0), 2),))


class TestRules:
    def test_inner_defaults_to_outer(self):
        assert Rules(3, 12).inner == 12
        assert Rules(3, 12, 8).halved() == Rules(3, 6, 4)

    @pytest.mark.parametrize("args", [(2, 8), (3, 0), (3, 8, 0), (3.5, 8)])
    def test_rejects(self, args):
        with pytest.raises(ParameterError):
            Rules(*args)


class TestHolder:
    @settings(max_examples=300, deadline=None)
    @given(st.floats(0, 100), st.floats(0, 100), st.floats(1e-3, 100), st.floats(1e-3, 100), st.floats(0.01, 0.99))
    def test_never_fails(self, a, b, c, d, p):
        assert check_two_term_holder(HolderPairInput(a, b, c, d, p)).verdict != FAIL

    @settings(max_examples=200, deadline=None)
    @given(st.floats(0.01, 10), st.floats(0.01, 10), st.floats(0.01, 10), st.floats(0.05, 0.95))
    def test_equality_when_proportional(self, a, c, t, p):
        rep = check_two_term_holder(HolderPairInput(a, t * a, c, t * c, p))
        assert abs(rep.rel_slack) <= 1e-12

    def test_strict_otherwise(self):
        rep = check_two_term_holder(HolderPairInput(1.0, 2.0, 3.0, 1.0, 0.5))
        assert rep.verdict == PASS and rep.rel_slack > 0.05

    def test_printed_variant_is_false(self):
        rep = check_two_term_holder_printed(HolderPairInput(1.0, 1.0, 0.1, 0.1, 0.5))
        assert rep.verdict == FAIL
        assert rep.lhs == pytest.approx(2 * 0.1 ** -0.5)

    @pytest.mark.parametrize("args", [(-1, 1, 1, 1, 0.5), (1, 1, 0, 1, 0.5), (1, 1, 1, 1, 1.0), (1, 1, 1, 1, 0)])
    def test_input_validation(self, args):
        with pytest.raises(ParameterError):
            HolderPairInput(*args)


class TestBallEquality:
    """Balls and dilates are the equality case of every body inequality."""

    @pytest.mark.parametrize("make", [
        lambda: check_dual_af_volumes((Ball(1), Ball(2), Ball(0.5)), 2, R16),
        lambda: check_dual_af_volumes((E, Dilate(2, E), E), 3, R16),
        lambda: check_minkowski_mixed(UNIT_BALL, Ball(3), 0, 1, R16),
        lambda: check_minkowski_mixed(E, Dilate(0.5, E), 1.5, 1, R16),
        lambda: check_querm_sum_minkowski(E, Dilate(2, E), BUMP, 2.0, 0, 1, R16),
        lambda: check_af_intersection((E, Dilate(3, E)), 0, 2, R16),
        lambda: check_af_product((Ball(2), UNIT_BALL), 1, R16),
        lambda: check_af_hybrid(E, Dilate(1.5, E), 0, 0, R16),
        lambda: check_brunn_minkowski(E, Dilate(2, E), 0, 0.3, R16),
        lambda: check_bm_corollary(UNIT_BALL, Ball(2), 2, R16),
        lambda: check_strengthened_form(E, Dilate(2, E), 1, 0.4, R16),
        lambda: check_strengthened_form(E, BUMP, 1, 1.0, R16),
    ])
    def test_equality_confirmed(self, make):
        rep = make()
        assert rep.equality_expected and rep.verdict == EQUALITY, rep

    def test_ball_minkowski_values(self):
        rep = check_minkowski_mixed(UNIT_BALL, Ball(2), 0, 1, Rules(3, 8))
        # W0(I_1(B, 2B)) = V(2 pi B) and W0(I(2B)) = V(4 pi B)
        assert rep.lhs == pytest.approx((4 * np.pi / 3 * (2 * np.pi) ** 3) ** 2, rel=1e-13)


class TestStrictCases:
    @pytest.mark.parametrize("K", [E, BUMP], ids=["ellipsoid", "bump"])
    @pytest.mark.parametrize("check", ["minkowski_mixed", "af_product", "bm_corollary"])
    def test_clear_slack(self, K, check):
        rep = run_check(check, {"K": K, "L": UNIT_BALL}, {}, Rules(3, 24))
        assert not rep.equality_expected
        assert rep.slack > 10 * rep.tol * max(abs(rep.lhs), abs(rep.rhs))

    def test_querm_sum_mismatched_factor_not_equality(self):
        rep = check_querm_sum_minkowski(E, Dilate(2, E), UNIT_BALL, 1.0, 0, 1, R16)
        assert not rep.equality_expected and rep.verdict == PASS
        assert rep.notes and rep.extra["kl_dilates"] == 1.0
        # W~_0(I(cK)) = c^(n(n-1)) W~_0(IK)
        assert rep.extra["holder_ratio"] == pytest.approx(0.5 ** 6, rel=1e-12)


class TestRandomSoundness:
    @pytest.mark.parametrize("seed", range(6))
    @pytest.mark.parametrize("name", sorted(n for n in CHECKS if CHECK_ROLES[n]))
    def test_no_failures(self, name, seed):
        roles = random_roles(np.random.default_rng(seed), 3)
        if name in ("af_intersection", "af_product"):
            roles["bodies"] = roles["bodies"][:2]
        rep = run_check(name, roles, {}, Rules(3, 12))
        assert rep.verdict != FAIL, rep

    @pytest.mark.parametrize("seed", range(3))
    def test_dilate_roles_give_equality(self, seed):
        roles = dilate_roles(np.random.default_rng(seed), 3)
        lam_D = roles.pop("lam_D")
        rep = run_check("querm_sum_minkowski", roles, {"lam_D": lam_D}, Rules(3, 16))
        assert rep.verdict == EQUALITY

    def test_four_dimensional_smoke(self):
        rules = Rules(4, 6)
        K = Ellipsoid((1, 1.5, 1, 2))
        assert check_minkowski_mixed(K, UNIT_BALL, 0, 2, rules).verdict != FAIL
        assert check_af_hybrid(K, Dilate(2, K), 0, 1, rules).verdict == EQUALITY


class TestValidation:
    @pytest.mark.parametrize("make", [
        lambda: check_minkowski_mixed(E, UNIT_BALL, 3, 1, R16),
        lambda: check_minkowski_mixed(E, UNIT_BALL, 0, 2, R16),
        lambda: check_af_hybrid(E, UNIT_BALL, 0, 1, R16),
        lambda: check_brunn_minkowski(E, UNIT_BALL, 0, 1.5, R16),
        lambda: check_dual_af_volumes((E, E), 2, R16),
        lambda: check_af_intersection((E, E), 0, 3, R16),
        lambda: check_minkowski_mixed(Ellipsoid((1, 1, 1, 1)), UNIT_BALL, 0, 1, R16),
        lambda: run_check("nope", {}, {}, R16),
        lambda: run_check("minkowski_mixed", {"L": E}, {}, R16),
        lambda: run_check("two_term_holder", {}, {"a": 1}, R16),
        lambda: check_minkowski_mixed(E, UNIT_BALL, 0, 1, R16, tol=-1.0),
    ])
    def test_rejects(self, make):
        with pytest.raises(ParameterError):
            make()

    def test_fixed_tolerance(self):
        rep = check_bm_corollary(E, UNIT_BALL, 0, R16, tol=0.5)
        assert rep.tol == 0.5

    def test_report_dict(self):
        d = check_af_product((E, UNIT_BALL), 0, R16).as_dict()
        assert d["name"] == "af_product" and d["outer_res"] == 16 and d["r"] == 2


class TestConsistency:
    @pytest.mark.parametrize("seed", range(3))
    def test_af_intersection_r2_is_minkowski_j1(self, seed):
        rng = np.random.default_rng(700 + seed)
        roles = random_roles(rng, 3)
        K, L = roles["K"], roles["L"]
        R = Rules(3, 12)
        a, b = check_af_intersection((K, L), 0.5, 2, R), check_minkowski_mixed(K, L, 0.5, 1, R)
        assert a.lhs == pytest.approx(b.lhs, rel=1e-12) and a.rhs == pytest.approx(b.rhs, rel=1e-12)

    @pytest.mark.parametrize("seed", range(3))
    def test_bm_corollary_is_alpha_one(self, seed):
        rng = np.random.default_rng(800 + seed)
        roles = random_roles(rng, 3)
        a = check_bm_corollary(roles["K"], roles["L"], 0.0, Rules(3, 12))
        b = check_brunn_minkowski(roles["K"], roles["L"], 0.0, 1.0, Rules(3, 12))
        assert (a.lhs, a.rhs, a.rel_slack) == (b.lhs, b.rhs, b.rel_slack)

    @pytest.mark.parametrize("c", [0.5, 0.8, 1.3, 2.0])
    def test_minkowski_scale_covariance(self, c):
        K, L = E, BUMP
        base = check_minkowski_mixed(K, L, 0.5, 1, Rules(3, 12))
        scaled = check_minkowski_mixed(Dilate(c, K), Dilate(c, L), 0.5, 1, Rules(3, 12))
        assert abs(scaled.rel_slack - base.rel_slack) <= 1e-9
