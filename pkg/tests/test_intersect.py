from pathlib import Path

import numpy as np
import pytest

from dualquerm.dualvol import dual_mixed_volume_i, dual_quermassintegral
from dualquerm.errors import ParameterError
from dualquerm.families import random_body
from dualquerm.intersect import (intersection_body, ith_intersection_body, ith_multiset, mixed_intersection_body,
                                 querm_of_intersection_fused, section_context, section_dual_mixed_volume,
                                 section_dual_mixed_volumes, section_radial, section_volume)
from dualquerm.oracle import mc_section_dual_mixed_volume, read_fixtures
from dualquerm.quadrature import build_sphere_rule
from dualquerm.starbody import UNIT_BALL, Ball, Dilate, Ellipsoid, RadialCombination

FIXTURES = read_fixtures(Path(__file__).parent / "fixtures" / "mc_fixtures.json")


def ellipsoid_section_area(axes, u):
    a = np.asarray(axes, dtype=float)
    return np.pi * np.prod(a) / np.linalg.norm(a * np.asarray(u))


class TestSections:
    @pytest.mark.parametrize("u", [(0, 0, 1), (1, 0, 0), (1, 1, 1), (0.3, -0.2, 0.9)])
    def test_ellipsoid_section_closed_form(self, u):
        u = np.asarray(u, dtype=float) / np.linalg.norm(u)
        E = Ellipsoid((1.0, 1.5, 2.0))
        ctx = section_context(u, (E, E), 32)
        assert section_volume(E, ctx) == pytest.approx(ellipsoid_section_area(E.axes, u), rel=1e-12)

    def test_ball_section_4d(self):
        u = np.array([0.5, 0.5, 0.5, 0.5])
        ctx = section_context(u, (Ball(2.0),) * 3, 8)
        assert section_volume(Ball(2.0), ctx) == pytest.approx(4 * np.pi / 3 * 8, rel=1e-13)

    def test_section_radial_requires_orthogonal(self):
        u = np.array([0.0, 0.0, 1.0])
        ctx = section_context(u, (UNIT_BALL, UNIT_BALL), 8)
        assert section_radial(Ellipsoid((2, 3, 4)), ctx, [1.0, 0.0, 0.0]) == pytest.approx(2.0)
        with pytest.raises(ParameterError):
            section_radial(UNIT_BALL, ctx, [0.0, 0.0, 1.0])

    @pytest.mark.parametrize("seed", range(5))
    def test_vectorized_matches_single(self, seed):
        rng = np.random.default_rng(seed)
        K, L = random_body(rng, 3), random_body(rng, 3)
        U = rng.standard_normal((7, 3))
        U /= np.linalg.norm(U, axis=1)[:, None]
        batch = section_dual_mixed_volumes((K, L), U, 12)
        single = [section_dual_mixed_volume(section_context(u, (K, L), 12)) for u in U]
        assert np.allclose(batch, single, rtol=1e-13, atol=0)

    @pytest.mark.parametrize("seed", range(4))
    def test_section_against_monte_carlo(self, seed):
        rng = np.random.default_rng(50 + seed)
        K, L = random_body(rng, 3), random_body(rng, 3)
        u = rng.standard_normal(3)
        u /= np.linalg.norm(u)
        est = mc_section_dual_mixed_volume((K, L), u, 200_000, seed)
        got = section_dual_mixed_volume(section_context(u, (K, L), 32))
        assert est.within(got) or abs(got - est.value) < 1e-12

    def test_ellipsoid_fixture(self):
        rec = FIXTURES["section_volume/ellipsoid_1_1_2/u_111"]
        u = np.array(rec["inputs"]["u"])
        E = Ellipsoid((1.0, 1.0, 2.0))
        got = section_volume(E, section_context(u, (E, E), 32))
        assert abs(got - rec["value"]) <= 4 * rec["stderr"]


class TestIntersectionBodies:
    def test_unit_ball(self):
        IB = intersection_body(UNIT_BALL, n=3, resolution=16)
        U = build_sphere_rule(2, 5).nodes
        assert np.allclose(IB.radial(U), np.pi, rtol=1e-14)

    def test_scaling_of_ball(self):
        # I(2B) = 4 pi B in R^3
        U = build_sphere_rule(2, 4).nodes
        assert np.allclose(intersection_body(Ball(2.0), n=3, resolution=8).radial(U), 4 * np.pi, rtol=1e-14)

    def test_ellipsoid_radial(self):
        E = Ellipsoid((1.0, 1.0, 2.0))
        IE = intersection_body(E, resolution=32)
        U = build_sphere_rule(2, 6).nodes
        want = np.array([ellipsoid_section_area(E.axes, u) for u in U])
        assert np.allclose(IE.radial(U), want, rtol=1e-12)

    def test_ith_multiset(self):
        K, L = Ellipsoid((1, 2, 3)), UNIT_BALL
        assert ith_multiset(K, L, 1, 4) == (K, K, L)
        assert ith_multiset(K, L, 0, 3) == (K, K)
        with pytest.raises(ParameterError):
            ith_multiset(K, L, 4, 4)
        assert ith_intersection_body(K, j=1).bodies == (K, UNIT_BALL)

    def test_dimension_inference(self):
        with pytest.raises(ParameterError):
            intersection_body(UNIT_BALL)
        with pytest.raises(ParameterError):
            intersection_body(Ellipsoid((1, 1, 1)), n=4)

    @pytest.mark.parametrize("seed", range(5))
    def test_linearity_in_one_argument(self, seed):
        # I(K1 +~ K1', K2) has radial function rho I(K1,K2) + rho I(K1',K2)
        rng = np.random.default_rng(300 + seed)
        A, A2, C = (random_body(rng, 3) for _ in range(3))
        lam, mu = rng.uniform(0.2, 2, 2)
        U = build_sphere_rule(2, 4).nodes
        lhs = mixed_intersection_body((RadialCombination(lam, A, mu, A2), C), 12).radial(U)
        rhs = lam * mixed_intersection_body((A, C), 12).radial(U) + mu * mixed_intersection_body((A2, C), 12).radial(U)
        assert np.allclose(lhs, rhs, rtol=1e-12, atol=0)

    @pytest.mark.parametrize("seed", range(5))
    def test_homogeneity(self, seed):
        rng = np.random.default_rng(400 + seed)
        A, C = random_body(rng, 3), random_body(rng, 3)
        lam = rng.uniform(0.3, 3)
        U = build_sphere_rule(2, 4).nodes
        lhs = mixed_intersection_body((Dilate(lam, A), C), 12).radial(U)
        assert np.allclose(lhs, lam * mixed_intersection_body((A, C), 12).radial(U), rtol=1e-13, atol=0)


class TestFused:
    def test_ball_values(self):
        rule = build_sphere_rule(2, 32)
        assert querm_of_intersection_fused((UNIT_BALL, UNIT_BALL), 0, rule, 32) == pytest.approx(
            4 * np.pi ** 4 / 3, rel=1e-13)
        assert querm_of_intersection_fused((UNIT_BALL, UNIT_BALL), 1, rule, 32) == pytest.approx(
            4 * np.pi ** 3 / 3, rel=1e-13)

    @pytest.mark.parametrize("seed", range(4))
    def test_matches_unfused(self, seed):
        rng = np.random.default_rng(500 + seed)
        K, L = random_body(rng, 3), random_body(rng, 3)
        i = float(rng.uniform(0, 2.5))
        rule = build_sphere_rule(2, 16)
        fused = querm_of_intersection_fused((K, L), i, rule, 16)
        unfused = dual_quermassintegral(mixed_intersection_body((K, L), 16), i, rule)
        assert fused == pytest.approx(unfused, rel=1e-12)

    def test_ellipsoid_intersection_volume_fixture(self):
        rec = FIXTURES["querm0/intersection_body/ellipsoid_1_1_2"]
        E = Ellipsoid((1.0, 1.0, 2.0))
        got = querm_of_intersection_fused((E, E), 0, build_sphere_rule(2, 32), 32)
        assert abs(got - rec["value"]) <= 4 * rec["stderr"]

    def test_mixed_i_of_intersection_body(self):
        IB = intersection_body(UNIT_BALL, n=3, resolution=8)
        assert dual_mixed_volume_i(IB, UNIT_BALL, 1, build_sphere_rule(2, 8)) == pytest.approx(
            4 * np.pi ** 3 / 3, rel=1e-13)

    def test_wrong_count(self):
        with pytest.raises(ParameterError):
            querm_of_intersection_fused((UNIT_BALL,), 0, build_sphere_rule(2, 4), 4)


class TestSectionInvariants:
    @pytest.mark.parametrize("seed", range(4))
    def test_centred_on_mirrored_pairs(self, seed):
        rng = np.random.default_rng(500 + seed)
        IK = intersection_body(random_body(rng, 3), n=3, resolution=12)
        U = build_sphere_rule(2, 6).nodes
        assert np.allclose(IK.radial(U), IK.radial(-U), rtol=1e-10, atol=0)

    @pytest.mark.parametrize("seed", range(6))
    def test_pointwise_section_inequality(self, seed):
        # v~_1(K, L)^2 <= v(K) v(L) on every plane section through the origin
        rng = np.random.default_rng(600 + seed)
        K, L = random_body(rng, 3), random_body(rng, 3)
        U = build_sphere_rule(2, 8).nodes
        mixed = section_dual_mixed_volumes((K, L), U, 16)
        vk = section_dual_mixed_volumes((K, K), U, 16)
        vl = section_dual_mixed_volumes((L, L), U, 16)
        assert np.all(mixed ** 2 <= vk * vl * (1 + 1e-12))

    def test_pointwise_equality_for_dilates(self):
        K = Ellipsoid((1.0, 1.5, 2.0))
        U = build_sphere_rule(2, 6).nodes
        mixed = section_dual_mixed_volumes((K, Dilate(1.7, K)), U, 16)
        vk = section_dual_mixed_volumes((K, K), U, 16)
        assert np.allclose(mixed ** 2, vk * 1.7 ** 2 * vk, rtol=1e-12)
