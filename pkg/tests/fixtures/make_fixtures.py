"""Regenerate the Monte Carlo fixtures in ``mc_fixtures.json``.

Run from the repository root::

    python3 tests/fixtures/make_fixtures.py

Every record is an independent Monte Carlo estimate (uniform points from
normalized Gaussians); nothing here touches the quadrature code paths.
"""

from pathlib import Path

import numpy as np

from dualquerm.oracle import (fixture_record, mc_dual_mixed_volume, mc_dual_mixed_volume_i, mc_section_volume,
                              mc_sphere_integrate, write_fixtures)
from dualquerm.starbody import UNIT_BALL, Ball, Bump, BumpTerm, Ellipsoid

SAMPLES = 1_000_000
AXES = (1.0, 1.0, 2.0)


def ellipsoid_ib_radial(U, axes=AXES):
    # closed-form section area of an ellipsoid: kappa_{n-1} prod(a) / |diag(a) u|
    a = np.asarray(axes)
    return np.pi * np.prod(a) / np.linalg.norm(U * a, axis=1)


def main():
    E = Ellipsoid(AXES)
    bump = Bump(1.0, (BumpTerm(0.3, (0.0, 0.0, 1.0), 2),))
    u = tuple(np.ones(3) / np.sqrt(3.0))
    records = [
        fixture_record("section_volume/ellipsoid_1_1_2/u_111",
                       {"body": {"ellipsoid": {"axes": list(AXES)}}, "u": list(u)},
                       mc_section_volume(E, u, SAMPLES, 11)),
        fixture_record("volume/ellipsoid_1_1_2", {"body": {"ellipsoid": {"axes": list(AXES)}}},
                       mc_dual_mixed_volume((E, E, E), SAMPLES, 12)),
        fixture_record("dual_mixed_volume/E_E_B", {"bodies": ["E", "E", "B"]},
                       mc_dual_mixed_volume((E, E, UNIT_BALL), SAMPLES, 13)),
        fixture_record("dual_mixed_volume_i/bump_B/i=1.5", {"K": "bump(1; 0.3 e3^2)", "L": "B", "i": 1.5},
                       mc_dual_mixed_volume_i(bump, UNIT_BALL, 1.5, 3, SAMPLES, 14)),
        fixture_record("querm0/intersection_body/ellipsoid_1_1_2",
                       {"body": {"ellipsoid": {"axes": list(AXES)}}, "inner": "closed form"},
                       mc_sphere_integrate(lambda U: ellipsoid_ib_radial(U) ** 3 / 3.0, 2, SAMPLES, 15)),
        fixture_record("volume/ball_2", {"body": {"ball": {"r": 2.0}}},
                       mc_dual_mixed_volume((Ball(2.0),) * 3, SAMPLES, 16)),
    ]
    write_fixtures(Path(__file__).with_name("mc_fixtures.json"), records)


if __name__ == "__main__":
    main()
