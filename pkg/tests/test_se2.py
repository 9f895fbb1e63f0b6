import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from rskdtree.se2 import (
    INNER_MULTIPLIERS,
    OUTER_MULTIPLIERS,
    RS_BALL_BOX,
    RS_WEIGHTS,
    SE2Point,
    box_contains,
    box_corners,
    frame_at,
    inner_box,
    outer_box,
    wrap_angle,
)

PI = math.pi


class TestWrapAngle:
    def test_identity(self):
        assert wrap_angle(0.0) == 0.0

    def test_pi_maps_to_minus_pi(self):
        assert wrap_angle(PI) == -PI

    def test_three_pi(self):
        assert wrap_angle(3 * PI) == -PI

    def test_rejects_non_finite(self):
        for bad in (math.inf, -math.inf, math.nan):
            with pytest.raises(ValueError):
                wrap_angle(bad)

    @given(st.floats(-1e6, 1e6))
    def test_range_and_congruence(self, a):
        r = wrap_angle(a)
        assert -PI <= r < PI
        # r == a (mod 2*pi); tolerance scales with the size of a
        k = round((a - r) / (2 * PI))
        assert a - r == pytest.approx(2 * PI * k, abs=1e-9 * max(1.0, abs(a)))

    @given(st.floats(-PI, PI, exclude_max=True))
    def test_canonical_fixed_point(self, a):
        assert wrap_angle(a) == pytest.approx(a, abs=1e-12)


class TestSE2Point:
    def test_heading_canonicalized(self):
        p = SE2Point(1.0, 2.0, 3 * PI)
        assert p.x3 == -PI

    def test_as_tuple(self):
        assert SE2Point(1.0, 2.0, 0.5).as_tuple() == (1.0, 2.0, 0.5)


class TestFrame:
    def test_origin(self):
        fr = frame_at(SE2Point(0, 0, 0))
        assert fr.f == (1.0, 0.0, 0.0)
        assert fr.l == (0.0, 1.0, 0.0)
        assert fr.theta == (0.0, 0.0, 1.0)

    def test_quarter_turn(self):
        fr = frame_at(SE2Point(5, -2, PI / 2))
        assert fr.f == pytest.approx((0.0, 1.0, 0.0), abs=1e-15)
        assert fr.l == pytest.approx((-1.0, 0.0, 0.0), abs=1e-15)
        assert fr.theta == (0.0, 0.0, 1.0)

    def test_heading_minus_pi(self):
        fr = frame_at(SE2Point(0, 0, -PI))
        assert fr.f == pytest.approx((-1.0, 0.0, 0.0), abs=1e-12)
        assert fr.l == pytest.approx((0.0, -1.0, 0.0), abs=1e-12)

    def test_weights_fixed(self):
        assert frame_at(SE2Point(0, 0, 1)).weights == (1, 2, 1)
        assert RS_WEIGHTS == (1, 2, 1)

    def test_orthonormality_sampled(self):
        rng = np.random.default_rng(0)
        for _ in range(1000):
            p = SE2Point(*rng.uniform(-10, 10, 2), rng.uniform(-PI, PI))
            m = np.array(frame_at(p).axes).T
            assert np.abs(m.T @ m - np.eye(3)).max() < 1e-12


class TestBallBoxConstants:
    def test_values(self):
        assert OUTER_MULTIPLIERS == (1.0, 0.5, 1.0)
        assert INNER_MULTIPLIERS[0] == pytest.approx(math.sqrt(1.5) - 1.0)
        assert INNER_MULTIPLIERS[1] == 0.125
        assert INNER_MULTIPLIERS[2] == 1.0

    def test_inner_strictly_below_outer(self):
        for c, big in zip(RS_BALL_BOX.inner, RS_BALL_BOX.outer):
            assert 0 < c < big


class TestBoxes:
    def test_outer_extents_at_origin(self):
        b = outer_box(SE2Point(0, 0, 0), 0.1)
        assert b.extents == pytest.approx((0.1, 0.005, 0.1), abs=1e-15)

    def test_inner_extents_at_origin(self):
        b = inner_box(SE2Point(0, 0, 0), 0.1)
        assert b.extents == pytest.approx((0.0224745, 0.00125, 0.1), abs=1e-6)

    def test_extents_independent_of_center(self):
        b0 = outer_box(SE2Point(0, 0, 0), 0.3)
        b1 = outer_box(SE2Point(4.2, -7.7, 2.1), 0.3)
        assert b0.extents == b1.extents

    def test_rejects_nonpositive_size(self):
        with pytest.raises(ValueError):
            outer_box(SE2Point(0, 0, 0), 0.0)
        with pytest.raises(ValueError):
            inner_box(SE2Point(0, 0, 0), -1.0)

    def test_monotone_in_eps(self):
        p = SE2Point(1.0, -2.0, 0.8)
        for e1, e2 in ((0.05, 0.1), (0.1, 0.5), (0.5, 1.0)):
            b1, b2 = outer_box(p, e1), outer_box(p, e2)
            assert all(a < b for a, b in zip(b1.extents, b2.extents))

    def test_inner_box_inside_outer_box(self):
        # Sample boundary points of the inner box; all must satisfy the
        # strict outer containment (inner multipliers < outer multipliers).
        rng = np.random.default_rng(1)
        for _ in range(50):
            p = SE2Point(*rng.uniform(-5, 5, 2), rng.uniform(-PI, PI))
            eps = rng.uniform(0.01, 1.0)
            bi, bo = inner_box(p, eps), outer_box(p, eps)
            f, l, t = frame_at(p).axes
            for _ in range(20):
                u = rng.uniform(-1, 1, 3)
                u[rng.integers(0, 3)] = rng.choice([-1.0, 1.0])  # on a face
                d = [
                    u[0] * bi.extents[0] * f[k]
                    + u[1] * bi.extents[1] * l[k]
                    + u[2] * bi.extents[2] * t[k]
                    for k in range(3)
                ]
                q = SE2Point(p.x1 + d[0], p.x2 + d[1], p.x3 + d[2])
                assert box_contains(bo, q)


class TestBoxCorners:
    def test_unit_box_at_origin(self):
        b = outer_box(SE2Point(0, 0, 0), 1.0)
        object.__setattr__(b, "extents", (1.0, 1.0, 1.0))
        got = sorted(box_corners(b))
        want = sorted(
            (sx, sy, sz) for sx in (-1.0, 1.0) for sy in (-1.0, 1.0) for sz in (-1.0, 1.0)
        )
        assert got == pytest.approx(want)

    def test_outer_box_corners(self):
        b = outer_box(SE2Point(0, 0, 0), 0.1)
        got = sorted(box_corners(b))
        want = sorted(
            (sx * 0.1, sy * 0.005, sz * 0.1)
            for sx in (-1, 1)
            for sy in (-1, 1)
            for sz in (-1, 1)
        )
        assert np.allclose(got, want, atol=1e-15)

    def test_rotated_frame(self):
        b = outer_box(SE2Point(0, 0, PI / 2), 0.1)
        corners = box_corners(b)
        # frame at pi/2: f = (0,1,0), l = (-1,0,0): x offsets come from l only
        xs = sorted({round(c[0], 12) for c in corners})
        ys = sorted({round(c[1], 12) for c in corners})
        assert xs == pytest.approx([-0.005, 0.005])
        assert ys == pytest.approx([-0.1, 0.1])

    def test_corners_not_rewrapped(self):
        b = outer_box(SE2Point(0, 0, 3.1), 0.5)
        thetas = {c[2] for c in box_corners(b)}
        assert max(thetas) > math.pi  # chart coordinates, seam untouched


class TestBoxContains:
    def test_center_inside(self):
        b = outer_box(SE2Point(1, 2, 0.3), 0.2)
        assert box_contains(b, SE2Point(1, 2, 0.3))

    def test_face_point_excluded(self):
        # Strict inequality: offset exactly at the front extent is outside.
        b = outer_box(SE2Point(0, 0, 0), 0.2)
        assert not box_contains(b, SE2Point(0.2, 0.0, 0.0))

    def test_wrapped_angle_inside(self):
        p = SE2Point(0, 0, 3.0)
        b = outer_box(p, 0.5)
        assert b.extents[2] == 0.5
        # wrapped delta-theta of -3.0 vs 3.0 is ~0.28, well inside 0.5
        assert box_contains(b, SE2Point(0, 0, -3.0))

    def test_lateral_tightness(self):
        b = outer_box(SE2Point(0, 0, 0), 0.1)
        assert box_contains(b, SE2Point(0.0, 0.00499, 0.0))
        assert not box_contains(b, SE2Point(0.0, 0.00501, 0.0))
