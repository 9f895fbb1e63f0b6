import math

import numpy as np
import pytest

from rskdtree import reeds_shepp as rs
from rskdtree.kdtree import KdTree
from rskdtree.metrics import EuclideanMetric, ReedsSheppMetric
from rskdtree.oracle import (
    ControlSample,
    apply_control_sample,
    linear_scan,
    rs_distance_upper_bound,
    sample_control,
    simulate_reachable,
    upper_bound_word,
)
from rskdtree.se2 import SE2Point, box_contains, inner_box, outer_box, wrap_angle

PI = math.pi


def rand_point(rng, scale=10.0):
    return SE2Point(
        rng.uniform(-scale, scale), rng.uniform(-scale, scale), rng.uniform(-PI, PI)
    )


class TestLinearScan:
    def test_singleton(self):
        p = SE2Point(1, 2, 0.5)
        got = linear_scan([p], SE2Point(0, 0, 0), 1, EuclideanMetric())
        assert got == [(EuclideanMetric().distance(SE2Point(0, 0, 0), p), 0)]

    def test_collinear_nearest_is_adjacent(self):
        pts = [SE2Point(0, 0, 0), SE2Point(1, 0, 0), SE2Point(2, 0, 0)]
        got = linear_scan(pts, SE2Point(2.1, 0, 0), 1, EuclideanMetric())
        assert got[0][1] == 2

    def test_tie_order_stable_by_index(self):
        p = SE2Point(1, 1, 0)
        pts = [p, SE2Point(5, 5, 0), p, p]
        got = linear_scan(pts, p, 3, EuclideanMetric())
        assert [i for _, i in got] == [0, 2, 3]

    def test_m_zero_rejected(self):
        with pytest.raises(ValueError):
            linear_scan([SE2Point(0, 0, 0)], SE2Point(0, 0, 0), 0, EuclideanMetric())

    def test_empty_points(self):
        assert linear_scan([], SE2Point(0, 0, 0), 3, EuclideanMetric()) == []

    def test_cross_validates_kdtree(self):
        rng = np.random.default_rng(0)
        pts = [rand_point(rng, 5.0) for _ in range(1000)]
        tree = KdTree.batch_build(pts)
        met = ReedsSheppMetric("bb")
        for _ in range(10):
            q = rand_point(rng, 5.0)
            ref = [d for d, _ in linear_scan(pts, q, 6, met)]
            got, _ = tree.query(q, 6, met)
            assert got.distances() == pytest.approx(ref, abs=1e-12)

    def test_fallback_path_matches_bulk(self):
        class NoBulk:
            def __init__(self):
                self._m = EuclideanMetric()

            def distance(self, a, b):
                return self._m.distance(a, b)

        rng = np.random.default_rng(1)
        pts = [rand_point(rng) for _ in range(50)]
        q = rand_point(rng)
        slow = linear_scan(pts, q, 5, NoBulk())
        fast = linear_scan(pts, q, 5, EuclideanMetric())
        assert [i for _, i in slow] == [i for _, i in fast]
        assert [d for d, _ in slow] == pytest.approx([d for d, _ in fast], abs=0)


class TestControlSample:
    def test_duration_invariant_enforced(self):
        with pytest.raises(ValueError):
            ControlSample(segments=((1.0, 0.0, 0.4),), horizon=0.5)

    def test_sampler_produces_valid_samples(self):
        rng = np.random.default_rng(2)
        for _ in range(200):
            cs = sample_control(rng, 0.3)
            assert sum(d for _, _, d in cs.segments) == pytest.approx(0.3, abs=1e-12)
            assert 1 <= len(cs.segments) <= 4
            for u1, u2, dur in cs.segments:
                assert u1 in (-1.0, 1.0)
                assert u2 in (-1.0, 0.0, 1.0)
                assert dur >= 0.0


class TestSimulateReachable:
    def test_straight_control(self):
        q = SE2Point(1.0, 2.0, 0.6)
        h = 0.25
        cs = ControlSample(segments=((1.0, 0.0, h),), horizon=h)
        p = apply_control_sample(q, cs)
        assert p.x1 == pytest.approx(q.x1 + h * math.cos(q.x3))
        assert p.x2 == pytest.approx(q.x2 + h * math.sin(q.x3))
        assert p.x3 == q.x3

    def test_arc_control(self):
        t = 0.4
        cs = ControlSample(segments=((1.0, 1.0, t),), horizon=t)
        p = apply_control_sample(SE2Point(0, 0, 0), cs)
        assert (p.x1, p.x2, p.x3) == pytest.approx(
            (math.sin(t), 1 - math.cos(t), t)
        )

    def test_rejects_bad_horizon(self):
        with pytest.raises(ValueError):
            simulate_reachable(SE2Point(0, 0, 0), 0.0, 10, 0)
        with pytest.raises(ValueError):
            simulate_reachable(SE2Point(0, 0, 0), -0.5, 10, 0)
        with pytest.raises(ValueError):
            simulate_reachable(SE2Point(0, 0, 0), 1.5, 10, 0)

    def test_deterministic_by_seed(self):
        q = SE2Point(0.3, -0.2, 1.9)
        a = simulate_reachable(q, 0.1, 20, seed=42)
        b = simulate_reachable(q, 0.1, 20, seed=42)
        assert a == b

    def test_endpoints_within_metric_ball(self):
        rng = np.random.default_rng(3)
        for horizon in (0.05, 0.3, 1.0):
            q = rand_point(rng, 3.0)
            for p in simulate_reachable(q, horizon, 300, seed=7):
                assert rs.distance(q, p) <= horizon + 1e-9

    def test_endpoints_inside_outer_box(self):
        rng = np.random.default_rng(4)
        for horizon in (0.02, 0.1):
            q = rand_point(rng, 3.0)
            box = outer_box(q, horizon * (1 + 1e-6))
            for p in simulate_reachable(q, horizon, 500, seed=8):
                assert box_contains(box, p)


class TestUpperBoundOracle:
    def test_coincident_zero(self):
        p = SE2Point(2, -1, 0.7)
        assert rs_distance_upper_bound(p, p, 100) == 0.0

    def test_straight_line_value(self):
        d = rs_distance_upper_bound(SE2Point(0, 0, 0), SE2Point(5, 0, 0), 200)
        assert 5.0 <= d <= 5.0 + 2 * PI / 200 * 5

    def test_low_resolution_rejected(self):
        with pytest.raises(ValueError):
            rs_distance_upper_bound(SE2Point(0, 0, 0), SE2Point(1, 0, 0), 50)

    def test_words_are_feasible(self):
        rng = np.random.default_rng(5)
        for _ in range(25):
            a, b = rand_point(rng), rand_point(rng)
            length, word = upper_bound_word(a, b, 100)
            end = rs.integrate_word(a, word)
            assert math.hypot(end.x1 - b.x1, end.x2 - b.x2) < 1e-7
            assert abs(wrap_angle(end.x3 - b.x3)) < 1e-7
            assert length == pytest.approx(rs.word_length(word), abs=1e-9)

    def test_never_below_closed_form(self):
        rng = np.random.default_rng(6)
        for _ in range(40):
            a, b = rand_point(rng), rand_point(rng)
            for res in (100, 200):
                assert rs_distance_upper_bound(a, b, res) >= rs.distance(a, b) - 1e-9

    def test_gap_shrinks_with_resolution(self):
        rng = np.random.default_rng(7)
        pairs = [(rand_point(rng), rand_point(rng)) for _ in range(30)]
        means = {}
        for res in (100, 200, 400):
            gaps = [
                rs_distance_upper_bound(a, b, res) - rs.distance(a, b)
                for a, b in pairs
            ]
            means[res] = sum(gaps) / len(gaps)
            assert min(gaps) > -1e-9
        assert means[400] < means[200] < means[100]
        assert means[100] <= 2 * PI / 100  # observed constant ~0.35 of the step


class TestInnerBoxReachability:
    def test_inner_box_points_reachable_within_eps(self):
        rng = np.random.default_rng(8)
        for eps in (0.02, 0.05, 0.1):
            q = rand_point(rng, 2.0)
            box = inner_box(q, eps)
            f, l, t = box.frame.axes
            for _ in range(200):
                u = rng.uniform(-1, 1, 3)
                d = [
                    u[0] * box.extents[0] * f[k]
                    + u[1] * box.extents[1] * l[k]
                    + u[2] * box.extents[2] * t[k]
                    for k in range(3)
                ]
                p = SE2Point(q.x1 + d[0], q.x2 + d[1], q.x3 + d[2])
                assert rs.distance(q, p) <= eps * (1 + 1e-3)
