"""Distance functions on SE(2) and ball-hyperplane intersection guards.

A k-d tree query may discard a subtree only when the ball around the
query point provably misses the splitting hyperplane.  The guard
therefore has one soundness obligation: whenever the true metric ball
intersects the hyperplane it must return True (extra True answers only
cost time, never correctness).

Two guard strategies are provided:

* ``eb`` -- bound the ball by a cylinder (planar radius R, heading
  half-width 2R) and intersect it with the plane analytically.
* ``bb`` -- bound the ball by the outer reachable-set box and test on
  which sides of the plane its 8 corners fall.  For the Euclidean
  metric the box degenerates to the all-weights-one cube of half-side R.

Both guards are wrap-aware: if the bounding set crosses the +/-pi
heading seam, the test is repeated on the shifted chart image.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import reeds_shepp
from .se2 import OUTER_MULTIPLIERS, SE2Point, wrap_angle

TWO_PI = 2.0 * math.pi

PLUS = 1
MINUS = -1

Vec3 = tuple[float, float, float]


@dataclass(frozen=True, slots=True)
class Hyperplane:
    """A splitting plane through ``anchor`` with the given normal."""

    anchor: SE2Point
    normal: Vec3

    def __post_init__(self):
        if self.normal == (0.0, 0.0, 0.0):
            raise ValueError("hyperplane normal must be nonzero")


def side_of(x: SE2Point, p: SE2Point, n: Vec3) -> int:
    """+1 if x lies strictly on the positive side of the plane (p, n).

    The boundary belongs to the negative halfspace.
    """
    if n[0] == 0.0 and n[1] == 0.0 and n[2] == 0.0:
        raise ValueError("zero normal")
    d = n[0] * (x.x1 - p.x1) + n[1] * (x.x2 - p.x2) + n[2] * (x.x3 - p.x3)
    return PLUS if d > 0.0 else MINUS


def euclidean_distance(a: SE2Point, b: SE2Point) -> float:
    dx = b.x1 - a.x1
    dy = b.x2 - a.x2
    dt = wrap_angle(b.x3 - a.x3)
    return math.sqrt(dx * dx + dy * dy + dt * dt)


def reeds_shepp_distance(a: SE2Point, b: SE2Point) -> float:
    return reeds_shepp.distance(a, b)


def _theta_images(theta: float, half_width: float) -> tuple[float, ...]:
    """Chart images of a heading interval [theta-h, theta+h].

    If the interval crosses the +/-pi seam, the wrapped part reappears
    shifted by 2*pi; testing the whole set shifted is a conservative
    superset of the exactly-wrapped piece.
    """
    images = (theta,)
    if theta - half_width < -math.pi:
        images += (theta + TWO_PI,)
    if theta + half_width >= math.pi:
        images += (theta - TWO_PI,)
    return images


def ball_hyperplane_eb(q: SE2Point, radius: float, x: SE2Point, n: Vec3) -> bool:
    """Cylinder bound: planar radius R around q, heading within 2R.

    Exact cylinder/plane intersection per chart image; True also when
    merely touching.  When the heading interval wraps, the chart image
    of the ball is disconnected, so pruning additionally requires every
    image to sit strictly on the same side of the plane.
    """
    if radius < 0.0:
        raise ValueError("radius must be nonnegative")
    if math.isinf(radius):
        return True
    reach = radius * math.hypot(n[0], n[1]) + 2.0 * radius * abs(n[2])
    base = n[0] * (q.x1 - x.x1) + n[1] * (q.x2 - x.x2) - n[2] * x.x3
    positive = negative = False
    for theta in _theta_images(q.x3, 2.0 * radius):
        c = base + n[2] * theta
        if abs(c) <= reach:
            return True
        if c > 0.0:
            positive = True
        else:
            negative = True
    return positive and negative


def _box_corner_guard(q: SE2Point, extents: Vec3, x: SE2Point, n: Vec3) -> bool:
    """Corner side test for a frame-aligned box at q with given extents.

    Pruning (returning False) requires every corner of every chart image
    of the box to lie strictly on the same side of the plane; a corner on
    the plane counts as an intersection.
    """
    ef, el, et = extents
    c = math.cos(q.x3)
    s = math.sin(q.x3)
    # Planar corner offsets: +/- ef * f_planar +/- el * l_planar.
    fx, fy = ef * c, ef * s
    lx, ly = -el * s, el * c
    base = n[0] * (q.x1 - x.x1) + n[1] * (q.x2 - x.x2) - n[2] * x.x3

    positive = negative = False
    for theta_center in _theta_images(q.x3, et):
        for sf in (-1.0, 1.0):
            px = sf * fx
            py = sf * fy
            for sl in (-1.0, 1.0):
                planar = base + n[0] * (px + sl * lx) + n[1] * (py + sl * ly)
                for st in (-1.0, 1.0):
                    o = planar + n[2] * (theta_center + st * et)
                    if o > 0.0:
                        positive = True
                    elif o < 0.0:
                        negative = True
                    else:
                        return True  # corner exactly on the plane
        if positive and negative:
            return True
    return False


def ball_hyperplane_bb(q: SE2Point, radius: float, x: SE2Point, n: Vec3) -> bool:
    """Outer reachable-set box bound for the Reeds-Shepp ball."""
    if radius < 0.0:
        raise ValueError("radius must be nonnegative")
    if math.isinf(radius):
        return True
    if radius == 0.0:
        # Degenerate box: the ball is the point q itself.
        d = n[0] * (q.x1 - x.x1) + n[1] * (q.x2 - x.x2) + n[2] * (q.x3 - x.x3)
        return d == 0.0
    mf, ml, mt = OUTER_MULTIPLIERS
    extents = (mf * radius, ml * radius * radius, mt * radius)
    return _box_corner_guard(q, extents, x, n)


def _ball_hyperplane_cube(q: SE2Point, radius: float, x: SE2Point, n: Vec3) -> bool:
    """All-weights-one box (cube of half-side R): outer bound of the Euclidean ball."""
    if radius < 0.0:
        raise ValueError("radius must be nonnegative")
    if math.isinf(radius):
        return True
    if radius == 0.0:
        d = n[0] * (q.x1 - x.x1) + n[1] * (q.x2 - x.x2) + n[2] * (q.x3 - x.x3)
        return d == 0.0
    return _box_corner_guard(q, (radius, radius, radius), x, n)


class EuclideanMetric:
    """Chart Euclidean distance with wrap-aware heading term."""

    name = "euclidean"

    def __init__(self, intersection: str = "eb"):
        if intersection not in ("eb", "bb"):
            raise ValueError(f"unknown intersection strategy {intersection!r}")
        self.intersection = intersection

    def distance(self, a: SE2Point, b: SE2Point) -> float:
        return euclidean_distance(a, b)

    def distances_to(self, a: SE2Point, pts: np.ndarray) -> np.ndarray:
        dx = pts[:, 0] - a.x1
        dy = pts[:, 1] - a.x2
        dt = (pts[:, 2] - a.x3 + math.pi) % TWO_PI - math.pi
        return np.sqrt(dx * dx + dy * dy + dt * dt)

    def ball_hyperplane(self, q: SE2Point, radius: float, x: SE2Point, n: Vec3) -> bool:
        if self.intersection == "eb":
            return ball_hyperplane_eb(q, radius, x, n)
        return _ball_hyperplane_cube(q, radius, x, n)

    def __repr__(self):
        return f"EuclideanMetric(intersection={self.intersection!r})"


class ReedsSheppMetric:
    """Closed-form Reeds-Shepp path length, turning radius 1."""

    name = "reeds-shepp"

    def __init__(self, intersection: str = "bb"):
        if intersection not in ("eb", "bb"):
            raise ValueError(f"unknown intersection strategy {intersection!r}")
        self.intersection = intersection

    def distance(self, a: SE2Point, b: SE2Point) -> float:
        return reeds_shepp.distance(a, b)

    def distances_to(self, a: SE2Point, pts: np.ndarray) -> np.ndarray:
        return reeds_shepp.distances_to(a, pts)

    def ball_hyperplane(self, q: SE2Point, radius: float, x: SE2Point, n: Vec3) -> bool:
        if self.intersection == "eb":
            return ball_hyperplane_eb(q, radius, x, n)
        return ball_hyperplane_bb(q, radius, x, n)

    def __repr__(self):
        return f"ReedsSheppMetric(intersection={self.intersection!r})"


def make_metric(name: str, intersection: str):
    if name == "euclidean":
        return EuclideanMetric(intersection)
    if name == "reeds-shepp":
        return ReedsSheppMetric(intersection)
    raise ValueError(f"unknown metric {name!r}")
