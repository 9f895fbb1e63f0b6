"""SE(2) configuration-space primitives for the Reeds-Shepp vehicle.

Points carry a canonical heading in [-pi, pi).  Every configuration has a
body frame (front, lateral, rotation axes); the reachable set of the
vehicle around a configuration is sandwiched between two anisotropic
"weighted boxes" aligned with that frame.  Box sides scale with
``mu_i * eps**w_i`` where the weights ``(1, 2, 1)`` encode that a small
lateral displacement is quadratically more expensive than a longitudinal
or rotational one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import ClassVar

TWO_PI = 2.0 * math.pi

# Axis order everywhere: (front, lateral, rotation).
RS_WEIGHTS: tuple[int, int, int] = (1, 2, 1)

# Reachable-set box multipliers for the unit-turning-radius vehicle.
OUTER_MULTIPLIERS: tuple[float, float, float] = (1.0, 0.5, 1.0)
INNER_MULTIPLIERS: tuple[float, float, float] = (math.sqrt(1.5) - 1.0, 0.125, 1.0)


def wrap_angle(a: float) -> float:
    """Canonical angle representative in [-pi, pi), congruent mod 2*pi."""
    if not math.isfinite(a):
        raise ValueError(f"angle must be finite, got {a!r}")
    return (a + math.pi) % TWO_PI - math.pi


@dataclass(frozen=True, slots=True)
class SE2Point:
    """A configuration (x1, x2, x3): planar position plus heading.

    The heading is normalized to [-pi, pi) on construction.
    """

    x1: float
    x2: float
    x3: float

    def __post_init__(self):
        object.__setattr__(self, "x3", wrap_angle(self.x3))

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x1, self.x2, self.x3)


@dataclass(frozen=True, slots=True)
class PrivilegedFrame:
    """Body axes at a configuration: front, lateral and rotation.

    The axes are unit vectors in chart coordinates; the lateral axis is
    the one generated by a first-order Lie bracket, hence its weight 2.
    """

    f: tuple[float, float, float]
    l: tuple[float, float, float]
    theta: tuple[float, float, float]

    weights: ClassVar[tuple[int, int, int]] = RS_WEIGHTS

    @property
    def axes(self) -> tuple[tuple[float, float, float], ...]:
        return (self.f, self.l, self.theta)


def frame_at(p: SE2Point) -> PrivilegedFrame:
    """Body frame at ``p``: f = (cos x3, sin x3, 0), l = (-sin x3, cos x3, 0)."""
    c = math.cos(p.x3)
    s = math.sin(p.x3)
    return PrivilegedFrame(f=(c, s, 0.0), l=(-s, c, 0.0), theta=(0.0, 0.0, 1.0))


@dataclass(frozen=True, slots=True)
class BallBoxConstants:
    """Inner/outer box multipliers sandwiching the reachable set."""

    inner: tuple[float, float, float]
    outer: tuple[float, float, float]


RS_BALL_BOX = BallBoxConstants(inner=INNER_MULTIPLIERS, outer=OUTER_MULTIPLIERS)


@dataclass(frozen=True, slots=True)
class WeightedBox:
    """Anisotropic box at ``center`` with extent mu_i * size**w_i per axis.

    A point y is inside iff |<y - center, axis_i>| < extent_i for all
    axes, the rotation component taken wrap-aware.  Extents are
    precomputed since containment sits on the query hot path.
    """

    center: SE2Point
    frame: PrivilegedFrame
    multipliers: tuple[float, float, float]
    size: float
    extents: tuple[float, float, float]


def weighted_box(
    center: SE2Point,
    multipliers: tuple[float, float, float],
    eps: float,
    weights: tuple[int, int, int] = RS_WEIGHTS,
) -> WeightedBox:
    if eps <= 0.0:
        raise ValueError(f"box size must be positive, got {eps}")
    extents = tuple(mu * eps**w for mu, w in zip(multipliers, weights))
    return WeightedBox(
        center=center,
        frame=frame_at(center),
        multipliers=multipliers,
        size=eps,
        extents=extents,
    )


def outer_box(p: SE2Point, eps: float) -> WeightedBox:
    """Outer bounding box of the set reachable from ``p`` within time eps."""
    return weighted_box(p, OUTER_MULTIPLIERS, eps)


def inner_box(p: SE2Point, eps: float) -> WeightedBox:
    """Inner box: every point of it is reachable from ``p`` within eps."""
    return weighted_box(p, INNER_MULTIPLIERS, eps)


def box_corners(b: WeightedBox) -> list[tuple[float, float, float]]:
    """The 8 corners, as chart points center +/- extent_i * axis_i.

    The angular coordinate is deliberately not re-wrapped: corners live in
    the chart and consumers handle the +/-pi seam themselves.
    """
    p = b.center
    ef, el, et = b.extents
    f, l, _ = b.frame.axes
    corners = []
    for sf in (-1.0, 1.0):
        for sl in (-1.0, 1.0):
            x = p.x1 + sf * ef * f[0] + sl * el * l[0]
            y = p.x2 + sf * ef * f[1] + sl * el * l[1]
            for st in (-1.0, 1.0):
                corners.append((x, y, p.x3 + st * et))
    return corners


def box_contains(b: WeightedBox, q: SE2Point) -> bool:
    """Strict per-axis containment test, wrap-aware in the angle."""
    p = b.center
    d1 = q.x1 - p.x1
    d2 = q.x2 - p.x2
    dt = wrap_angle(q.x3 - p.x3)
    f, l, _ = b.frame.axes
    ef, el, et = b.extents
    return (
        abs(d1 * f[0] + d2 * f[1]) < ef
        and abs(d1 * l[0] + d2 * l[1]) < el
        and abs(dt) < et
    )
