"""Ground-truth references used to validate the fast implementations.

* :func:`linear_scan` -- exhaustive m-nearest-neighbor, the oracle every
  tree query is compared against.
* :func:`simulate_reachable` -- samples the attainable set by integrating
  random bang-bang controls exactly (arcs and straights in closed form,
  no ODE error).  Endpoints must respect the outer reachable-set box and
  can never be farther than the horizon under the true metric.
* :func:`rs_distance_upper_bound` -- an independent upper bound on the
  Reeds-Shepp distance obtained by scanning arc angles of generic
  arc/straight words on a grid and closing the position gap exactly with
  two straight segments solved linearly.  Every candidate is a feasible
  path by construction, so the bound is always >= the true distance and
  tightens as the grid is refined.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .reeds_shepp import Segment, integrate_word, propagate, word_length
from .se2 import SE2Point, wrap_angle

TWO_PI = 2.0 * math.pi


def linear_scan(points, q: SE2Point, m: int, metric) -> list[tuple[float, int]]:
    """Exact m smallest (distance, index) pairs by exhaustive evaluation.

    Ties are resolved by index (stable).  Uses the metric's bulk
    evaluator when available; it runs the same kernel as the scalar
    distance, point by point.
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    pts = list(points)
    if not pts:
        return []
    if hasattr(metric, "distances_to"):
        coords = np.array([(p.x1, p.x2, p.x3) for p in pts])
        d = metric.distances_to(q, coords)
        order = np.argsort(d, kind="stable")[:m]
        return [(float(d[i]), int(i)) for i in order]
    dists = sorted((metric.distance(q, p), i) for i, p in enumerate(pts))
    return dists[:m]


@dataclass(frozen=True)
class ControlSample:
    """Piecewise-constant bang-bang controls covering a fixed horizon."""

    segments: tuple[tuple[float, float, float], ...]  # (u1, u2, duration)
    horizon: float

    def __post_init__(self):
        total = sum(dur for _, _, dur in self.segments)
        if not math.isclose(total, self.horizon, rel_tol=0.0, abs_tol=1e-9):
            raise ValueError(
                f"segment durations sum to {total}, expected horizon {self.horizon}"
            )


def sample_control(rng: np.random.Generator, horizon: float, max_segments: int = 4) -> ControlSample:
    k = int(rng.integers(1, max_segments + 1))
    cuts = np.sort(rng.uniform(0.0, horizon, k - 1))
    bounds = np.concatenate(([0.0], cuts, [horizon]))
    durations = np.diff(bounds)
    u1 = rng.choice((-1.0, 1.0), k)
    u2 = rng.choice((-1.0, 0.0, 1.0), k)
    segs = tuple(
        (float(u1[i]), float(u2[i]), float(durations[i])) for i in range(k)
    )
    # Guard against float dust in the duration partition.
    drift = horizon - float(durations.sum())
    if drift != 0.0:
        last = segs[-1]
        segs = segs[:-1] + ((last[0], last[1], last[2] + drift),)
    return ControlSample(segments=segs, horizon=horizon)


def apply_control_sample(q: SE2Point, control: ControlSample) -> SE2Point:
    p = q
    for u1, u2, dur in control.segments:
        p = propagate(p, u1, u2, dur)
    return p


def simulate_reachable(
    q: SE2Point, horizon: float, samples: int, seed: int
) -> list[SE2Point]:
    """Endpoints of random bang-bang trajectories of total time ``horizon``.

    Every endpoint is attainable in exactly ``horizon`` time units, so it
    lies in the closed ball of that radius around ``q``.
    """
    if horizon <= 0.0:
        raise ValueError(f"horizon must be positive, got {horizon}")
    if horizon > 1.0:
        raise ValueError("sampler is intended for the small-time regime (horizon <= 1)")
    rng = np.random.default_rng(seed)
    return [
        apply_control_sample(q, sample_control(rng, horizon)) for _ in range(samples)
    ]


# ---------------------------------------------------------------------------
# Scanned-word upper bound for the Reeds-Shepp distance.
#
# Words considered (sigma = steering in {L, R}, psi = signed heading change,
# s = signed straight length):
#
#   C(s1g1, psi1) S(s1) C(sg2, psi2) S(s2) C(sg3, psi3)   psi1, psi2 scanned
#   S(s1) C(sg1, psi1) S(s2) C(sg2, psi2)                 psi1 scanned
#
# The last arc angle is fixed by heading closure; the two straight lengths
# solve the 2x2 linear position closure (solvable unless the two straight
# directions are parallel, which the scan simply skips).


def _arc_local(sigma: float, psi):
    # Displacement of an arc in the frame it starts in.
    return sigma * np.sin(psi), sigma * (1.0 - np.cos(psi))


def _arc_segment(sigma: float, psi: float) -> Segment:
    gear = 1 if psi * sigma >= 0.0 else -1
    return Segment(abs(psi), int(sigma), gear)


def _straight_segment(s: float) -> Segment:
    return Segment(abs(s), 0, 1 if s >= 0.0 else -1)


def _best_cscsc(x: float, y: float, phi: float, resolution: int):
    grid = np.linspace(-math.pi, math.pi, resolution)
    psi1 = grid[:, None]
    psi2 = grid[None, :]
    h1 = psi1
    h2 = psi1 + psi2
    det = np.sin(psi2)
    singular = np.abs(det) < 1e-9
    cos_h1, sin_h1 = np.cos(h1), np.sin(h1)
    cos_h2, sin_h2 = np.cos(h2), np.sin(h2)
    psi3 = np.remainder(phi - h2 + math.pi, TWO_PI) - math.pi

    best = (math.inf, None)
    for sg1 in (1.0, -1.0):
        d1x, d1y = _arc_local(sg1, psi1)
        for sg2 in (1.0, -1.0):
            d2x, d2y = _arc_local(sg2, psi2)
            g2x = cos_h1 * d2x - sin_h1 * d2y
            g2y = sin_h1 * d2x + cos_h1 * d2y
            for sg3 in (1.0, -1.0):
                d3x, d3y = _arc_local(sg3, psi3)
                rx = x - d1x - g2x - (cos_h2 * d3x - sin_h2 * d3y)
                ry = y - d1y - g2y - (sin_h2 * d3x + cos_h2 * d3y)
                s1 = (rx * sin_h2 - ry * cos_h2) / det
                s2 = (ry * cos_h1 - rx * sin_h1) / det
                total = (
                    np.abs(psi1)
                    + np.abs(psi2)
                    + np.abs(psi3)
                    + np.abs(s1)
                    + np.abs(s2)
                )
                total = np.where(singular, math.inf, total)
                k = int(np.argmin(total))
                v = float(total.flat[k])
                if v < best[0]:
                    i, j = divmod(k, resolution)
                    best = (
                        v,
                        (
                            _arc_segment(sg1, float(grid[i])),
                            _straight_segment(float(s1[i, j])),
                            _arc_segment(sg2, float(grid[j])),
                            _straight_segment(float(s2[i, j])),
                            _arc_segment(sg3, float(psi3[i, j])),
                        ),
                    )
    return best


def _best_scsc(x: float, y: float, phi: float, resolution: int):
    psi1 = np.linspace(-math.pi, math.pi, resolution)
    det = np.sin(psi1)
    singular = np.abs(det) < 1e-9
    cos_h1, sin_h1 = np.cos(psi1), np.sin(psi1)
    psi2 = np.remainder(phi - psi1 + math.pi, TWO_PI) - math.pi

    best = (math.inf, None)
    for sg1 in (1.0, -1.0):
        d1x, d1y = _arc_local(sg1, psi1)
        for sg2 in (1.0, -1.0):
            d2x, d2y = _arc_local(sg2, psi2)
            rx = x - d1x - (cos_h1 * d2x - sin_h1 * d2y)
            ry = y - d1y - (sin_h1 * d2x + cos_h1 * d2y)
            s1 = (rx * sin_h1 - ry * cos_h1) / det
            s2 = ry / det
            total = np.abs(psi1) + np.abs(psi2) + np.abs(s1) + np.abs(s2)
            total = np.where(singular, math.inf, total)
            k = int(np.argmin(total))
            v = float(total[k])
            if v < best[0]:
                best = (
                    v,
                    (
                        _straight_segment(float(s1[k])),
                        _arc_segment(sg1, float(psi1[k])),
                        _straight_segment(float(s2[k])),
                        _arc_segment(sg2, float(psi2[k])),
                    ),
                )
    return best


def upper_bound_word(
    a: SE2Point, b: SE2Point, resolution: int = 100
) -> tuple[float, tuple[Segment, ...]]:
    """Best scanned feasible word from a to b and its length."""
    if resolution < 100:
        raise ValueError(f"resolution must be >= 100, got {resolution}")
    dx = b.x1 - a.x1
    dy = b.x2 - a.x2
    c = math.cos(a.x3)
    s = math.sin(a.x3)
    x = dx * c + dy * s
    y = -dx * s + dy * c
    phi = wrap_angle(b.x3 - a.x3)
    if x == 0.0 and y == 0.0 and phi == 0.0:
        return 0.0, ()
    cand1 = _best_cscsc(x, y, phi, resolution)
    cand2 = _best_scsc(x, y, phi, resolution)
    length, word = min(cand1, cand2, key=lambda t: t[0])
    if word is None:
        return math.inf, ()
    word = tuple(seg for seg in word if seg.length > 0.0)
    return length, word


def rs_distance_upper_bound(a: SE2Point, b: SE2Point, resolution: int = 100) -> float:
    """Length of the best scanned feasible word; always >= the true distance."""
    return upper_bound_word(a, b, resolution)[0]
