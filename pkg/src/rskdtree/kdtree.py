"""k-d trees on SE(2) with exact m-nearest-neighbor queries.

Each vertex pairs a data point with a splitting-plane normal; left
descendants lie in the closed negative halfspace of the plane, right
descendants in the open positive one.  Trees are built either batch
(median split along the widest cardinal axis, balanced) or
incrementally (normals drawn from a splitting sequence as points
arrive; balance is not guaranteed and descent is iterative so
degenerate insertion orders only cost time).

Queries follow the classic recursive scheme: descend to the side
containing the query, then back out, entering the far side only when
the guard ``metric.ball_hyperplane`` cannot rule out that the current
m-th-best ball crosses the splitting plane.  With a sound guard the
returned distances are exactly those of a linear scan.

Serialization is a line-based text format for debugging and golden
tests (not bit-critical)::

    rskdtree-v1 mode=<batch|incremental> splitting=<classic|lie|-> size=<n>
    <id> <x1> <x2> <x3> <n1> <n2> <n3> <depth> <left-id> <right-id>

One line per vertex in preorder, ``-1`` for a missing child; floats are
written with ``repr`` so parsing reproduces them exactly.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

import numpy as np

from .se2 import SE2Point, frame_at
from .metrics import MINUS, PLUS

Vec3 = tuple[float, float, float]

CARDINAL_AXES: tuple[Vec3, ...] = (
    (1.0, 0.0, 0.0),
    (0.0, 1.0, 0.0),
    (0.0, 0.0, 1.0),
)

SplittingSequence = Callable[[int, SE2Point], Vec3]


def classic_split(depth: int, point: SE2Point) -> Vec3:
    """Cycle through the cardinal axes by depth."""
    return CARDINAL_AXES[depth % 3]


def lie_split_rs(depth: int, point: SE2Point) -> Vec3:
    """Privileged-axis splitting for the Reeds-Shepp vehicle.

    Axes are picked with frequency proportional to their weight, so the
    lateral axis (weight 2) appears twice per period of four depths:
    lateral, lateral, front, rotation.
    """
    frame = frame_at(point)
    r = depth % 4
    if r < 2:
        return frame.l
    if r == 2:
        return frame.f
    return frame.theta


SPLITTING_SEQUENCES: dict[str, SplittingSequence] = {
    "classic": classic_split,
    "lie": lie_split_rs,
}


class Vertex:
    """A data point with its splitting normal and child links."""

    __slots__ = ("point", "normal", "offset", "left", "right", "depth")

    def __init__(self, point: SE2Point, normal: Vec3, depth: int):
        self.point = point
        self.normal = normal
        # <normal, point>, cached: descent and guards compare against it.
        self.offset = normal[0] * point.x1 + normal[1] * point.x2 + normal[2] * point.x3
        self.left: Optional[Vertex] = None
        self.right: Optional[Vertex] = None
        self.depth = depth

    def side_of(self, x: SE2Point) -> int:
        n = self.normal
        d = n[0] * x.x1 + n[1] * x.x2 + n[2] * x.x3
        return PLUS if d > self.offset else MINUS

    def child(self, side: int) -> Optional["Vertex"]:
        return self.right if side == PLUS else self.left


class BoundedPriorityQueue:
    """Size-m buffer of the best (distance, item) pairs seen so far.

    Distances are kept sorted ascending; unfilled slots read as
    (inf, None).  An insertion only happens when it strictly improves
    on the current worst entry.
    """

    __slots__ = ("capacity", "_dists", "_items")

    def __init__(self, capacity: int):
        if capacity < 1:
            raise ValueError(f"queue capacity must be >= 1, got {capacity}")
        self.capacity = capacity
        self._dists: list[float] = []
        self._items: list = []

    def worst(self) -> float:
        if len(self._dists) < self.capacity:
            return math.inf
        return self._dists[-1]

    def insert(self, dist: float, item) -> bool:
        if dist >= self.worst():
            return False
        i = bisect_right(self._dists, dist)
        self._dists.insert(i, dist)
        self._items.insert(i, item)
        if len(self._dists) > self.capacity:
            self._dists.pop()
            self._items.pop()
        return True

    def __len__(self) -> int:
        return len(self._dists)

    @property
    def entries(self) -> list[tuple[float, object]]:
        pad = self.capacity - len(self._dists)
        return list(zip(self._dists, self._items)) + [(math.inf, None)] * pad

    def distances(self) -> list[float]:
        return list(self._dists)

    def items(self) -> list:
        return list(self._items)


@dataclass
class QueryStats:
    """Work counters for one query; distance_evaluations == vertices_visited."""

    vertices_visited: int = 0
    leaves_visited: int = 0
    distance_evaluations: int = 0
    ball_hyperplane_calls: int = 0


def max_range_axis(points: Iterable[SE2Point]) -> int:
    """Cardinal axis with the widest coordinate range; first axis wins ties."""
    coords = _as_coords(points)
    if coords.shape[0] == 0:
        raise ValueError("empty point set")
    ranges = coords.max(axis=0) - coords.min(axis=0)
    return int(np.argmax(ranges))


def median_point(points: Iterable[SE2Point], axis: int) -> SE2Point:
    """Lower-median element along ``axis``.

    Rank floor((n-1)/2) after sorting by (coordinate, x1, x2, x3,
    insertion index), which makes the choice deterministic under ties.
    """
    pts = list(points)
    coords = _as_coords(pts)
    n = coords.shape[0]
    if n == 0:
        raise ValueError("empty point set")
    pos = _median_position(coords, np.arange(n), axis)
    return pts[pos]


def _as_coords(points: Iterable[SE2Point]) -> np.ndarray:
    pts = points if isinstance(points, list) else list(points)
    if not pts:
        return np.empty((0, 3))
    return np.array([(p.x1, p.x2, p.x3) for p in pts])


def _median_position(coords: np.ndarray, order_ids: np.ndarray, axis: int) -> int:
    order = np.lexsort(
        (order_ids, coords[:, 2], coords[:, 1], coords[:, 0], coords[:, axis])
    )
    return int(order[(coords.shape[0] - 1) // 2])


class KdTree:
    """Binary space-partitioning tree over SE(2) configurations."""

    def __init__(self, splitting: str | SplittingSequence = "classic"):
        if callable(splitting):
            self._split_fn = splitting
            self.splitting = getattr(splitting, "__name__", "custom")
        else:
            if splitting not in SPLITTING_SEQUENCES:
                raise ValueError(f"unknown splitting sequence {splitting!r}")
            self._split_fn = SPLITTING_SEQUENCES[splitting]
            self.splitting = splitting
        self.build_mode = "incremental"
        self.root: Optional[Vertex] = None
        self.size = 0

    def __len__(self) -> int:
        return self.size

    # -- construction -------------------------------------------------

    @classmethod
    def batch_build(cls, points: Iterable[SE2Point]) -> "KdTree":
        """Balanced tree: split at the median along the widest axis.

        The median vertex keeps the boundary points (ties) on its left,
        matching the closed negative halfspace convention.
        """
        pts = list(points)
        tree = cls()
        tree.build_mode = "batch"
        tree.splitting = "-"
        tree._split_fn = None
        tree.size = len(pts)
        if pts:
            coords = _as_coords(pts)
            tree.root = _build_subtree(coords, np.arange(len(pts)), pts, 0)
        return tree

    def insert(self, point: SE2Point) -> "KdTree":
        """Attach ``point`` as a new leaf; normal from the splitting sequence."""
        if self.build_mode != "incremental":
            raise ValueError("insert requires an incremental-mode tree")
        if self.root is None:
            self.root = Vertex(point, self._split_fn(0, point), 0)
            self.size = 1
            return self
        v = self.root
        while True:
            side = v.side_of(point)
            nxt = v.child(side)
            if nxt is None:
                new = Vertex(point, self._split_fn(v.depth + 1, point), v.depth + 1)
                if side == PLUS:
                    v.right = new
                else:
                    v.left = new
                self.size += 1
                return self
            v = nxt

    def extend(self, points: Iterable[SE2Point]) -> "KdTree":
        for p in points:
            self.insert(p)
        return self

    # -- queries ------------------------------------------------------

    def query(
        self, q: SE2Point, m: int, metric
    ) -> tuple[BoundedPriorityQueue, QueryStats]:
        """Exact m-nearest-neighbor query under ``metric``.

        Returns the result queue (min(m, size) filled entries) and the
        per-query work counters.  Iterative so degenerate incremental
        trees cannot overflow the interpreter stack.
        """
        if m < 1:
            raise ValueError(f"m must be >= 1, got {m}")
        queue = BoundedPriorityQueue(m)
        stats = QueryStats()
        if self.root is None:
            return queue, stats
        dist = metric.distance
        guard = metric.ball_hyperplane
        stack: list[tuple[Optional[Vertex], int, bool]] = [(self.root, 0, False)]
        while stack:
            v, side, processed = stack.pop()
            if v is None:
                stats.leaves_visited += 1
                continue
            if not processed:
                s = v.side_of(q)
                stack.append((v, s, True))
                stack.append((v.child(s), 0, False))
            else:
                d = dist(q, v.point)
                stats.vertices_visited += 1
                stats.distance_evaluations += 1
                queue.insert(d, v)
                stats.ball_hyperplane_calls += 1
                if guard(q, queue.worst(), v.point, v.normal):
                    stack.append((v.child(-side), 0, False))
        return queue, stats

    # -- inspection / serialization -----------------------------------

    def depth(self) -> int:
        """Maximum vertex depth; -1 for an empty tree."""
        best = -1
        stack = [self.root] if self.root else []
        while stack:
            v = stack.pop()
            best = max(best, v.depth)
            if v.left:
                stack.append(v.left)
            if v.right:
                stack.append(v.right)
        return best

    def vertices(self) -> list[Vertex]:
        """All vertices in preorder."""
        out = []
        stack = [self.root] if self.root else []
        while stack:
            v = stack.pop()
            out.append(v)
            if v.right:
                stack.append(v.right)
            if v.left:
                stack.append(v.left)
        return out

    def to_text(self) -> str:
        verts = self.vertices()
        ids = {id(v): i for i, v in enumerate(verts)}
        lines = [
            f"rskdtree-v1 mode={self.build_mode} splitting={self.splitting} size={self.size}"
        ]
        for i, v in enumerate(verts):
            p, n = v.point, v.normal
            li = ids[id(v.left)] if v.left else -1
            ri = ids[id(v.right)] if v.right else -1
            lines.append(
                f"{i} {p.x1!r} {p.x2!r} {p.x3!r} {n[0]!r} {n[1]!r} {n[2]!r} "
                f"{v.depth} {li} {ri}"
            )
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "KdTree":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        header = lines[0].split()
        if not header or header[0] != "rskdtree-v1":
            raise ValueError("not a rskdtree-v1 serialization")
        fields = dict(part.split("=", 1) for part in header[1:])
        mode = fields["mode"]
        splitting = fields["splitting"]
        size = int(fields["size"])
        tree = cls(splitting if splitting in SPLITTING_SEQUENCES else "classic")
        tree.build_mode = mode
        tree.splitting = splitting
        if splitting == "-":
            tree._split_fn = None
        tree.size = size
        if size == 0:
            return tree
        rows = []
        for ln in lines[1:]:
            tok = ln.split()
            rows.append(
                (
                    SE2Point(float(tok[1]), float(tok[2]), float(tok[3])),
                    (float(tok[4]), float(tok[5]), float(tok[6])),
                    int(tok[7]),
                    int(tok[8]),
                    int(tok[9]),
                )
            )
        verts = [Vertex(p, n, dep) for p, n, dep, _, _ in rows]
        for v, (_, _, _, li, ri) in zip(verts, rows):
            v.left = verts[li] if li >= 0 else None
            v.right = verts[ri] if ri >= 0 else None
        tree.root = verts[0]
        return tree

    def save(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(self.to_text())

    @classmethod
    def load(cls, path) -> "KdTree":
        with open(path) as fh:
            return cls.from_text(fh.read())


def _build_subtree(
    coords: np.ndarray, idxs: np.ndarray, pts: list, depth: int
) -> Optional[Vertex]:
    n = idxs.shape[0]
    if n == 0:
        return None
    sub = coords[idxs]
    ranges = sub.max(axis=0) - sub.min(axis=0)
    axis = int(np.argmax(ranges))
    mpos = _median_position(sub, idxs, axis)
    mval = sub[mpos, axis]
    left_sel = sub[:, axis] <= mval
    left_sel[mpos] = False
    right_sel = ~left_sel
    right_sel[mpos] = False
    v = Vertex(pts[idxs[mpos]], CARDINAL_AXES[axis], depth)
    v.left = _build_subtree(coords, idxs[left_sel], pts, depth + 1)
    v.right = _build_subtree(coords, idxs[right_sel], pts, depth + 1)
    return v
