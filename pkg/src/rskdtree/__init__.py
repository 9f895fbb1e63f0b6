"""Exact nearest-neighbor search on SE(2) for the Reeds-Shepp vehicle.

k-d trees whose query pruning and splitting normals respect the
anisotropic scaling of the vehicle's reachable sets, plus the oracles
and benchmark harness used to validate exactness and the complexity
law.
"""

from .se2 import (
    SE2Point,
    PrivilegedFrame,
    WeightedBox,
    BallBoxConstants,
    RS_BALL_BOX,
    RS_WEIGHTS,
    wrap_angle,
    frame_at,
    outer_box,
    inner_box,
    box_corners,
    box_contains,
)
from .metrics import (
    Hyperplane,
    EuclideanMetric,
    ReedsSheppMetric,
    make_metric,
    side_of,
    euclidean_distance,
    reeds_shepp_distance,
    ball_hyperplane_eb,
    ball_hyperplane_bb,
)
from .kdtree import (
    KdTree,
    Vertex,
    BoundedPriorityQueue,
    QueryStats,
    classic_split,
    lie_split_rs,
    max_range_axis,
    median_point,
)
from .oracle import (
    linear_scan,
    simulate_reachable,
    rs_distance_upper_bound,
)
from .bench import (
    BenchConfig,
    BenchRecord,
    Region,
    complexity_exponent,
    run_experiment1,
    run_experiment2,
    emit_csv,
    read_csv,
)
from . import reeds_shepp

__version__ = "0.1.0"

__all__ = [
    "SE2Point",
    "PrivilegedFrame",
    "WeightedBox",
    "BallBoxConstants",
    "RS_BALL_BOX",
    "RS_WEIGHTS",
    "wrap_angle",
    "frame_at",
    "outer_box",
    "inner_box",
    "box_corners",
    "box_contains",
    "Hyperplane",
    "EuclideanMetric",
    "ReedsSheppMetric",
    "make_metric",
    "side_of",
    "euclidean_distance",
    "reeds_shepp_distance",
    "ball_hyperplane_eb",
    "ball_hyperplane_bb",
    "KdTree",
    "Vertex",
    "BoundedPriorityQueue",
    "QueryStats",
    "classic_split",
    "lie_split_rs",
    "max_range_axis",
    "median_point",
    "linear_scan",
    "simulate_reachable",
    "rs_distance_upper_bound",
    "BenchConfig",
    "BenchRecord",
    "Region",
    "complexity_exponent",
    "run_experiment1",
    "run_experiment2",
    "emit_csv",
    "read_csv",
    "reeds_shepp",
]
