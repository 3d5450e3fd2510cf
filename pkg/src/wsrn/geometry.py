"""Planar geometry primitives for unit-square deployments.

Everything here works on plain ``(x, y)`` tuples; :class:`Point` is a
``NamedTuple`` so it can be passed wherever a tuple is expected.
"""

from __future__ import annotations

import math
from typing import NamedTuple, Sequence

ORIENT_EPS = 1e-12
TWO_PI = 2.0 * math.pi


class Point(NamedTuple):
    x: float
    y: float


def distance(a: Sequence[float], b: Sequence[float]) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1])


def in_search_radius(p: Sequence[float], event: Sequence[float], sr: float) -> bool:
    """True if ``p`` lies in the closed disk of radius ``sr`` around ``event``."""
    return distance(p, event) <= sr


def orientation(a: Sequence[float], b: Sequence[float], c: Sequence[float]) -> float:
    """Twice the signed area of triangle abc (positive when counterclockwise)."""
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _sign(v: float) -> int:
    if v > ORIENT_EPS:
        return 1
    if v < -ORIENT_EPS:
        return -1
    return 0


def segments_properly_intersect(a1, a2, b1, b2) -> bool:
    """True if the open segments a1-a2 and b1-b2 cross at a single interior point.

    Touching endpoints and collinear overlaps are not proper intersections.
    """
    o1 = _sign(orientation(a1, a2, b1))
    o2 = _sign(orientation(a1, a2, b2))
    o3 = _sign(orientation(b1, b2, a1))
    o4 = _sign(orientation(b1, b2, a2))
    return o1 * o2 < 0 and o3 * o4 < 0


def intersection_point(a1, a2, b1, b2) -> Point | None:
    """Crossing point of two properly intersecting segments, else None."""
    if not segments_properly_intersect(a1, a2, b1, b2):
        return None
    rx, ry = a2[0] - a1[0], a2[1] - a1[1]
    sx, sy = b2[0] - b1[0], b2[1] - b1[1]
    denom = rx * sy - ry * sx
    t = ((b1[0] - a1[0]) * sy - (b1[1] - a1[1]) * sx) / denom
    return Point(a1[0] + t * rx, a1[1] + t * ry)


def clockwise_angle(current, reference, other) -> float:
    """Clockwise sweep in (0, 2*pi] from ray current->reference to ray current->other.

    A neighbor lying exactly on the reference ray gets 2*pi, so it is
    the last one reached by a full clockwise turn.
    """
    a_ref = math.atan2(reference[1] - current[1], reference[0] - current[0])
    a_oth = math.atan2(other[1] - current[1], other[0] - current[0])
    sweep = (a_ref - a_oth) % TWO_PI
    if sweep <= 0.0:
        sweep = TWO_PI
    return sweep


def clockwise_order(current, reference, neighbors: Sequence, ids: Sequence[int] | None = None) -> list[int]:
    """Indices of ``neighbors`` sorted by clockwise sweep from current->reference.

    Ties are broken by ``ids`` (lower first), defaulting to list position.
    """
    if ids is None:
        ids = range(len(neighbors))
    keyed = [(clockwise_angle(current, reference, p), node_id, i)
             for i, (p, node_id) in enumerate(zip(neighbors, ids))]
    keyed.sort()
    return [i for _, _, i in keyed]


def next_face_neighbor(current, reference, neighbors: Sequence, rule: str = "right",
                       ids: Sequence[int] | None = None):
    """Pick the next neighbor on a face walk.

    ``reference`` is the node the message arrived from (the reverse of the
    arrival direction), or the destination on the first face step. The
    right-hand rule takes the first neighbor clockwise from that ray, the
    left-hand rule the first counterclockwise one, i.e. the last clockwise.
    A neighbor sitting on the reference ray is the last resort either way.
    """
    return neighbors[face_candidates(current, reference, neighbors, rule, ids)[0]]


def face_candidates(current, reference, neighbors: Sequence, rule: str = "right",
                    ids: Sequence[int] | None = None) -> list[int]:
    """Neighbor indices in the order a face walk would try them."""
    if not neighbors:
        raise ValueError("face walk needs at least one neighbor")
    order = clockwise_order(current, reference, neighbors, ids)
    if rule == "right":
        return order
    if rule == "left":
        aligned = [i for i in order
                   if clockwise_angle(current, reference, neighbors[i]) == TWO_PI]
        rest = [i for i in reversed(order) if i not in aligned]
        return rest + aligned
    raise ValueError(f"unknown hand rule {rule!r}")
