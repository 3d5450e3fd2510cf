"""Robot deployments and their planarized communication graph.

Robots talk over a unit disk graph (UDG) of radius ``r``; routing only
uses the Gabriel subgraph of it, which is planar and still contains the
Euclidean minimum spanning tree.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .energy import DEFAULT_ENERGY, EnergyParams
from .geometry import Point, distance

COINCIDENT_EPS = 1e-9
DEFAULT_MAX_TRIES = 1000


class ConnectivityError(RuntimeError):
    """No connected deployment was found within the retry cap."""


@dataclass(frozen=True)
class Hole:
    """Circular region kept free of robots at deployment time."""
    center: tuple[float, float] = (0.5, 0.5)
    radius: float = 0.25

    def contains(self, p) -> bool:
        return distance(p, self.center) < self.radius


@dataclass
class Robot:
    id: int
    position: Point
    energy: float
    traveled: float = 0.0     # meters
    reactions: int = 0
    messages_sent: int = 0


def squared_distances(points) -> np.ndarray:
    p = np.asarray(points, dtype=float)
    dx = p[:, None, 0] - p[None, :, 0]
    dy = p[:, None, 1] - p[None, :, 1]
    return dx * dx + dy * dy


def udg_adjacency(points, r: float) -> list[list[int]]:
    """Neighbor lists of the unit disk graph with radius ``r``."""
    mask = squared_distances(points) <= r * r
    np.fill_diagonal(mask, False)
    return [np.flatnonzero(row).tolist() for row in mask]


def _witness_free(d2: np.ndarray, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """For each pair, True if no third node is strictly inside its diametral disk.

    |wm| < |uv|/2 for the midpoint m is the same as |uw|^2 + |vw|^2 < |uv|^2,
    which needs only the squared distance matrix.
    """
    inside = d2[u] + d2[v] < d2[u, v][:, None]
    rows = np.arange(len(u))
    inside[rows, u] = False
    inside[rows, v] = False
    return ~inside.any(axis=1)


def gabriel_reduce(points, udg: list[list[int]]) -> list[list[int]]:
    """Keep edge (u, v) unless some other node lies strictly inside the
    disk that has uv as its diameter."""
    n = len(points)
    adjacency: list[list[int]] = [[] for _ in range(n)]
    pairs = [(u, v) for u in range(n) for v in udg[u] if u < v]
    if not pairs:
        return adjacency
    uv = np.array(pairs)
    keep = _witness_free(squared_distances(points), uv[:, 0], uv[:, 1])
    for a, b in uv[keep].tolist():
        adjacency[a].append(b)
        adjacency[b].append(a)
    for nbrs in adjacency:
        nbrs.sort()
    return adjacency


def connected_component(adjacency: list[list[int]], start: int) -> set[int]:
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in adjacency[u]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


class Topology:
    """Robots plus the Gabriel graph over their current positions."""

    def __init__(self, robots: list[Robot], r: float, hole: Hole | None = None):
        if not r > 0:
            raise ValueError(f"communication radius must be positive, got {r}")
        self.robots = robots
        self.r = r
        self.hole = hole
        self.disconnected = False
        self.rebuild()

    @property
    def n(self) -> int:
        return len(self.robots)

    @property
    def points(self) -> list[Point]:
        return self._points

    def rebuild(self) -> None:
        """Recompute positions, distances and the Gabriel graph from scratch."""
        self._points = [rb.position for rb in self.robots]
        self._xy = np.array(self._points, dtype=float)
        self._d2 = squared_distances(self._xy)
        self.adjacency = gabriel_reduce(self._points, udg_adjacency(self._points, self.r))
        self._nbr_sets = [set(nbrs) for nbrs in self.adjacency]

    def neighbors(self, u: int) -> list[int]:
        return self.adjacency[u]

    def edges(self) -> set[tuple[int, int]]:
        return {(u, v) for u, nbrs in enumerate(self.adjacency) for v in nbrs if u < v}

    @property
    def edge_count(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency) // 2

    def is_connected(self) -> bool:
        return len(connected_component(self.adjacency, 0)) == self.n

    def update_after_move(self, mover: int, destination, incremental: bool = True) -> "Topology":
        """Relocate ``mover`` and bring the graph up to date.

        The incremental path rechecks only the pairs the move can affect and
        yields the same edge set as ``rebuild``. Sets ``disconnected`` when
        the graph falls apart; the simulation keeps going inside whatever
        component the collecting robot lands in.
        """
        x, y = float(destination[0]), float(destination[1])
        for rb in self.robots:
            if rb.id != mover and distance(rb.position, (x, y)) < COINCIDENT_EPS:
                x += COINCIDENT_EPS
        self.robots[mover].position = Point(x, y)
        if incremental:
            self._move_incremental(mover, x, y)
        else:
            self.rebuild()
        self.disconnected = not self.is_connected()
        return self

    def _move_incremental(self, m: int, x: float, y: float) -> None:
        xy, d2, sets = self._xy, self._d2, self._nbr_sets
        r2 = self.r * self.r
        old = xy[m].copy()
        xy[m] = (x, y)
        self._points[m] = self.robots[m].position
        dx = xy[:, 0] - x
        dy = xy[:, 1] - y
        row = dx * dx + dy * dy
        d2[m, :] = row
        d2[:, m] = row

        touched = {m} | sets[m]
        for w in sets[m]:
            sets[w].discard(m)
        sets[m] = set()

        # edges whose diametral disk now contains the mover
        edges = np.array([(u, v) for u in range(self.n) for v in sets[u] if u < v], dtype=int)
        if len(edges):
            eu, ev = edges[:, 0], edges[:, 1]
            broken = d2[eu, m] + d2[ev, m] < d2[eu, ev]
            for u, v in edges[broken].tolist():
                sets[u].discard(v)
                sets[v].discard(u)
                touched.update((u, v))

        # pairs the mover used to block, and the mover's own pairs
        ox = xy[:, 0] - old[0]
        oy = xy[:, 1] - old[1]
        d_old = ox * ox + oy * oy
        near = np.flatnonzero(d_old < r2 * (1 + 1e-9))
        near = near[near != m]
        iu, iv = np.triu_indices(len(near), 1)
        pu, pv = near[iu], near[iv]
        duv = d2[pu, pv]
        blocked = (duv <= r2) & (d_old[pu] + d_old[pv] < duv * (1 + 1e-9))
        others = np.flatnonzero(row <= r2)
        others = others[others != m]
        cand_u = np.concatenate([pu[blocked], np.full(len(others), m)])
        cand_v = np.concatenate([pv[blocked], others])
        if len(cand_u):
            keep = _witness_free(d2, cand_u, cand_v)
            for u, v in zip(cand_u[keep].tolist(), cand_v[keep].tolist()):
                sets[u].add(v)
                sets[v].add(u)
                touched.update((u, v))
        for u in touched:
            self.adjacency[u] = sorted(sets[u])

    def snapshot(self) -> tuple[list[tuple], list[tuple[int, int]]]:
        """Node rows ``(id, x, y, energy)`` and sorted edge list."""
        nodes = [(rb.id, rb.position.x, rb.position.y, rb.energy) for rb in self.robots]
        return nodes, sorted(self.edges())


def as_rng(seed_or_rng) -> np.random.Generator:
    if isinstance(seed_or_rng, np.random.Generator):
        return seed_or_rng
    return np.random.Generator(np.random.PCG64(seed_or_rng))


def sample_positions(n: int, rng: np.random.Generator, hole: Hole | None = None) -> list[Point]:
    """``n`` i.i.d. uniform points in the unit square, rejecting the hole."""
    points: list[Point] = []
    while len(points) < n:
        x, y = rng.random(2)
        if hole is not None and hole.contains((x, y)):
            continue
        points.append(Point(float(x), float(y)))
    return points


def generate_topology(n: int, r: float, hole: Hole | None = None, rng_seed=0,
                      energy: EnergyParams = DEFAULT_ENERGY,
                      max_tries: int = DEFAULT_MAX_TRIES) -> Topology:
    """Draw deployments from one RNG stream until the Gabriel graph is connected.

    ``rng_seed`` may be an int or an existing ``numpy.random.Generator``;
    passing a generator lets the caller keep drawing from the same stream.
    """
    if n < 2:
        raise ValueError("need at least two robots")
    rng = as_rng(rng_seed)
    for _ in range(max_tries):
        points = sample_positions(n, rng, hole)
        robots = [Robot(i, p, energy.initial_energy) for i, p in enumerate(points)]
        topo = Topology(robots, r, hole)
        if topo.is_connected():
            return topo
    raise ConnectivityError(
        f"connectivity unreachable: no connected deployment of {n} robots with "
        f"r={r} after {max_tries} tries")
