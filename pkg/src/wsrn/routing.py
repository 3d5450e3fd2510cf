"""Greedy-face-greedy routing toward an event location with a search radius.

The event is a location, not a node, so plain GFG would never deliver.
Routing instead stops at the first robot found inside the search radius,
or when the face walk is about to reuse a directed edge, in which case
the robot currently holding the message becomes the auctioneer.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .geometry import distance, face_candidates, in_search_radius, intersection_point

GREEDY = "greedy"
FACE = "face"
INSIDE_SR = "inside_sr"
LOOP_DETECTED = "loop_detected"

# where the search radius is tested: at every robot the message visits, or
# only once greedy forwarding has stalled (local minimum and face mode)
SR_EVERY_NODE = "every_node"
SR_AFTER_GREEDY = "after_greedy"


@dataclass
class RoutingMessage:
    event: tuple[float, float]
    sr: float
    current: int
    mode: str = GREEDY
    previous: int | None = None
    face_entry_point: tuple[float, float] | None = None
    face_entry_distance: float | None = None
    # best crossing of the entry->event segment so far; faces only change
    # on crossings strictly closer to the event than this one
    crossing_point: tuple[float, float] | None = None
    visited_directed_edges: set[tuple[int, int]] = field(default_factory=set)
    hop_trace: list[int] = field(default_factory=list)
    mode_trace: list[str] = field(default_factory=list)
    face_changes: int = 0

    def __post_init__(self):
        if not self.hop_trace:
            self.hop_trace.append(self.current)
            self.mode_trace.append(self.mode)

    @property
    def steps(self) -> int:
        return len(self.hop_trace) - 1

    def forward(self, nxt: int) -> None:
        self.previous = self.current
        self.current = nxt
        self.hop_trace.append(nxt)
        self.mode_trace.append(self.mode)


@dataclass
class RoutingOutcome:
    auctioneer: int
    stop_reason: str
    steps: int
    messages: int
    hop_trace: list[int]
    mode_trace: list[str]

    def senders(self) -> list[int]:
        """Robot that sent each routing message, in order."""
        return self.hop_trace[:-1]


def greedy_next(current: int, event, topo) -> int | None:
    """Neighbor strictly closer to ``event`` than ``current`` that is closest
    to it, or None at a local minimum. Lower id wins ties."""
    pts = topo.points
    best, best_d = None, distance(pts[current], event)
    for w in topo.adjacency[current]:       # sorted ids, so strict < keeps the lowest
        d = distance(pts[w], event)
        if d < best_d:
            best, best_d = w, d
    return best


def face_next(msg: RoutingMessage, topo, rule: str = "right") -> int:
    """Next hop of the face walk from ``msg.current``.

    Candidates are tried in hand-rule order. An edge that properly crosses
    the segment from the face entry point to the event, closer to the event
    than any earlier crossing, switches the walk to the face on the far side
    of that edge: the crossing is recorded and rotation continues past it.
    """
    pts = topo.points
    cur = msg.current
    nbrs = topo.adjacency[cur]
    ref = pts[msg.previous] if msg.previous is not None else msg.event
    order = face_candidates(pts[cur], ref, [pts[w] for w in nbrs], rule, nbrs)
    best_left = distance(msg.crossing_point, msg.event)
    for idx in order:
        cand = nbrs[idx]
        ip = intersection_point(pts[cur], pts[cand], msg.face_entry_point, msg.event)
        if ip is not None:
            d = distance(ip, msg.event)
            if d < best_left:
                msg.crossing_point = ip
                best_left = d
                msg.face_changes += 1
                continue
        return cand
    return nbrs[order[-1]]


def gfgf2_route(source: int, event, sr: float, topo, rule: str = "right",
                sr_check: str = SR_EVERY_NODE) -> RoutingOutcome:
    if sr <= 0:
        raise ValueError("search radius must be positive")
    pts = topo.points
    msg = RoutingMessage(event=tuple(event), sr=sr, current=source)

    def done(reason: str) -> RoutingOutcome:
        return RoutingOutcome(msg.current, reason, msg.steps, msg.steps,
                              msg.hop_trace, msg.mode_trace)

    while True:
        cur = msg.current
        here = distance(pts[cur], msg.event)
        if (sr_check == SR_EVERY_NODE or msg.mode == FACE) and in_search_radius(pts[cur], msg.event, sr):
            return done(INSIDE_SR)
        if not topo.adjacency[cur]:
            return done(INSIDE_SR if in_search_radius(pts[cur], msg.event, sr) else LOOP_DETECTED)
        if msg.mode == FACE and here < msg.face_entry_distance:
            msg.mode = GREEDY
            msg.mode_trace[-1] = GREEDY
        if msg.mode == GREEDY:
            nxt = greedy_next(cur, msg.event, topo)
            if nxt is not None:
                msg.forward(nxt)
                continue
            if in_search_radius(pts[cur], msg.event, sr):
                return done(INSIDE_SR)
            msg.mode = FACE
            msg.previous = None
            msg.face_entry_point = pts[cur]
            msg.face_entry_distance = here
            msg.crossing_point = pts[cur]
            msg.mode_trace[-1] = FACE
        nxt = face_next(msg, topo, rule)
        edge = (cur, nxt)
        if edge in msg.visited_directed_edges:
            return done(LOOP_DETECTED)
        msg.visited_directed_edges.add(edge)
        msg.forward(nxt)
