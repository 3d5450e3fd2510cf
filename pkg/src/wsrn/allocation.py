"""Auction phase and task assignment.

Message model: every transmission is a unicast and counts as one message,
so a call "to all neighbors" costs one message per neighbor. The auctioneer
checks its own energy locally, without a message. Each result carries a
per-robot tally of who sent what so the simulator can keep per-robot
message statistics.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field

from .energy import DEFAULT_ENERGY, EnergyParams, remaining_after
from .geometry import distance
from .routing import SR_EVERY_NODE, RoutingOutcome, gfgf2_route


@dataclass(frozen=True)
class Bid:
    bidder: int
    value: float                 # J left after the task, or distance for RFTA1
    hops_to_auctioneer: int = 1


@dataclass
class AllocationResult:
    winner: int | None           # None means the network is dead
    auctioneer: int
    routing_messages: int = 0
    auction_messages: int = 0
    routing_steps: int = 0
    stop_reason: str | None = None
    bids: int = 0
    senders: Counter = field(default_factory=Counter)
    route: RoutingOutcome | None = None

    @property
    def network_dead(self) -> bool:
        return self.winner is None

    @property
    def total_messages(self) -> int:
        return self.routing_messages + self.auction_messages


class _Tally:
    """Counts auction messages and who sent them."""

    def __init__(self):
        self.count = 0
        self.senders: Counter = Counter()

    def send(self, robot: int, times: int = 1) -> None:
        if times:
            self.count += times
            self.senders[robot] += times


def _bid_value(topo, robot: int, event, params: EnergyParams) -> float | None:
    rb = topo.robots[robot]
    left = remaining_after(rb.energy, params.to_meters(distance(rb.position, event)), params)
    return left if left >= 0 else None


def rfta2_decide(auctioneer: int, bids, auctioneer_can_afford: bool) -> int | None:
    """Pick the winner from energy bids.

    Bidders beat the auctioneer; among several, the one left with the most
    energy wins (lower id on ties). With no bids the auctioneer takes the
    task itself if it can, otherwise the network is dead (None).
    """
    bids = list(bids)
    if len(bids) > 1:
        return min(bids, key=lambda b: (-b.value, b.bidder)).bidder
    if len(bids) == 1:
        return bids[0].bidder
    return auctioneer if auctioneer_can_afford else None


def _routed(source, event, sr, topo, rule, sr_check) -> tuple[RoutingOutcome, Counter]:
    route = gfgf2_route(source, event, sr, topo, rule, sr_check)
    return route, Counter(route.senders())


def _finish(winner, auctioneer, route, routing_senders, tally, n_bids) -> AllocationResult:
    senders = routing_senders + tally.senders
    return AllocationResult(
        winner=winner, auctioneer=auctioneer,
        routing_messages=route.messages if route else 0,
        auction_messages=tally.count,
        routing_steps=route.steps if route else 0,
        stop_reason=route.stop_reason if route else None,
        bids=n_bids, senders=senders, route=route)


def rfta1_allocate(source: int, event, sr: float, topo, rule: str = "right", sr_check: str = SR_EVERY_NODE) -> AllocationResult:
    """Route, then ask the auctioneer's neighbors for anyone closer to the event."""
    route, rsend = _routed(source, event, sr, topo, rule, sr_check)
    a = route.auctioneer
    pts = topo.points
    tally = _Tally()
    tally.send(a, len(topo.adjacency[a]))
    own = distance(pts[a], event)
    bids = []
    for w in topo.adjacency[a]:
        d = distance(pts[w], event)
        if d < own:
            bids.append(Bid(w, d))
            tally.send(w)
    winner = min(bids, key=lambda b: (b.value, b.bidder)).bidder if bids else a
    if winner != a:
        tally.send(a)
    return _finish(winner, a, route, rsend, tally, len(bids))


def _energy_auction(a: int, event, topo, params, tally: _Tally) -> list[Bid]:
    tally.send(a, len(topo.adjacency[a]))
    bids = []
    for w in topo.adjacency[a]:
        value = _bid_value(topo, w, event, params)
        if value is not None:
            bids.append(Bid(w, value))
            tally.send(w)
    return bids


def rfta2_allocate(source: int, event, sr: float, topo, params: EnergyParams = DEFAULT_ENERGY,
                   rule: str = "right", sr_check: str = SR_EVERY_NODE) -> AllocationResult:
    route, rsend = _routed(source, event, sr, topo, rule, sr_check)
    a = route.auctioneer
    tally = _Tally()
    bids = _energy_auction(a, event, topo, params, tally)
    winner = rfta2_decide(a, bids, _bid_value(topo, a, event, params) is not None)
    if winner is not None and winner != a:
        tally.send(a)
    return _finish(winner, a, route, rsend, tally, len(bids))


def rfta2ge_allocate(source: int, event, sr: float, topo, params: EnergyParams = DEFAULT_ENERGY,
                     rule: str = "right", sr_check: str = SR_EVERY_NODE) -> AllocationResult:
    """RFTA2 with the call also forwarded to the auctioneer's 2-hop neighborhood.

    A 2-hop robot reached through several neighbors bids once, relayed by
    its lowest-id forwarder; every forwarded call is still counted.
    """
    route, rsend = _routed(source, event, sr, topo, rule, sr_check)
    a = route.auctioneer
    adj = topo.adjacency
    tally = _Tally()
    bids = _energy_auction(a, event, topo, params, tally)
    one_hop = set(adj[a])
    relay: dict[int, int] = {}
    for nb in adj[a]:                        # ascending ids
        forward_to = [w for w in adj[nb] if w != a]
        tally.send(nb, len(forward_to))
        for w in forward_to:
            if w not in one_hop:
                relay.setdefault(w, nb)
    for w in sorted(relay):
        value = _bid_value(topo, w, event, params)
        if value is not None:
            bids.append(Bid(w, value, hops_to_auctioneer=2))
            tally.send(w)
            tally.send(relay[w])
    winner = rfta2_decide(a, bids, _bid_value(topo, a, event, params) is not None)
    if winner is not None and winner != a:
        tally.send(a)
        if winner in relay:
            tally.send(relay[winner])
    return _finish(winner, a, route, rsend, tally, len(bids))


def gfgf2a_allocate(source: int, event, sr: float, topo, params: EnergyParams = DEFAULT_ENERGY,
                    rule: str = "right", sr_check: str = SR_EVERY_NODE) -> AllocationResult:
    """No auction: the robot the routing ends at does the task if it can."""
    route, rsend = _routed(source, event, sr, topo, rule, sr_check)
    a = route.auctioneer
    winner = a if _bid_value(topo, a, event, params) is not None else None
    return _finish(winner, a, route, rsend, _Tally(), 0)


def hop_tree(adjacency, root: int, max_depth: int) -> tuple[dict[int, int], dict[int, int]]:
    """Breadth-first tree of depth ``max_depth``: (parent, depth) maps."""
    parent = {root: -1}
    depth = {root: 0}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        if depth[u] >= max_depth:
            continue
        for w in adjacency[u]:
            if w not in depth:
                depth[w] = depth[u] + 1
                parent[w] = u
                queue.append(w)
    return parent, depth


def _tree_auction(source, event, topo, params, parent, depth, tally) -> tuple[int | None, list[Bid]]:
    """Affordable tree members bid; bids merge on their way to the root, so
    each tree edge carries at most one bid message."""
    bids = []
    carrying: set[int] = set()
    for v in parent:
        if v == source:
            continue
        value = _bid_value(topo, v, event, params)
        if value is None:
            continue
        bids.append(Bid(v, value, hops_to_auctioneer=depth[v]))
        u = v
        while u != source and u not in carrying:
            carrying.add(u)
            u = parent[u]
    for u in carrying:
        tally.send(u)
    winner = rfta2_decide(source, bids, _bid_value(topo, source, event, params) is not None)
    if winner is not None and winner != source:
        u = parent[winner]
        while u != -1:
            tally.send(u)
            u = parent[u]
    return winner, bids


def ksaap_allocate(source: int, event, k: int, topo, params: EnergyParams = DEFAULT_ENERGY) -> AllocationResult:
    """k-hop localized auction run by the collecting robot itself.

    The call is flooded: every robot closer than ``k`` hops forwards it
    once to all neighbors except the one it came from.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    adj = topo.adjacency
    parent, depth = hop_tree(adj, source, k)
    tally = _Tally()
    for v, d in depth.items():
        if d < k:
            tally.send(v, len(adj[v]) - (0 if v == source else 1))
    winner, bids = _tree_auction(source, event, topo, params, parent, depth, tally)
    return _finish(winner, source, None, Counter(), tally, len(bids))


def bfs_allocate(source: int, event, hopmax: int, topo, params: EnergyParams = DEFAULT_ENERGY) -> AllocationResult:
    """Auction over a breadth-first tree of depth ``hopmax`` rooted at the
    collecting robot. Building the tree costs one message down and one up
    per tree edge; bids and the assignment then travel along tree edges."""
    if hopmax < 1:
        raise ValueError("hopmax must be at least 1")
    parent, depth = hop_tree(topo.adjacency, source, hopmax)
    tally = _Tally()
    for v, p in parent.items():
        if p != -1:
            tally.send(p)
            tally.send(v)
    winner, bids = _tree_auction(source, event, topo, params, parent, depth, tally)
    return _finish(winner, source, None, Counter(), tally, len(bids))


ALGORITHMS = ("gfgf2a", "rfta1", "rfta2", "rfta2ge", "ksaap", "bfs")


def allocate(algorithm: str, source: int, event, topo, *, sr: float = 0.2, k: int = 7,
             hopmax: int = 7, params: EnergyParams = DEFAULT_ENERGY,
             rule: str = "right", sr_check: str = SR_EVERY_NODE) -> AllocationResult:
    if algorithm == "rfta2":
        return rfta2_allocate(source, event, sr, topo, params, rule, sr_check)
    if algorithm == "rfta2ge":
        return rfta2ge_allocate(source, event, sr, topo, params, rule, sr_check)
    if algorithm == "gfgf2a":
        return gfgf2a_allocate(source, event, sr, topo, params, rule, sr_check)
    if algorithm == "rfta1":
        return rfta1_allocate(source, event, sr, topo, rule, sr_check)
    if algorithm == "ksaap":
        return ksaap_allocate(source, event, k, topo, params)
    if algorithm == "bfs":
        return bfs_allocate(source, event, hopmax, topo, params)
    raise ValueError(f"unknown algorithm {algorithm!r}; expected one of {ALGORITHMS}")
