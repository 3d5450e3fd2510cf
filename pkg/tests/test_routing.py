import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wsrn.geometry import distance
from wsrn.routing import (FACE, GREEDY, INSIDE_SR, LOOP_DETECTED, SR_AFTER_GREEDY, SR_EVERY_NODE,
                          RoutingMessage, face_next, gfgf2_route, greedy_next)
from wsrn.topology import generate_topology

from conftest import make_topology

CHAIN = [(0.1, 0.5), (0.2, 0.5), (0.3, 0.5), (0.4, 0.5), (0.5, 0.5), (0.6, 0.5)]
# regular-ish hexagon, side 0.1; with r=0.15 only the perimeter survives
HEXAGON = [(0.4, 0.5), (0.35, 0.5866), (0.25, 0.5866), (0.2, 0.5), (0.25, 0.4134), (0.35, 0.4134)]
SQUARE = [(0.25, 0.25), (0.75, 0.25), (0.75, 0.75), (0.25, 0.75)]


def test_greedy_collinear_and_failure():
    t = make_topology(CHAIN[:3], r=0.15)
    assert greedy_next(0, (0.3, 0.5), t) == 1
    assert greedy_next(2, (0.3, 0.5), t) is None


def test_greedy_tie_goes_to_lower_id():
    # dyadic coordinates so both candidates are exactly equidistant
    t = make_topology([(0.5, 0.5), (0.625, 0.625), (0.625, 0.375)], r=0.25)
    assert greedy_next(0, (0.875, 0.5), t) == 1
    t = make_topology([(0.5, 0.5), (0.625, 0.375), (0.625, 0.625)], r=0.25)
    assert greedy_next(0, (0.875, 0.5), t) == 1


def test_source_inside_sr():
    t = make_topology(CHAIN, r=0.15)
    out = gfgf2_route(2, (0.32, 0.5), 0.1, t)
    assert (out.auctioneer, out.steps, out.messages, out.stop_reason) == (2, 0, 0, INSIDE_SR)


def test_chain_greedy_delivery():
    t = make_topology(CHAIN, r=0.15)
    out = gfgf2_route(0, (0.75, 0.5), 0.16, t)
    assert out.hop_trace == [0, 1, 2, 3, 4, 5]
    assert out.steps == out.messages == 5
    assert out.stop_reason == INSIDE_SR and set(out.mode_trace) == {GREEDY}


def test_sr_check_placement():
    t = make_topology(CHAIN, r=0.15)
    early = gfgf2_route(0, (0.62, 0.5), 0.2, t, sr_check=SR_EVERY_NODE)
    late = gfgf2_route(0, (0.62, 0.5), 0.2, t, sr_check=SR_AFTER_GREEDY)
    assert (early.auctioneer, early.steps) == (4, 4)
    assert (late.auctioneer, late.steps) == (5, 5)


def test_far_event_walks_outer_face_then_loops():
    t = make_topology(HEXAGON, r=0.15)
    assert t.edge_count == 6
    for mode in (SR_EVERY_NODE, SR_AFTER_GREEDY):
        out = gfgf2_route(3, (0.95, 0.5), 0.01, t, sr_check=mode)
        assert out.stop_reason == LOOP_DETECTED
        assert out.auctioneer == 0
        # greedy to the east corner, then clockwise (south first) around the hull
        assert out.hop_trace[:3] == [3, 4, 5] or out.hop_trace[:3] == [3, 2, 1]
        face_hops = out.hop_trace[out.hop_trace.index(0):]
        assert face_hops == [0, 5, 4, 3, 2, 1, 0]


def test_square_clockwise_perimeter():
    t = make_topology(SQUARE, r=0.6)
    out = gfgf2_route(1, (0.95, 0.05), 0.01, t)
    assert out.hop_trace == [1, 0, 3, 2, 1]
    assert out.mode_trace == [FACE] * 5
    assert out.stop_reason == LOOP_DETECTED


def test_left_hand_rule_walks_the_other_way():
    t = make_topology(SQUARE, r=0.6)
    out = gfgf2_route(1, (0.95, 0.05), 0.01, t, rule="left")
    assert out.hop_trace == [1, 2, 3, 0, 1]


def test_dead_end_returns_to_sender():
    t = make_topology([(0.2, 0.5), (0.3, 0.5)], r=0.15)
    msg = RoutingMessage(event=(0.9, 0.9), sr=0.01, current=1, mode=FACE, previous=0,
                         face_entry_point=t.points[0], face_entry_distance=1.0,
                         crossing_point=t.points[0])
    assert face_next(msg, t) == 0


def test_face_change_on_closer_crossing():
    # edge 1-2 crosses the entry(0) -> event segment at (0.4, 0.5)
    t = make_topology([(0.2, 0.5), (0.3, 0.35), (0.5, 0.65), (0.4, 0.2)], r=0.5)
    assert t.neighbors(1) == [0, 2, 3]
    msg = RoutingMessage(event=(0.9, 0.5), sr=0.01, current=1, mode=FACE, previous=0,
                         face_entry_point=t.points[0], face_entry_distance=0.7,
                         crossing_point=t.points[0])
    nxt = face_next(msg, t)
    assert msg.face_changes == 1
    assert msg.crossing_point == pytest.approx((0.4, 0.5))
    assert nxt == 3                 # rotation continues past the crossing edge
    # a second crossing no closer than the recorded one changes nothing
    msg.face_changes = 0
    assert face_next(msg, t) == 2 and msg.face_changes == 0


def test_isolated_source():
    t = make_topology([(0.1, 0.1), (0.9, 0.9)], r=0.2)
    assert gfgf2_route(0, (0.5, 0.5), 0.1, t).stop_reason == LOOP_DETECTED
    assert gfgf2_route(0, (0.15, 0.1), 0.1, t, sr_check=SR_AFTER_GREEDY).stop_reason == INSIDE_SR


def test_rejects_nonpositive_sr():
    t = make_topology(CHAIN, r=0.15)
    with pytest.raises(ValueError):
        gfgf2_route(0, (0.5, 0.5), 0, t)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from([0.2, 0.25, 0.3]),
       st.sampled_from([0.02, 0.1, 0.2]), st.sampled_from([SR_EVERY_NODE, SR_AFTER_GREEDY]),
       st.sampled_from(["right", "left"]))
def test_routing_invariants(seed, r, sr, mode, rule):
    t = generate_topology(100, r, rng_seed=seed)
    rng = np.random.default_rng(seed)
    bound = t.n * t.edge_count
    for _ in range(20):
        event = tuple(rng.random(2))
        src = int(rng.integers(t.n))
        out = gfgf2_route(src, event, sr, t, rule, mode)
        assert out.steps <= bound
        assert out.hop_trace[0] == src and out.hop_trace[-1] == out.auctioneer
        for a, b in zip(out.hop_trace, out.hop_trace[1:]):
            assert b in t.neighbors(a)
        face_edges = [(a, b) for a, b, m in zip(out.hop_trace, out.hop_trace[1:], out.mode_trace)
                      if m == FACE]
        assert len(face_edges) == len(set(face_edges))
        if out.stop_reason == INSIDE_SR:
            assert distance(t.points[out.auctioneer], event) <= sr
