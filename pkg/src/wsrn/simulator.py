"""Round-based network lifetime simulation.

Each run owns one ``numpy`` PCG64 stream seeded with the run seed. Draws
happen in a fixed order, so every algorithm sees the same deployment and
the same event sequence for a given seed:

1. deployment: (x, y) pairs until ``n`` robots are placed outside the hole,
   redrawn from scratch until the Gabriel graph is connected;
2. every round: the event (x, y), then the index of the collecting robot.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from statistics import fmean, stdev

import numpy as np

from .allocation import ALGORITHMS, allocate, rfta1_allocate
from .energy import DEFAULT_ENERGY, EnergyParams, consume, energy_loss, percent_remaining
from .geometry import Point, distance
from .routing import SR_AFTER_GREEDY
from .topology import Hole, Topology, as_rng, generate_topology

MAX_ROUNDS = 100_000
Z95 = 1.96


class NonTerminatingSimulation(RuntimeError):
    """A run hit the round cap; energy drain should make this impossible."""


@dataclass(frozen=True)
class SimConfig:
    algorithm: str = "rfta2"
    n: int = 100
    r: float = 0.25
    sr_base: float = 0.1
    sr_multiplier: int = 2
    topology: str = "random"          # "random" or "hole"
    k: int = 7
    hopmax: int = 7
    runs: int = 100
    seed: int = 0
    energy: EnergyParams = DEFAULT_ENERGY
    hole: Hole = Hole()
    hand_rule: str = "right"
    sr_check: str = SR_AFTER_GREEDY
    max_rounds: int = MAX_ROUNDS
    rfta1_events: int = 100           # events per network for the RFTA1 protocol

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        if self.topology not in ("random", "hole"):
            raise ValueError(f"unknown topology {self.topology!r}")
        if self.n < 2 or self.runs < 1:
            raise ValueError("need n >= 2 and runs >= 1")
        if not self.r > 0:
            raise ValueError(f"r out of range: {self.r}")
        if self.sr_base <= 0 or self.sr_multiplier <= 0 or self.k < 1 or self.hopmax < 1:
            raise ValueError("sr, k and hopmax must be positive")

    @property
    def sr(self) -> float:
        return self.sr_base * self.sr_multiplier

    @property
    def deployment_hole(self) -> Hole | None:
        return self.hole if self.topology == "hole" else None

    def seeds(self) -> list[int]:
        return [self.seed + i for i in range(self.runs)]


@dataclass
class RoundRecord:
    round_index: int
    event: Point
    collecting_robot: int
    winner: int | None
    auctioneer: int
    stop_reason: str | None
    routing_messages: int
    auction_messages: int
    routing_steps: int
    winner_travel: float          # meters
    energy_used: float            # J
    edge_count: int               # Gabriel edges when the round was routed
    disconnected_after: bool
    hop_trace: list[int] | None = None
    mode_trace: list[str] | None = None

    @property
    def total_messages(self) -> int:
        return self.routing_messages + self.auction_messages


@dataclass
class RunRecord:
    seed: int
    lifetime: int                         # successfully allocated rounds
    energies: list[float]                 # J, per robot at the end
    messages: list[int]                   # per robot
    reactions: list[int]
    traveled: list[float]                 # meters
    round_messages: list[int]             # total per attempted round
    step_bound_violations: int = 0
    max_step_ratio: float = 0.0           # max of steps / (n * c) over rounds
    disconnections: int = 0
    rounds: list[RoundRecord] | None = None

    @property
    def total_messages(self) -> int:
        return sum(self.round_messages)


@dataclass
class SimState:
    config: SimConfig
    topology: Topology
    round_index: int = 0
    dead: bool = False


def new_state(config: SimConfig, rng) -> SimState:
    topo = generate_topology(config.n, config.r, config.deployment_hole, rng, config.energy)
    return SimState(config, topo)


def run_round(state: SimState, rng: np.random.Generator, trace: bool = False) -> RoundRecord:
    """Play one event: allocate it and, on success, move the winner there."""
    if state.dead:
        raise RuntimeError("network is already dead")
    cfg, topo = state.config, state.topology
    ex, ey = rng.random(2)
    event = Point(float(ex), float(ey))
    source = int(rng.integers(topo.n))
    edge_count = topo.edge_count
    result = allocate(cfg.algorithm, source, event, topo, sr=cfg.sr, k=cfg.k, hopmax=cfg.hopmax,
                      params=cfg.energy, rule=cfg.hand_rule, sr_check=cfg.sr_check)
    for robot, count in result.senders.items():
        topo.robots[robot].messages_sent += count
    travel = used = 0.0
    if result.winner is None:
        state.dead = True
    else:
        winner = topo.robots[result.winner]
        travel = cfg.energy.to_meters(distance(winner.position, event))
        used = energy_loss(travel, cfg.energy)
        consume(winner, travel, cfg.energy)
        topo.update_after_move(result.winner, event)
    record = RoundRecord(
        round_index=state.round_index, event=event, collecting_robot=source,
        winner=result.winner, auctioneer=result.auctioneer, stop_reason=result.stop_reason,
        routing_messages=result.routing_messages, auction_messages=result.auction_messages,
        routing_steps=result.routing_steps, winner_travel=travel, energy_used=used,
        edge_count=edge_count, disconnected_after=topo.disconnected)
    if trace and result.route is not None:
        record.hop_trace = list(result.route.hop_trace)
        record.mode_trace = list(result.route.mode_trace)
    state.round_index += 1
    return record


def run_lifetime(config: SimConfig, seed: int, keep_rounds: bool = True, trace: bool = False) -> RunRecord:
    """Simulate rounds until the network dies; deterministic per (config, seed)."""
    if config.algorithm == "rfta1":
        raise ValueError("RFTA1 is distance-only and has no lifetime; use run_rfta1_network")
    rng = as_rng(seed)
    state = new_state(config, rng)
    n = config.n
    rounds: list[RoundRecord] = []
    round_messages: list[int] = []
    violations = disconnections = 0
    max_ratio = 0.0
    while not state.dead:
        if state.round_index >= config.max_rounds:
            raise NonTerminatingSimulation(
                f"{config.algorithm} seed {seed} still alive after {config.max_rounds} rounds")
        rec = run_round(state, rng, trace)
        bound = n * rec.edge_count
        if bound:
            max_ratio = max(max_ratio, rec.routing_steps / bound)
        if rec.routing_steps > bound:
            violations += 1
        disconnections += rec.disconnected_after
        round_messages.append(rec.total_messages)
        if keep_rounds:
            rounds.append(rec)
    robots = state.topology.robots
    return RunRecord(
        seed=seed, lifetime=state.round_index - 1,
        energies=[rb.energy for rb in robots], messages=[rb.messages_sent for rb in robots],
        reactions=[rb.reactions for rb in robots], traveled=[rb.traveled for rb in robots],
        round_messages=round_messages, step_bound_violations=violations,
        max_step_ratio=max_ratio, disconnections=disconnections,
        rounds=rounds if keep_rounds else None)


def _lifetime_job(args) -> RunRecord:
    config, seed, keep_rounds, trace = args
    return run_lifetime(config, seed, keep_rounds, trace)


def run_many(config: SimConfig, jobs: int = 1, keep_rounds: bool = False,
             trace: bool = False) -> list[RunRecord]:
    """All ``config.runs`` runs, returned in seed order whatever ``jobs`` is."""
    tasks = [(config, s, keep_rounds, trace) for s in config.seeds()]
    if jobs <= 1:
        return [_lifetime_job(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_lifetime_job, tasks))


@dataclass
class SimReport:
    runs: int
    lifetimes: list[int]
    anl: float
    anl_sd: float
    anl_ci: float
    ampr: float
    ampr_sd: float
    min_rre: float                # mean over runs of the lowest robot energy, %
    arre: float                   # %
    arre_sd: float
    anrr: float
    anrr_sd: float
    atdpr: float                  # m
    atdpr_sd: float
    total_msgs_mean: float        # per run
    total_msgs_ci: float
    round_msgs_mean: float        # per attempted round
    round_msgs_ci: float
    step_bound_violations: int = 0


def _sd(values) -> float:
    return stdev(values) if len(values) > 1 else 0.0


def _ci(values) -> float:
    return Z95 * _sd(values) / math.sqrt(len(values))


def aggregate(runs: list[RunRecord], energy: EnergyParams = DEFAULT_ENERGY) -> SimReport:
    """Table statistics over runs.

    Per-robot quantities are averaged over robots within a run, and the
    reported spread is the across-robot standard deviation, both then
    averaged over runs. Lifetime and message spreads are across runs.
    """
    if len(runs) < 2:
        raise ValueError("aggregate needs at least two runs")
    runs = sorted(runs, key=lambda rec: rec.seed)

    def per_robot(values_of):
        means, sds = [], []
        for rec in runs:
            vals = values_of(rec)
            means.append(fmean(vals))
            sds.append(_sd(vals))
        return fmean(means), fmean(sds)

    lifetimes = [rec.lifetime for rec in runs]
    ampr, ampr_sd = per_robot(lambda rec: rec.messages)
    arre, arre_sd = per_robot(lambda rec: [percent_remaining(e, energy) for e in rec.energies])
    anrr, anrr_sd = per_robot(lambda rec: rec.reactions)
    atdpr, atdpr_sd = per_robot(lambda rec: rec.traveled)
    totals = [rec.total_messages for rec in runs]
    per_round = [fmean(rec.round_messages) for rec in runs]
    return SimReport(
        runs=len(runs), lifetimes=lifetimes,
        anl=fmean(lifetimes), anl_sd=_sd(lifetimes), anl_ci=_ci(lifetimes),
        ampr=ampr, ampr_sd=ampr_sd,
        min_rre=fmean(percent_remaining(min(rec.energies), energy) for rec in runs),
        arre=arre, arre_sd=arre_sd, anrr=anrr, anrr_sd=anrr_sd,
        atdpr=atdpr, atdpr_sd=atdpr_sd,
        total_msgs_mean=fmean(totals), total_msgs_ci=_ci(totals),
        round_msgs_mean=fmean(per_round), round_msgs_ci=_ci(per_round),
        step_bound_violations=sum(rec.step_bound_violations for rec in runs))


def simulate(config: SimConfig, jobs: int = 1) -> tuple[SimReport, list[RunRecord]]:
    runs = run_many(config, jobs)
    return aggregate(runs, config.energy), runs


# RFTA1 is evaluated on static networks: no energy, no movement.

@dataclass
class Rfta1Record:
    seed: int
    events: int
    closest_rfta1: int            # events where the auction winner is the closest robot
    closest_gfgf2: int            # events where the routing alone ends at it
    messages_rfta1: int
    messages_gfgf2: int
    steps: list[int] = field(default_factory=list)
    edge_count: int = 0


def run_rfta1_network(config: SimConfig, seed: int) -> Rfta1Record:
    rng = as_rng(seed)
    topo = generate_topology(config.n, config.r, config.deployment_hole, rng, config.energy)
    pts = topo.points
    rec = Rfta1Record(seed, config.rfta1_events, 0, 0, 0, 0, edge_count=topo.edge_count)
    for _ in range(config.rfta1_events):
        ex, ey = rng.random(2)
        event = Point(float(ex), float(ey))
        source = int(rng.integers(topo.n))
        closest = min(range(topo.n), key=lambda i: (distance(pts[i], event), i))
        res = rfta1_allocate(source, event, config.sr, topo, config.hand_rule, config.sr_check)
        rec.closest_rfta1 += res.winner == closest
        rec.closest_gfgf2 += res.auctioneer == closest
        rec.messages_rfta1 += res.total_messages
        rec.messages_gfgf2 += res.routing_messages
        rec.steps.append(res.routing_steps)
    return rec


def _rfta1_job(args) -> Rfta1Record:
    return run_rfta1_network(*args)


def run_rfta1_many(config: SimConfig, jobs: int = 1) -> list[Rfta1Record]:
    tasks = [(replace(config, algorithm="rfta1"), s) for s in config.seeds()]
    if jobs <= 1:
        return [_rfta1_job(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_rfta1_job, tasks))
