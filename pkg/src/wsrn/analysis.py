"""Numerical checks behind the search-radius choice and the complexity bounds,
plus parameter sweeps over the simulator."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .simulator import RunRecord, SimConfig, SimReport, simulate
from .topology import as_rng

SR_MULTIPLIERS = (1, 2, 3, 4)


def p_lower_bound(N: int, R: float) -> float:
    """Lower bound on the chance that one of N-1 other uniform points falls
    within R of a given point, taking the worst case of a corner center
    where only a quarter disk lies inside the square."""
    if N < 2 or not 0 <= R <= 1:
        raise ValueError("need N >= 2 and 0 <= R <= 1")
    return 1.0 - (1.0 - math.pi * R * R / 4.0) ** (N - 1)


def monte_carlo_p(N: int, R: float, trials: int = 10_000, seed=0) -> float:
    """Empirical frequency that some other point of N uniform points lies
    within R of the first one."""
    if trials < 1000:
        raise ValueError("use at least 1000 trials")
    rng = as_rng(seed)
    hits = 0
    for start in range(0, trials, 2000):        # bounded memory
        batch = min(2000, trials - start)
        pts = rng.random((batch, N, 2))
        d = np.hypot(*(pts[:, 1:, :] - pts[:, :1, :]).transpose(2, 0, 1))
        hits += int(np.count_nonzero((d <= R).any(axis=1)))
    return hits / trials


def binomial_sigma(p: float, trials: int) -> float:
    return math.sqrt(max(p * (1 - p), 0.0) / trials)


@dataclass(frozen=True)
class SweepSpec:
    variable: str                 # "r" or "sr_multiplier"
    values: tuple
    config: SimConfig

    def __post_init__(self):
        if self.variable not in ("r", "sr_multiplier"):
            raise ValueError(f"cannot sweep {self.variable!r}")
        if not self.values or any(b <= a for a, b in zip(self.values, self.values[1:])):
            raise ValueError("sweep values must be non-empty and strictly increasing")

    def configs(self) -> list[SimConfig]:
        return [replace(self.config, **{self.variable: v}) for v in self.values]


def sweep(spec: SweepSpec, jobs: int = 1) -> list[tuple[object, SimReport]]:
    return [(value, simulate(cfg, jobs)[0]) for value, cfg in zip(spec.values, spec.configs())]


def sr_sweep(config: SimConfig, multipliers=SR_MULTIPLIERS, jobs: int = 1) -> list[tuple[int, float]]:
    """Mean lifetime for each search-radius multiplier."""
    if config.algorithm not in ("rfta2", "rfta2ge"):
        raise ValueError("the search-radius sweep applies to rfta2 and rfta2ge")
    spec = SweepSpec("sr_multiplier", tuple(multipliers), config)
    return [(m, rep.anl) for m, rep in sweep(spec, jobs)]


def best_multiplier(table: list[tuple[int, float]]) -> int:
    return max(table, key=lambda row: row[1])[0]


@dataclass
class Lemma4Row:
    round_index: int
    edges: int
    inner_faces: int
    mean_degree: float
    estimate: float
    measured: int


def lemma4_diagnostic(run: RunRecord, n: int) -> list[Lemma4Row]:
    """Message estimate (F + 1) * deg + 2 next to the measured count.

    F = c - n + 1 inner faces of a connected planar graph with c edges.
    Informational only; the estimate is a proof device, not a bound.
    """
    if run.rounds is None:
        raise ValueError("lemma4_diagnostic needs a run recorded with keep_rounds=True")
    rows = []
    for rec in run.rounds:
        c = rec.edge_count
        faces = c - n + 1
        deg = 2.0 * c / n
        rows.append(Lemma4Row(rec.round_index, c, faces, deg, (faces + 1) * deg + 2,
                              rec.total_messages))
    return rows


def edge_count_bounds_hold(c: int, n: int) -> bool:
    """n - 1 <= c < 3n for a connected planar graph (equality for trees)."""
    return n - 1 <= c < 3 * n


def closest_rate(records) -> tuple[float, float]:
    """Fraction of RFTA1 events won by the closest robot, with and without
    the auction, pooled over networks."""
    events = sum(rec.events for rec in records)
    return (sum(rec.closest_rfta1 for rec in records) / events,
            sum(rec.closest_gfgf2 for rec in records) / events)
