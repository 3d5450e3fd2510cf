"""Command-line front end: experiment presets and ad-hoc runs written as CSV.

Files written to ``--out``:

``aggregate.csv``
    ``algorithm,topology,n,r,sr,runs,seed,anl,anl_ci,ampr,ampr_sd,arre,arre_sd,
    min_rre,anrr,anrr_sd,atdpr,atdpr_sd,total_msgs_mean,total_msgs_ci``
    followed by ``anl_sd,round_msgs_mean,round_msgs_ci,k,hopmax``.
    ``total_msgs_*`` are per run, ``round_msgs_*`` per attempted round.
``rounds.csv`` (ad-hoc runs)
    ``run,round,event_x,event_y,source,winner,stop_reason,routing_msgs,
    auction_msgs,steps,travel_m``; ``run`` is the run seed, an empty
    ``winner`` marks the round where the network died.
``trace_<seed>.csv`` (``--trace``)
    ``round,step,node_id,mode`` hop by hop.
``nodes_<seed>.csv`` / ``edges_<seed>.csv`` (``--snapshot``)
    initial deployment as ``id,x,y,energy`` and Gabriel edges as ``u,v``.
``rfta1.csv``, ``lemma1.csv``, ``sr_sweep.csv``
    preset specific, see ``--help``.

Numbers are written with 6 significant digits.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
from dataclasses import replace

from .allocation import ALGORITHMS
from .analysis import binomial_sigma, closest_rate, monte_carlo_p, p_lower_bound
from .simulator import SimConfig, aggregate, run_many, run_rfta1_many
from .topology import generate_topology

R_GRID = (0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5, 0.55)
MULTS = (1, 2, 3, 4)
TOPOLOGIES = ("random", "hole")

AGGREGATE_HEADER = [
    "algorithm", "topology", "n", "r", "sr", "runs", "seed", "anl", "anl_ci", "ampr", "ampr_sd",
    "arre", "arre_sd", "min_rre", "anrr", "anrr_sd", "atdpr", "atdpr_sd", "total_msgs_mean",
    "total_msgs_ci", "anl_sd", "round_msgs_mean", "round_msgs_ci", "k", "hopmax"]
ROUNDS_HEADER = ["run", "round", "event_x", "event_y", "source", "winner", "stop_reason",
                 "routing_msgs", "auction_msgs", "steps", "travel_m"]
RFTA1_HEADER = ["topology", "n", "r", "sr", "runs", "seed", "closest_rfta1", "closest_gfgf2",
                "msgs_rfta1", "msgs_gfgf2"]
LEMMA1_HEADER = ["N", "R", "bound", "empirical", "sigma"]
SWEEP_HEADER = ["algorithm", "topology", "r", "sr_mult", "sr", "runs", "seed", "mean_lifetime",
                "anl_ci"]


def _grid(**axes) -> list[dict]:
    rows = [{}]
    for key, values in axes.items():
        rows = [dict(row, **{key: v}) for row in rows for v in values]
    return rows


PRESETS = {
    "fig6_8_rfta1": ("RFTA1 vs routing alone: messages and closest-robot rate (Figures 6-8)",
                     _grid(algorithm=["rfta1"], topology=TOPOLOGIES, r=R_GRID, sr_multiplier=MULTS)),
    "fig9_10_baselines": ("lifetime and messages vs k-SAAP and BFS, r=0.2, 2SR (Figures 9-10)",
                          _grid(algorithm=["rfta2", "rfta2ge", "gfgf2a"], r=[0.2])
                          + [{"algorithm": "ksaap", "k": 7, "r": 0.2},
                             {"algorithm": "bfs", "hopmax": 7, "r": 0.2},
                             {"algorithm": "bfs", "hopmax": 10, "r": 0.2}]),
    "fig11_12_rfta2": ("RFTA2 lifetime and messages over r and SR (Figures 11-12)",
                       _grid(algorithm=["rfta2"], topology=TOPOLOGIES, r=R_GRID, sr_multiplier=MULTS)),
    "fig13_14_rfta2ge": ("RFTA2GE lifetime and messages over r and SR (Figures 13-14)",
                         _grid(algorithm=["rfta2ge"], topology=TOPOLOGIES, r=R_GRID, sr_multiplier=MULTS)),
    "fig15_16_comparison": ("RFTA2, GFGF2A, RFTA2GE at 2SR over r (Figures 15-16)",
                            _grid(algorithm=["rfta2", "gfgf2a", "rfta2ge"], topology=TOPOLOGIES, r=R_GRID)),
    "table2_random": ("robot energy statistics, random topology, r=0.25, 2SR (Table 2)",
                      _grid(algorithm=["gfgf2a", "rfta2", "rfta2ge"], r=[0.25])),
    "table3_hole": ("robot energy statistics, topology with hole, r=0.25, 2SR (Table 3)",
                    _grid(algorithm=["gfgf2a", "rfta2", "rfta2ge"], topology=["hole"], r=[0.25])),
    "lemma1_check": ("corner-case bound vs Monte Carlo for N=100, R in 0.1..0.4", []),
    "lemma2_sweep": ("mean lifetime over SR multipliers 1-4 for RFTA2 and RFTA2GE",
                     _grid(algorithm=["rfta2", "rfta2ge"], topology=TOPOLOGIES, r=[0.2, 0.25],
                           sr_multiplier=MULTS)),
}


def fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    if value is None:
        return ""
    return str(value)


class _Writer:
    def __init__(self, out_dir: str):
        self.out_dir = out_dir

    def write(self, name: str, header: list[str], rows) -> str:
        path = os.path.join(self.out_dir, name)
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            for row in rows:
                w.writerow([fmt(v) for v in row])
        return path


def aggregate_row(cfg: SimConfig, report) -> list:
    return [cfg.algorithm, cfg.topology, cfg.n, cfg.r, cfg.sr, cfg.runs, cfg.seed,
            report.anl, report.anl_ci, report.ampr, report.ampr_sd, report.arre, report.arre_sd,
            report.min_rre, report.anrr, report.anrr_sd, report.atdpr, report.atdpr_sd,
            report.total_msgs_mean, report.total_msgs_ci, report.anl_sd,
            report.round_msgs_mean, report.round_msgs_ci,
            cfg.k if cfg.algorithm == "ksaap" else "",
            cfg.hopmax if cfg.algorithm == "bfs" else ""]


def _single_report(cfg: SimConfig, jobs: int, keep_rounds: bool = False, trace: bool = False):
    if cfg.runs < 2:
        raise ValueError("aggregate statistics need --runs >= 2")
    runs = run_many(cfg, jobs, keep_rounds=keep_rounds, trace=trace)
    return aggregate(runs, cfg.energy), runs


def _rfta1_row(cfg: SimConfig, jobs: int) -> list:
    recs = run_rfta1_many(cfg, jobs)
    events = sum(rec.events for rec in recs)
    rate_auction, rate_routing = closest_rate(recs)
    return [cfg.topology, cfg.n, cfg.r, cfg.sr, cfg.runs, cfg.seed, rate_auction, rate_routing,
            sum(rec.messages_rfta1 for rec in recs) / events,
            sum(rec.messages_gfgf2 for rec in recs) / events]


def lemma1_rows(N: int = 100, radii=(0.1, 0.2, 0.3, 0.4), trials: int = 10_000, seed: int = 0):
    rows = []
    for R in radii:
        emp = monte_carlo_p(N, R, trials, seed)
        rows.append([N, R, p_lower_bound(N, R), emp, binomial_sigma(emp, trials)])
    return rows


def run_preset(name: str, base: SimConfig, writer: _Writer, jobs: int) -> list[str]:
    if name == "lemma1_check":
        return [writer.write("lemma1.csv", LEMMA1_HEADER, lemma1_rows(seed=base.seed))]
    _, grid = PRESETS[name]
    configs = [replace(base, **point) for point in grid]
    if name == "fig6_8_rfta1":
        return [writer.write("rfta1.csv", RFTA1_HEADER, [_rfta1_row(c, jobs) for c in configs])]
    results = [(cfg, _single_report(cfg, jobs)[0]) for cfg in configs]
    paths = [writer.write("aggregate.csv", AGGREGATE_HEADER,
                          [aggregate_row(cfg, rep) for cfg, rep in results])]
    if name == "lemma2_sweep":
        paths.append(writer.write("sr_sweep.csv", SWEEP_HEADER, [
            [cfg.algorithm, cfg.topology, cfg.r, cfg.sr_multiplier, cfg.sr, cfg.runs, cfg.seed,
             rep.anl, rep.anl_ci] for cfg, rep in results]))
    return paths


def run_adhoc(cfg: SimConfig, writer: _Writer, jobs: int, trace: bool, snapshot: bool) -> list[str]:
    if cfg.algorithm == "rfta1":
        return [writer.write("rfta1.csv", RFTA1_HEADER, [_rfta1_row(cfg, jobs)])]
    report, runs = _single_report(cfg, jobs, keep_rounds=True, trace=trace)
    paths = [writer.write("aggregate.csv", AGGREGATE_HEADER, [aggregate_row(cfg, report)])]
    paths.append(writer.write("rounds.csv", ROUNDS_HEADER, [
        [run.seed, rec.round_index, rec.event.x, rec.event.y, rec.collecting_robot, rec.winner,
         rec.stop_reason, rec.routing_messages, rec.auction_messages, rec.routing_steps,
         rec.winner_travel]
        for run in runs for rec in run.rounds]))
    if trace:
        for run in runs:
            paths.append(writer.write(f"trace_{run.seed}.csv", ["round", "step", "node_id", "mode"], [
                [rec.round_index, step, node, mode]
                for rec in run.rounds if rec.hop_trace
                for step, (node, mode) in enumerate(zip(rec.hop_trace, rec.mode_trace))]))
    if snapshot:
        for seed in cfg.seeds():
            topo = generate_topology(cfg.n, cfg.r, cfg.deployment_hole, seed, cfg.energy)
            nodes, edges = topo.snapshot()
            paths.append(writer.write(f"nodes_{seed}.csv", ["id", "x", "y", "energy"], nodes))
            paths.append(writer.write(f"edges_{seed}.csv", ["u", "v"], edges))
    return paths


def build_parser() -> argparse.ArgumentParser:
    preset_help = "\n".join(f"  {name:20s} {desc}" for name, (desc, _) in PRESETS.items())
    p = argparse.ArgumentParser(
        prog="wsrn",
        description="Robot task allocation simulator: routing with face traversal and auctions.",
        epilog="presets:\n" + preset_help,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--preset", choices=sorted(PRESETS))
    p.add_argument("--algorithm", default="rfta2", choices=ALGORITHMS)
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--r", type=float, default=0.25)
    p.add_argument("--sr-mult", type=int, default=2)
    p.add_argument("--topology", default="random", choices=TOPOLOGIES)
    p.add_argument("--k", type=int, default=7)
    p.add_argument("--hopmax", type=int, default=7)
    p.add_argument("--runs", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sr-check", default="after_greedy", choices=["after_greedy", "every_node"],
                   help="where the search radius is tested during routing")
    p.add_argument("--hand-rule", default="right", choices=["right", "left"])
    p.add_argument("--out", default=".", help="output directory")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--trace", action="store_true", help="write hop traces per run")
    p.add_argument("--snapshot", action="store_true", help="write initial deployments per run")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = SimConfig(algorithm=args.algorithm, n=args.n, r=args.r, sr_multiplier=args.sr_mult,
                        topology=args.topology, k=args.k, hopmax=args.hopmax, runs=args.runs,
                        seed=args.seed, sr_check=args.sr_check, hand_rule=args.hand_rule)
    except ValueError as exc:
        print(f"wsrn: error: {exc}", file=sys.stderr)
        return 2
    try:
        os.makedirs(args.out, exist_ok=True)
        writer = _Writer(args.out)
        if args.preset:
            paths = run_preset(args.preset, cfg, writer, args.jobs)
        else:
            paths = run_adhoc(cfg, writer, args.jobs, args.trace, args.snapshot)
    except OSError as exc:
        print(f"wsrn: cannot write output: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"wsrn: error: {exc}", file=sys.stderr)
        return 2
    for path in paths:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
