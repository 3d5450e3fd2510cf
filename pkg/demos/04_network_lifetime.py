"""Run whole networks to exhaustion and print table-style statistics.

Twenty runs per algorithm keep this to a minute or so; the acceptance
suite uses a hundred.

Run: python demos/04_network_lifetime.py
"""
from wsrn.simulator import SimConfig, simulate

print(f"{'topology':8s} {'algorithm':9s} {'ANL':>12s} {'AMPR':>6s} {'ARRE %':>7s} "
      f"{'ANRR':>5s} {'ATDPR m':>8s} {'msgs/round':>10s}")
for topology in ("random", "hole"):
    for alg in ("gfgf2a", "rfta2", "rfta2ge"):
        cfg = SimConfig(algorithm=alg, r=0.25, topology=topology, runs=20)
        rep, _ = simulate(cfg)
        print(f"{topology:8s} {alg:9s} {rep.anl:6.1f}±{rep.anl_ci:5.1f} {rep.ampr:6.1f} "
              f"{rep.arre:7.1f} {rep.anrr:5.2f} {rep.atdpr:8.2f} {rep.round_msgs_mean:10.1f}")
