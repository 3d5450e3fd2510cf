"""Which search radius keeps the network alive longest?

A small radius sends messages on long face walks looking for a robot near
the event; a large one accepts auctioneers far from it, so winners travel
further. The sweep multiplies the base radius 0.1 by 1..4.

With twenty runs the top two multipliers are often within noise of each
other; the acceptance suite uses a hundred.

Run: python demos/05_search_radius_sweep.py
"""
from wsrn.analysis import best_multiplier, sr_sweep
from wsrn.simulator import SimConfig

for alg in ("rfta2", "rfta2ge"):
    table = sr_sweep(SimConfig(algorithm=alg, r=0.25, runs=20))
    print(alg, "  ".join(f"{m}SR: {anl:.1f}" for m, anl in table),
          f"-> best {best_multiplier(table)}SR")
