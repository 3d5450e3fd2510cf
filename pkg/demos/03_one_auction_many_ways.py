"""Allocate the same event with every algorithm on the same worn network.

Run: python demos/03_one_auction_many_ways.py
"""
import numpy as np

from wsrn.allocation import allocate
from wsrn.energy import DEFAULT_ENERGY, energy_loss
from wsrn.geometry import distance
from wsrn.topology import generate_topology

topo = generate_topology(100, 0.2, rng_seed=1)
rng = np.random.default_rng(1)
for rb in topo.robots:                 # pretend the network has been working for a while
    rb.energy = float(rng.uniform(10, 100))

event, source = (0.7, 0.3), 12
print(f"{'algorithm':10s} {'winner':>6s} {'left J':>7s} {'routing':>7s} {'auction':>7s} {'bids':>5s}")
for alg in ("gfgf2a", "rfta1", "rfta2", "rfta2ge", "ksaap", "bfs"):
    res = allocate(alg, source, event, topo, sr=0.2, k=7, hopmax=7)
    if res.winner is None:
        print(f"{alg:10s}   dead")
        continue
    rb = topo.robots[res.winner]
    left = rb.energy - energy_loss(DEFAULT_ENERGY.to_meters(distance(rb.position, event)))
    print(f"{alg:10s} {res.winner:6d} {left:7.1f} {res.routing_messages:7d} "
          f"{res.auction_messages:7d} {res.bids:5d}")
print("rfta1 bids on distance alone, so its winner may not be able to afford the trip")
