"""Route an event location through the network and print the hop trace.

Greedy forwarding runs until it stalls; then the message walks faces with
the right-hand rule until it reaches a robot inside the search radius or
is about to repeat an edge.

Run: python demos/02_routing_to_an_event.py
"""
from wsrn.geometry import distance
from wsrn.routing import SR_AFTER_GREEDY, SR_EVERY_NODE, gfgf2_route
from wsrn.topology import Hole, generate_topology

topo = generate_topology(100, 0.2, hole=Hole(), rng_seed=4)
event = (0.5, 0.5)                     # right in the hole: greedy has to give up somewhere
source = min(range(topo.n), key=lambda i: topo.points[i].x)

for mode in (SR_EVERY_NODE, SR_AFTER_GREEDY):
    out = gfgf2_route(source, event, 0.2, topo, sr_check=mode)
    d = distance(topo.points[out.auctioneer], event)
    print(f"\nsr checked {mode}: {out.steps} hops, stop={out.stop_reason}, "
          f"auctioneer {out.auctioneer} at {d:.3f} from the event")
    for node, m in zip(out.hop_trace, out.mode_trace):
        print(f"  {node:3d} {m:6s} {distance(topo.points[node], event):.3f}")

# %% a tiny search radius nobody can enter ends in a loop stop
out = gfgf2_route(source, event, 0.01, topo)
print(f"\nsr=0.01: {out.steps} hops, stop={out.stop_reason}")
