"""Deploy 100 robots, planarize their radio graph and look at what survives.

Run: python demos/01_deployment_and_gabriel_graph.py
"""
import itertools

from wsrn.geometry import segments_properly_intersect
from wsrn.topology import Hole, generate_topology, udg_adjacency

# %% a connected deployment, redrawn from the same stream until it connects
topo = generate_topology(100, 0.25, rng_seed=0)
udg = udg_adjacency(topo.points, topo.r)
udg_edges = sum(map(len, udg)) // 2
print(f"unit disk edges {udg_edges}, Gabriel edges {topo.edge_count}")
print(f"mean degree {2 * udg_edges / topo.n:.2f} -> {2 * topo.edge_count / topo.n:.2f}")

# %% planarity, checked the slow way
pts = topo.points
crossings = sum(segments_properly_intersect(pts[a], pts[b], pts[c], pts[d])
                for (a, b), (c, d) in itertools.combinations(sorted(topo.edges()), 2))
print("crossing edge pairs:", crossings)

# %% the hole variant keeps the middle of the square empty
holey = generate_topology(100, 0.2, hole=Hole(), rng_seed=0)
print("robots inside the hole:", sum(Hole().contains(p) for p in holey.points))

# %% moving a robot only touches the edges near its old and new spot
before = topo.edges()
topo.update_after_move(17, (0.9, 0.1))
after = topo.edges()
print(f"move changed {len(before ^ after)} edges, still connected: {not topo.disconnected}")
