"""How likely is it that some robot sits within R of a point?

The closed form assumes the worst spot, a corner, where only a quarter of
the disk lies inside the square; the simulation draws real deployments.

Run: python demos/06_connectivity_bound.py
"""
from wsrn.analysis import binomial_sigma, monte_carlo_p, p_lower_bound

print(f"{'R':>4s} {'bound':>8s} {'empirical':>10s} {'sigma':>8s}")
for R in (0.05, 0.1, 0.2, 0.3, 0.4):
    emp = monte_carlo_p(100, R, 10_000, seed=0)
    print(f"{R:4.2f} {p_lower_bound(100, R):8.4f} {emp:10.4f} {binomial_sigma(emp, 10_000):8.4f}")
