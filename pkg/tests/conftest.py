from __future__ import annotations

import pytest
from hypothesis import settings

from wsrn.energy import DEFAULT_ENERGY
from wsrn.geometry import Point
from wsrn.topology import Robot, Topology

# same examples on every run, so the suite output is reproducible
settings.register_profile("repro", derandomize=True, deadline=None)
settings.load_profile("repro")


def make_topology(coords, r=0.25, energies=None, hole=None) -> Topology:
    """Topology over hand-placed robots, ids in list order."""
    energies = energies or [DEFAULT_ENERGY.initial_energy] * len(coords)
    robots = [Robot(i, Point(*c), e) for i, (c, e) in enumerate(zip(coords, energies))]
    return Topology(robots, r, hole)


@pytest.fixture
def topo_factory():
    return make_topology


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
