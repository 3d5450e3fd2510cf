"""Movement energy model for mobile robots.

Energy drained by driving ``d`` meters at constant speed ``v``::

    loss = 6.25 * v * d + 9.79 * d + 3.66 * d / v

Unit-square coordinates are converted to meters with
``EnergyParams.coordinate_scale`` before they reach this model.
"""

from __future__ import annotations

from dataclasses import dataclass


class InsufficientEnergy(ValueError):
    """A robot was asked to perform a task it cannot afford."""


@dataclass(frozen=True)
class EnergyParams:
    speed: float = 0.76              # m/s
    coordinate_scale: float = 10.0   # meters per unit-square unit
    initial_energy: float = 100.0    # J; 1 J == 1 % with the default

    def __post_init__(self):
        if self.speed <= 0 or self.coordinate_scale <= 0 or self.initial_energy <= 0:
            raise ValueError("energy parameters must be positive")

    def to_meters(self, unit_distance: float) -> float:
        return unit_distance * self.coordinate_scale


DEFAULT_ENERGY = EnergyParams()


def energy_loss(d: float, params: EnergyParams = DEFAULT_ENERGY) -> float:
    """Joules needed to travel ``d`` meters."""
    if d < 0:
        raise ValueError("distance must be non-negative")
    v = params.speed
    return 6.25 * v * d + 9.79 * d + 3.66 * d / v


def can_afford(robot_energy: float, d: float, params: EnergyParams = DEFAULT_ENERGY) -> bool:
    return robot_energy >= energy_loss(d, params)


def remaining_after(robot_energy: float, d: float, params: EnergyParams = DEFAULT_ENERGY) -> float:
    """Energy left after a hypothetical trip of ``d`` meters (may be negative)."""
    return robot_energy - energy_loss(d, params)


def consume(robot, d: float, params: EnergyParams = DEFAULT_ENERGY):
    """Charge ``robot`` for a trip of ``d`` meters and count the reaction.

    Mutates and returns ``robot``.
    """
    if not can_afford(robot.energy, d, params):
        raise InsufficientEnergy(
            f"robot {robot.id} has {robot.energy:.6g} J, trip of {d:.6g} m needs "
            f"{energy_loss(d, params):.6g} J")
    robot.energy -= energy_loss(d, params)
    robot.traveled += d
    robot.reactions += 1
    return robot


def percent_remaining(energy: float, params: EnergyParams = DEFAULT_ENERGY) -> float:
    return 100.0 * energy / params.initial_energy
