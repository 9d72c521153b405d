"""
Shapes near the ideal point, stored as (carrying slot, log value)

The carrying slot of a degenerating tetrahedron is the slot that tends
to 0; its value Z = zeta^k * y is kept as log Z so that the other two
slots, (Z - 1)/Z and 1/(1 - Z), never lose precision.
"""

import cmath
import math
from dataclasses import dataclass
from typing import Dict, Mapping

import numpy as np

from ..solver.base import IdealPointSolution
from ..surfaces.profile import DegenerationProfile


@dataclass(frozen=True)
class TetState:
    carry: int
    log_value: complex

    @property
    def value(self) -> complex:
        return cmath.exp(self.log_value)

    def relative(self, slot: int) -> int:
        return (slot - self.carry) % 3

    def slot_value(self, slot: int) -> complex:
        Z = self.value
        rel = self.relative(slot)
        if rel == 0:
            return Z
        if rel == 1:
            return (Z - 1) / Z
        return 1 / (1 - Z)

    def log_slot(self, slot: int) -> complex:
        """Some logarithm of a slot value; callers wrap sums"""
        rel = self.relative(slot)
        if rel == 0:
            return self.log_value
        one_minus = complex(np.log1p(-self.value))
        if rel == 1:
            return one_minus + 1j * math.pi - self.log_value
        return -one_minus

    def dlog_slot(self, slot: int) -> complex:
        """d log(slot value) / d log Z"""
        Z = self.value
        rel = self.relative(slot)
        if rel == 0:
            return 1 + 0j
        if rel == 1:
            return 1 / (Z - 1)
        return Z / (1 - Z)

    @property
    def shape(self) -> complex:
        """Slot-0 shape z"""
        return self.slot_value(0) if self.carry == 0 else self._shape_from_carry()

    def _shape_from_carry(self) -> complex:
        Z = self.value
        if self.carry == 1:
            return 1 / (1 - Z)
        return 1 - 1 / Z

    def rescaled(self, rate: int, log_ratio: float) -> 'TetState':
        return TetState(self.carry, self.log_value + rate * log_ratio)


def reconstruct_shapes(
    solution: IdealPointSolution,
    profile: DegenerationProfile,
    zeta: float,
) -> Dict[int, TetState]:
    """
    Shapes at a small positive zeta from the zeta = 0 values

    Args:
        solution: Ideal-point solution
        profile: Profile the solution belongs to
        zeta: Parameter in (0, 1)

    Returns:
        TetState per tetrahedron: Z = zeta^k * y in the slot tending to 0,
        the angle value in slot 0 for non-degenerate tetrahedra
    """
    if not 0 < zeta < 1:
        raise ValueError(f"zeta must lie in (0, 1), got {zeta}")
    log_zeta = math.log(zeta)
    states = {}
    for tet in range(profile.size):
        value = complex(solution.values[tet])
        if profile.is_degenerate(tet):
            carry = profile.types[tet].zero_slot
            states[tet] = TetState(carry, profile.rates[tet] * log_zeta + cmath.log(value))
        else:
            states[tet] = TetState(0, cmath.log(value))
    return states


def shapes_of(states: Mapping[int, TetState]) -> Dict[int, complex]:
    return {tet: state.shape for tet, state in sorted(states.items())}
