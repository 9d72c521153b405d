"""
Leading zeta-orders of peripheral holonomies
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, Tuple

from ..surfaces.profile import DegenerationProfile
from ..triangulation.cusp import BoundaryCurve, reference_level
from ..triangulation.layered import Triangulation


def curve_order(profile: DegenerationProfile, curve: BoundaryCurve) -> int:
    """Signed sum of corner orders along a curve"""
    return sum(step.turn * profile.slot_order(step.tet, step.slot) for step in curve.corner_steps)


@dataclass(frozen=True)
class PeripheralOrders:
    """
    Attributes:
        semi_meridian: Order of the semi-meridian holonomy
        meridian: Twice the semi-meridian order
        vertical: Order along the vertical curve
        vertical_class: (meridian turns, periods) of the vertical curve
        fiber: Order of the curve crossing one period with no horizontal turn
        boundary_slope: Primitive (meridian, fiber) class of order 0
    """
    semi_meridian: int
    meridian: int
    vertical: int
    vertical_class: Tuple[int, int]
    fiber: Fraction
    boundary_slope: Tuple[int, int]

    def to_dict(self) -> Dict[str, any]:
        return {
            'semi_meridian': self.semi_meridian,
            'meridian': self.meridian,
            'vertical': self.vertical,
            'vertical_class': list(self.vertical_class),
            'fiber': str(self.fiber),
            'boundary_slope': list(self.boundary_slope),
        }


def order_zero_class(meridian_order: int, fiber_order: Fraction) -> Tuple[int, int]:
    """Primitive (p, q) with p * meridian_order + q * fiber_order = 0"""
    fiber_order = Fraction(fiber_order)
    p = fiber_order.numerator
    q = -meridian_order * fiber_order.denominator
    if p == 0 and q == 0:
        return (0, 0)
    g = gcd(p, q)
    p, q = p // g, q // g
    if p < 0 or (p == 0 and q < 0):
        p, q = -p, -q
    return (p, q)


def peripheral_orders(profile: DegenerationProfile, tri: Triangulation) -> PeripheralOrders:
    """
    Orders of the semi-meridian, meridian and vertical curves

    Args:
        profile: Degeneration profile
        tri: Triangulation

    Returns:
        PeripheralOrders; the order is linear on homology, so the fiber
        order is (vertical - turns * meridian) / periods
    """
    cusp = tri.boundary
    semi = curve_order(profile, cusp.semi_meridian(reference_level(tri)))
    meridian = 2 * semi
    vertical_curve = cusp.vertical_curve()
    vertical = curve_order(profile, vertical_curve)
    turns, periods = vertical_curve.homology_class
    fiber = Fraction(vertical - turns * meridian, periods)
    return PeripheralOrders(
        semi_meridian=semi,
        meridian=meridian,
        vertical=vertical,
        vertical_class=(turns, periods),
        fiber=fiber,
        boundary_slope=order_zero_class(meridian, fiber),
    )
