"""
Numerical continuation towards the ideal point
"""

from .shapes import TetState, reconstruct_shapes, shapes_of
from .refine import HolonomyConstraint, RefineResult, gluing_residual, newton_refine
from .trace import (
    ContinuationStep,
    ContinuationTrace,
    DEFAULT_SCHEDULE,
    check_rates,
    fit_rates,
    run_continuation,
    zeta_schedule,
)
from .peripheral import PeripheralOrders, curve_order, order_zero_class, peripheral_orders

__all__ = [
    'TetState', 'reconstruct_shapes', 'shapes_of', 'HolonomyConstraint',
    'RefineResult', 'gluing_residual', 'newton_refine', 'ContinuationStep',
    'ContinuationTrace', 'DEFAULT_SCHEDULE', 'check_rates', 'fit_rates', 'run_continuation',
    'zeta_schedule', 'PeripheralOrders', 'curve_order', 'order_zero_class',
    'peripheral_orders',
]
