"""
Leading-order equation systems at an ideal point
"""

from .system import (
    ANGLE,
    DIRECTION,
    LeadingTerm,
    MuMeasurement,
    RegularEquation,
    SphereEquation,
    TildeSystem,
    TildeVariable,
    build_tilde_system,
    evaluate_bar_residual,
    leading_term,
    mu_measurement,
    mu_measurements,
)
from .dump import dump_tilde_system

__all__ = [
    'ANGLE', 'DIRECTION', 'LeadingTerm', 'MuMeasurement', 'RegularEquation',
    'SphereEquation', 'TildeSystem', 'TildeVariable', 'build_tilde_system',
    'evaluate_bar_residual', 'leading_term', 'mu_measurement', 'mu_measurements',
    'dump_tilde_system',
]
