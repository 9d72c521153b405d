"""
Layered triangulations and their cusp pictures
"""

from .layered import (
    Tetrahedron,
    EdgeClass,
    GluingEquation,
    Triangulation,
    build_triangulation,
    gluing_equations,
    slot_value,
)
from .cusp import (
    BoundaryCurve,
    CornerStep,
    CuspTriangulation,
    holonomy,
    reference_level,
    semi_meridian_curve,
)

__all__ = [
    'Tetrahedron', 'EdgeClass', 'GluingEquation', 'Triangulation',
    'build_triangulation', 'gluing_equations', 'slot_value',
    'BoundaryCurve', 'CornerStep', 'CuspTriangulation', 'holonomy',
    'reference_level', 'semi_meridian_curve',
]
