"""
Degeneration profiles of spanning surfaces
"""

from .profile import (
    DegenerationType,
    DegenerationProfile,
    LRGeometry,
    SECTION_TABLES,
    check_zero_infty_matching,
    lr_geometry,
    path_to_yoshida,
    section_contributions,
)
from .spheres import (
    SphereCounts,
    SphereVertexReport,
    add_spheres,
    balance_point,
    chain_sphere_counts,
    find_sphere_vertices,
    lr_chains,
    sphere_rows,
    two_weight_counts,
)
from .orientability import is_orientable, orientability_and_double

__all__ = [
    'DegenerationType', 'DegenerationProfile', 'LRGeometry', 'SECTION_TABLES',
    'check_zero_infty_matching', 'lr_geometry', 'path_to_yoshida', 'section_contributions',
    'SphereCounts', 'SphereVertexReport', 'add_spheres', 'balance_point',
    'chain_sphere_counts', 'find_sphere_vertices', 'lr_chains', 'sphere_rows',
    'two_weight_counts', 'is_orientable', 'orientability_and_double',
]
