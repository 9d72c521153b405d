"""
Solutions of the bar equations at an ideal point
"""

from .base import IdealSolver, IdealPointSolution
from .angle_chains import (
    AngleChain,
    chain_recursion_residual,
    detect_angle_chains,
    solve_angle_chain,
)
from .directions import (
    ClosedFormSolver,
    LRContext,
    NewtonSolver,
    compute_phi_psi,
    lr_contexts,
    solve_directions,
    sphere_case,
    sphere_case_values,
)
from .verify import VerificationReport, verify_solution

__all__ = [
    'IdealSolver', 'IdealPointSolution', 'AngleChain', 'chain_recursion_residual',
    'detect_angle_chains', 'solve_angle_chain', 'ClosedFormSolver', 'LRContext',
    'NewtonSolver', 'compute_phi_psi', 'lr_contexts', 'solve_directions',
    'sphere_case', 'sphere_case_values', 'VerificationReport', 'verify_solution',
]
