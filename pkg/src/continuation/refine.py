"""
Newton refinement of the true gluing equations
"""

import math
from dataclasses import dataclass
from typing import Dict, List, Optional

import numpy as np

from ..core.exceptions import DegenerationCollision, NoConvergence
from ..surfaces.profile import DegenerationProfile
from ..triangulation.cusp import BoundaryCurve
from ..triangulation.layered import Triangulation
from .shapes import TetState


@dataclass(frozen=True)
class HolonomyConstraint:
    """log(holonomy of curve) = log_target, up to 2 pi i"""
    curve: BoundaryCurve
    log_target: complex


@dataclass
class RefineResult:
    states: Dict[int, TetState]
    residual: float
    iterations: int


def _wrap(value: complex) -> complex:
    imag = (value.imag + math.pi) % (2 * math.pi) - math.pi
    return complex(value.real, imag)


def curve_log(states: Dict[int, TetState], curve: BoundaryCurve) -> complex:
    return sum(step.turn * states[step.tet].log_slot(step.slot) for step in curve.corner_steps)


def _system(tri: Triangulation, states: Dict[int, TetState], constraint: HolonomyConstraint):
    n = tri.size
    F = np.zeros(n, dtype=complex)
    J = np.zeros((n, n), dtype=complex)
    for row, edge in enumerate(tri.edges[:-1]):
        total = 0j
        for tet, slot, exp in edge.incidences:
            total += exp * states[tet].log_slot(slot)
            J[row, tet] += exp * states[tet].dlog_slot(slot)
        F[row] = _wrap(total)
    total = curve_log(states, constraint.curve) - constraint.log_target
    for step in constraint.curve.corner_steps:
        J[n - 1, step.tet] += step.turn * states[step.tet].dlog_slot(step.slot)
    F[n - 1] = _wrap(total)
    return F, J


def gluing_residual(tri: Triangulation, states: Dict[int, TetState], constraint: Optional[HolonomyConstraint] = None) -> float:
    """max |exp(S) - 1| over every gluing equation (and the constraint); inf off the float range"""
    totals = []
    try:
        for edge in tri.edges:
            totals.append(sum(exp * states[tet].log_slot(slot) for tet, slot, exp in edge.incidences))
        if constraint is not None:
            totals.append(curve_log(states, constraint.curve) - constraint.log_target)
    except (ZeroDivisionError, OverflowError, ValueError):
        return float('inf')
    worst = np.max(np.abs(np.exp([_wrap(total) for total in totals]) - 1))
    return float(worst) if np.isfinite(worst) else float('inf')


def check_collisions(states: Dict[int, TetState], profile: Optional[DegenerationProfile], radius: float):
    """
    Raises:
        DegenerationCollision: A shape approaches a point it must avoid
    """
    for tet, state in states.items():
        degenerate = profile is not None and profile.is_degenerate(tet)
        if degenerate:
            if abs(state.value - 1) < radius:
                raise DegenerationCollision(
                    f"Tetrahedron {tet}: carried slot approaches 1", stage='continuation'
                )
            continue
        z = state.shape
        if abs(z) < radius or abs(z - 1) < radius:
            raise DegenerationCollision(
                f"Tetrahedron {tet}: shape {z:.3e} within {radius} of 0 or 1",
                stage='continuation',
            )


def newton_refine(
    tri: Triangulation,
    states: Dict[int, TetState],
    constraint: HolonomyConstraint,
    profile: Optional[DegenerationProfile] = None,
    tolerance: float = 1e-10,
    max_iterations: int = 50,
    collision_radius: float = 1e-6,
) -> RefineResult:
    """
    Solve N-1 gluing equations plus one holonomy constraint

    The last edge class is dropped from the Newton system; its residual is
    still part of the reported residual.

    Args:
        tri: Triangulation
        states: Starting shapes
        constraint: Holonomy constraint pinning the one-parameter family
        profile: Profile used for the collision check
        tolerance: Accepted residual
        max_iterations: Newton iterations
        collision_radius: Radius of the forbidden balls

    Returns:
        RefineResult

    Raises:
        NoConvergence: Residual still above tolerance after max_iterations
        DegenerationCollision: Converged shapes hit a forbidden point
    """
    states = dict(states)
    residual = gluing_residual(tri, states, constraint)
    iterations = 0
    while residual >= tolerance:
        if iterations >= max_iterations:
            raise NoConvergence(
                f"Newton stopped at residual {residual:.3e} after {iterations} iterations",
                stage='continuation',
            )
        iterations += 1
        try:
            F, J = _system(tri, states, constraint)
        except (ZeroDivisionError, OverflowError, ValueError) as e:
            raise NoConvergence(f"Newton system not evaluable: {e}", stage='continuation')
        if not (np.all(np.isfinite(F)) and np.all(np.isfinite(J))):
            raise NoConvergence(f"Non-finite Newton system at residual {residual:.3e}", stage='continuation')
        try:
            step, *_ = np.linalg.lstsq(J, -F, rcond=None)
        except np.linalg.LinAlgError as e:
            raise NoConvergence(f"Least-squares step failed: {e}", stage='continuation')

        damping = 1.0
        while True:
            trial = {
                tet: TetState(state.carry, state.log_value + damping * step[tet])
                for tet, state in states.items()
            }
            trial_residual = gluing_residual(tri, trial, constraint)
            if trial_residual < residual:
                states, residual = trial, trial_residual
                break
            damping /= 2
            if damping < 1e-6:
                raise NoConvergence(
                    f"Line search failed at residual {residual:.3e}", stage='continuation'
                )

    check_collisions(states, profile, collision_radius)
    return RefineResult(states=states, residual=residual, iterations=iterations)
