"""
Path following from a zeta = 0 solution towards the ideal point
"""

import cmath
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

from ..core.exceptions import InsufficientSteps, NoConvergence, RateMismatch, TorusSurfacesError
from ..solver.base import IdealPointSolution
from ..surfaces.profile import DegenerationProfile
from ..triangulation.cusp import reference_level
from ..triangulation.layered import Triangulation
from .peripheral import curve_order
from .refine import HolonomyConstraint, curve_log, newton_refine
from .shapes import TetState, reconstruct_shapes

DEFAULT_SCHEDULE = (1e-1, 3e-2, 1e-2, 3e-3, 1e-3, 3e-4, 1e-4)


@dataclass
class ContinuationStep:
    zeta: float
    states: Dict[int, TetState]
    residual: float
    mu: complex
    iterations: int = 0

    def abs_values(self) -> List[float]:
        return [abs(self.states[t].shape) for t in sorted(self.states)]


@dataclass
class ContinuationTrace:
    """
    Accepted steps of a continuation run

    Attributes:
        zeta_schedule: Requested parameters, decreasing
        steps: Accepted steps in order
        mu_order: Order of the semi-meridian holonomy
        fitted_rates: Slope estimate per tetrahedron (filled by fit_rates)
    """
    zeta_schedule: List[float]
    steps: List[ContinuationStep] = field(default_factory=list)
    mu_order: int = 2
    fitted_rates: Dict[int, float] = field(default_factory=dict)

    @property
    def final_residual(self) -> float:
        return self.steps[-1].residual if self.steps else float('inf')

    def to_dict(self) -> Dict[str, any]:
        return {
            'zeta_schedule': list(self.zeta_schedule),
            'steps': [
                {
                    'zeta': s.zeta,
                    'residual': s.residual,
                    'mu': {'re': s.mu.real, 'im': s.mu.imag},
                    'iterations': s.iterations,
                    'abs_values': s.abs_values(),
                }
                for s in self.steps
            ],
            'mu_order': self.mu_order,
            'fitted_rates': {str(t): r for t, r in sorted(self.fitted_rates.items())},
        }


def zeta_schedule(config: Dict) -> List[float]:
    continuation = config.get('continuation', {})
    schedule = continuation.get('zeta_schedule') or list(DEFAULT_SCHEDULE)
    zeta_min = continuation.get('zeta_min', 1e-4)
    schedule = sorted((float(z) for z in schedule if float(z) >= zeta_min * (1 - 1e-12)), reverse=True)
    if not schedule:
        raise ValueError(f"Empty zeta schedule above zeta_min = {zeta_min}")
    return schedule


def fit_rates(trace: ContinuationTrace) -> Dict[int, float]:
    """
    Least-squares slope of log|Z| against log zeta for every tetrahedron

    Z is the carried slot: the slot tending to 0 for degenerating
    tetrahedra, slot 0 otherwise. The slot tending to infinity has the
    negated slope. Only steps with zeta <= 1e-2 enter the fit when
    there are at least three of them.

    Raises:
        InsufficientSteps: Fewer than three accepted steps
    """
    if len(trace.steps) < 3:
        raise InsufficientSteps(
            f"Rate fit needs 3 accepted steps, trace has {len(trace.steps)}",
            stage='continuation',
        )
    steps = [s for s in trace.steps if s.zeta <= 1e-2]
    if len(steps) < 3:
        steps = trace.steps
    x = np.array([math.log(s.zeta) for s in steps])
    rates = {}
    for tet in sorted(trace.steps[0].states):
        y = np.array([s.states[tet].log_value.real for s in steps])
        slope, _ = np.polyfit(x, y, 1)
        rates[tet] = float(slope)
    trace.fitted_rates = rates
    return rates


def check_rates(rates: Dict[int, float], expected: Sequence[int], tolerance: float = 0.05):
    """
    Raises:
        RateMismatch: A fitted rate is further than tolerance from the profile
    """
    misses = {tet: rate for tet, rate in rates.items() if abs(rate - expected[tet]) > tolerance}
    if misses:
        detail = ', '.join(f"z{tet}: {rate:.3f} vs {expected[tet]}" for tet, rate in sorted(misses.items()))
        raise RateMismatch(f"Fitted rates differ from the profile ({detail})", stage='continuation')


def mu_value(states: Dict[int, TetState], constraint_curve, order: int, zeta: float) -> complex:
    return cmath.exp(curve_log(states, constraint_curve) - order * math.log(zeta))


def run_continuation(
    tri: Triangulation,
    profile: DegenerationProfile,
    solution: IdealPointSolution,
    config: Optional[Dict] = None,
    logger=None,
) -> ContinuationTrace:
    """
    Follow the finite solutions for decreasing zeta

    Each step is seeded from the previous refined shapes rescaled by the
    power law. When the first parameter fails the schedule starts one
    step further down; a failing later step is bisected (geometrically)
    up to three times.

    Raises:
        NoConvergence: No step of the schedule could be refined
    """
    config = config or {}
    settings = config.get('continuation', {})
    tolerance = settings.get('residual_tolerance', 1e-10)
    max_iterations = settings.get('max_iterations', 50)
    radius = settings.get('collision_radius', 1e-6)
    mu_target = complex(settings.get('mu_target', -1))

    schedule = zeta_schedule(config)
    curve = tri.boundary.semi_meridian(reference_level(tri))
    order = curve_order(profile, curve)
    trace = ContinuationTrace(zeta_schedule=list(schedule), mu_order=order)

    def refine(states, zeta):
        constraint = HolonomyConstraint(curve, cmath.log(mu_target) + order * math.log(zeta))
        return newton_refine(tri, states, constraint, profile, tolerance, max_iterations, radius)

    pending = list(schedule)
    last_error: Optional[TorusSurfacesError] = None
    while pending and not trace.steps:
        zeta = pending.pop(0)
        try:
            result = refine(reconstruct_shapes(solution, profile, zeta), zeta)
        except TorusSurfacesError as e:
            last_error = e
            if logger:
                logger.warning("Continuation start failed, moving down", zeta=zeta, reason=str(e))
            continue
        trace.steps.append(ContinuationStep(
            zeta, result.states, result.residual, mu_value(result.states, curve, order, zeta), result.iterations,
        ))

    if not trace.steps:
        raise last_error or NoConvergence("Empty continuation schedule", stage='continuation')

    bisections = 0
    while pending:
        zeta = pending[0]
        previous = trace.steps[-1]
        log_ratio = math.log(zeta) - math.log(previous.zeta)
        seed = {
            tet: state.rescaled(profile.rates[tet], log_ratio)
            for tet, state in previous.states.items()
        }
        try:
            result = refine(seed, zeta)
        except TorusSurfacesError as e:
            if bisections >= 3:
                raise
            bisections += 1
            middle = math.sqrt(zeta * previous.zeta)
            pending.insert(0, middle)
            if logger:
                logger.warning("Continuation step failed, bisecting", zeta=zeta, reason=str(e))
            continue
        pending.pop(0)
        bisections = 0
        trace.steps.append(ContinuationStep(
            zeta, result.states, result.residual, mu_value(result.states, curve, order, zeta), result.iterations,
        ))
        if logger:
            logger.debug("Continuation step", zeta=zeta, residual=result.residual)

    return trace
