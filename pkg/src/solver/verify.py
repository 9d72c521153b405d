"""
Re-check an ideal-point solution
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from ..core.exceptions import DegenerateValue, ResidualTooLarge, TorusSurfacesError
from ..tilde.system import ANGLE, DIRECTION, TildeSystem, evaluate_bar_residual, mu_measurements
from .base import IdealPointSolution, IdealSolver
from .equations import bar_equations, jacobian_rank, newton


@dataclass
class VerificationReport:
    residual: float
    mu: complex
    jacobian_rank: int
    unknowns: int
    smallest_singular_value: float
    alternates: List[Dict[str, any]] = field(default_factory=list)
    isolated: bool = True
    level_residual: Optional[float] = None
    newton_distance: Optional[float] = None

    def to_dict(self) -> Dict[str, any]:
        return {
            'residual': self.residual,
            'mu': {'re': self.mu.real, 'im': self.mu.imag},
            'jacobian_rank': self.jacobian_rank,
            'unknowns': self.unknowns,
            'smallest_singular_value': self.smallest_singular_value,
            'alternates': self.alternates,
            'isolated': self.isolated,
            'level_residual': self.level_residual,
            'newton_distance': self.newton_distance,
        }


def _distance(a: Dict[int, complex], b: Dict[int, complex]) -> float:
    return max(abs(a[t] - b[t]) for t in a) if a else 0.0


def check_values(system: TildeSystem, values: Dict[int, complex]):
    """
    Raises:
        DegenerateValue: A direction variable vanishes or an angle sits on 0 or 1
    """
    for var in system.variables:
        value = values.get(var.tet_id)
        if value is None:
            raise DegenerateValue(f"{var.name} has no value", stage='verify')
        if value != value or abs(value) == float('inf'):
            raise DegenerateValue(f"{var.name} is not finite", stage='verify')
        if var.kind == DIRECTION and abs(value) < 1e-8:
            raise DegenerateValue(f"Direction {var.name} is zero", stage='verify')
        if var.kind == ANGLE and (abs(value) < 1e-8 or abs(value - 1) < 1e-8):
            raise DegenerateValue(f"Angle {var.name} = {value} is degenerate", stage='verify')


def verify_solution(
    system: TildeSystem,
    solution: IdealPointSolution,
    tolerance: float = 1e-10,
    isolation_distance: float = 1e-6,
    solver: Optional[IdealSolver] = None,
    tri=None,
    lr_contexts: Sequence = (),
) -> VerificationReport:
    """
    Check residuals, non-degeneracy and local isolation of a solution

    newton_distance records how far damped Newton, started a relative
    1e-6 away, lands from the solution; it stays None when Newton does
    not get back below tolerance.

    Args:
        system: Tilde system
        solution: Solution to check
        tolerance: Largest accepted bar residual
        isolation_distance: Alternate solutions must be at least this far
        solver: When given, every recorded root branch is flipped and re-solved
        tri: Triangulation; needed with solver, and for the level residual
        lr_contexts: Passed to the solver

    Returns:
        VerificationReport

    Raises:
        ResidualTooLarge: Bar residual above tolerance
        DegenerateValue: A value is zero, infinite or on {0, 1}
    """
    check_values(system, solution.values)
    residual = evaluate_bar_residual(system, solution.values)
    if residual >= tolerance:
        raise ResidualTooLarge(
            f"Bar residual {residual:.3e} exceeds {tolerance:.1e}", stage='verify'
        )

    equations = bar_equations(system)
    unknowns = list(range(system.size))
    rank, smallest = jacobian_rank(equations, solution.values, unknowns)
    report = VerificationReport(
        residual=residual,
        mu=system.mu_reference.value(solution.values),
        jacobian_rank=rank,
        unknowns=len(unknowns),
        smallest_singular_value=smallest,
        isolated=rank == len(unknowns),
    )

    # Newton from a nearby start must come back to the closed form
    start = {tet: value * (1 + 1e-6) for tet, value in solution.values.items()}
    polished, polished_residual, _ = newton(equations, start, unknowns, tolerance * 1e-3, 60)
    if polished_residual < tolerance:
        report.newton_distance = _distance(solution.values, polished)

    if tri is not None:
        # semi-meridians under other levels are homotopic to the reference one
        report.level_residual = max(
            m.residual(solution.values) for m in mu_measurements(system, tri)
        )

    if solver is None or tri is None:
        return report

    for site, branch in solution.sign_choices:
        entry = {'site': site, 'branch': 1 - branch}
        try:
            other = solver.solve(system, tri, lr_contexts, branches={site: 1 - branch})
            distance = _distance(solution.values, other.values)
            entry.update({'status': 'solved', 'distance': distance})
            if distance <= isolation_distance and other.sign_choices != solution.sign_choices:
                report.isolated = False
        except TorusSurfacesError as e:
            entry.update({'status': 'failed', 'reason': type(e).__name__})
        report.alternates.append(entry)
    return report
