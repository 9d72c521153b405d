"""
Numeric form of the bar equations: residual vector, Jacobian and a
damped Newton iteration over all tilde variables
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..core.exceptions import DivisionByZero
from ..tilde.system import LeadingTerm, TildeSystem, mu_measurements
from ..triangulation.layered import Triangulation


@dataclass(frozen=True)
class MonomialEquation:
    """product(coefficient ** power) = target"""
    name: str
    terms: Tuple[LeadingTerm, ...]
    target: complex

    def tets(self) -> List[int]:
        return sorted({t.tet_id for t in self.terms if t.coefficient != '1'})


@dataclass(frozen=True)
class LinearEquation:
    """sum(coefficient * y) = 0"""
    name: str
    terms: Tuple[Tuple[int, int], ...]

    def tets(self) -> List[int]:
        return sorted({tet for tet, _ in self.terms})


def bar_equations(system: TildeSystem, mu_target: complex = -1) -> List:
    """Reference measurement first, then regular and sphere equations"""
    equations = [MonomialEquation('mu', system.mu_reference.terms, complex(mu_target))]
    for eq in system.regular_equations:
        equations.append(MonomialEquation(f"edge{eq.edge_id}", eq.terms, 1 + 0j))
    for eq in system.sphere_equations:
        equations.append(LinearEquation(f"sphere{eq.edge_id}", eq.terms))
    return equations


def measurement_equations(system: TildeSystem, tri: Triangulation, mu_target: complex = -1) -> List[MonomialEquation]:
    """Semi-meridian measurements under every level but the reference one"""
    return [
        MonomialEquation(f"mu[{m.level}]", m.terms, complex(mu_target))
        for m in mu_measurements(system, tri)[1:]
    ]


def residual_vector(equations: Sequence, values: Dict[int, complex]) -> np.ndarray:
    out = np.zeros(len(equations), dtype=complex)
    for i, eq in enumerate(equations):
        if isinstance(eq, LinearEquation):
            out[i] = sum(coef * values[tet] for tet, coef in eq.terms)
        else:
            product = 1 + 0j
            for term in eq.terms:
                product *= term.value(values) ** term.power
            out[i] = product - eq.target
    return out


def jacobian(equations: Sequence, values: Dict[int, complex], order: Sequence[int]) -> np.ndarray:
    column = {tet: j for j, tet in enumerate(order)}
    out = np.zeros((len(equations), len(order)), dtype=complex)
    for i, eq in enumerate(equations):
        if isinstance(eq, LinearEquation):
            for tet, coef in eq.terms:
                if tet in column:
                    out[i, column[tet]] += coef
            continue
        product = 1 + 0j
        for term in eq.terms:
            product *= term.value(values) ** term.power
        for term in eq.terms:
            if term.tet_id in column and term.coefficient != '1':
                out[i, column[term.tet_id]] += product * term.power * term.dlog(values)
    return out


def max_residual(equations: Sequence, values: Dict[int, complex]) -> float:
    """Largest residual; infinite on a pole or a non-finite value"""
    try:
        if not equations:
            return 0.0
        worst = float(np.max(np.abs(residual_vector(equations, values))))
    except (DivisionByZero, ZeroDivisionError, OverflowError):
        return float('inf')
    return worst if np.isfinite(worst) else float('inf')


def newton(
    equations: Sequence,
    values: Dict[int, complex],
    unknowns: Sequence[int],
    tolerance: float,
    max_iterations: int,
) -> Tuple[Dict[int, complex], float, int]:
    """
    Damped Newton in log coordinates on the unknowns, others held fixed

    Each step solves J diag(v) dx = -F in the least-squares sense and
    updates v <- v exp(t dx), halving t until the residual drops. Trials
    with non-finite values are rejected; a failed least-squares solve
    ends the iteration with an infinite residual.

    Returns:
        (values, final residual, iterations used)
    """
    values = dict(values)
    order = list(unknowns)
    residual = max_residual(equations, values)
    for iteration in range(max_iterations):
        if residual < tolerance or not order:
            return values, residual, iteration
        try:
            F = residual_vector(equations, values)
            J = jacobian(equations, values, order) * np.array([values[t] for t in order])
        except (DivisionByZero, ZeroDivisionError, OverflowError):
            return values, float('inf'), iteration
        if not (np.all(np.isfinite(F)) and np.all(np.isfinite(J))):
            return values, float('inf'), iteration
        try:
            step, *_ = np.linalg.lstsq(J, -F, rcond=None)
        except np.linalg.LinAlgError:
            return values, float('inf'), iteration

        damping = 1.0
        while damping > 1e-4:
            with np.errstate(over='ignore', invalid='ignore'):
                factors = np.exp(damping * step)
            if np.all(np.isfinite(factors)):
                trial = dict(values)
                for j, tet in enumerate(order):
                    trial[tet] = complex(values[tet] * factors[j])
                trial_residual = max_residual(equations, trial)
                if trial_residual < residual:
                    values, residual = trial, trial_residual
                    break
            damping /= 2
        else:
            return values, residual, iteration
    return values, residual, max_iterations


def jacobian_rank(equations: Sequence, values: Dict[int, complex], unknowns: Sequence[int], threshold: float = 1e-8) -> Tuple[int, float]:
    """Numerical rank and smallest singular value"""
    J = jacobian(equations, values, list(unknowns))
    if J.size == 0:
        return 0, 0.0
    singular = np.linalg.svd(J, compute_uv=False)
    scale = max(singular[0], 1.0)
    return int(np.sum(singular > threshold * scale)), float(singular[-1])
