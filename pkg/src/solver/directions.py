"""
Direction-variable solver

Values are found by a fixed sweep, in the order the sections depend on
each other:

    1. angle chains by the cosine closed form
    2. single-unknown propagation through the semi-meridian
       measurements, the vertex equations and the sphere equations; this
       gives s = y_1 = ... = y_n = -1/v (or -1) along LL sections, the
       RR analogues and the square roots at RL hinges
    3. LR sections from their phi and psi by the five closed forms,
       followed by another propagation round, until every section is
       placed

Square roots record their branch; a forced zero or a residual failure
flips the recorded branches one at a time.
"""

import cmath
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..core.exceptions import NoConvergence, ResidualTooLarge, UnknownCase, UnsolvedVariable, ZeroDirection
from ..farey.paths import EdgePath
from ..surfaces.profile import DegenerationProfile, LRGeometry
from ..surfaces.spheres import lr_chains
from ..tilde.system import ANGLE, DIRECTION, TildeSystem
from ..triangulation.layered import Triangulation
from .angle_chains import chain_seed, detect_angle_chains
from .base import IdealPointSolution, IdealSolver
from .equations import LinearEquation, bar_equations, max_residual, measurement_equations, newton

ZERO = 1e-10

MIDDLE_CASES = ('equal', 'top_adjacent', 'bottom_adjacent')


@dataclass(frozen=True)
class LRContext:
    """An LR section with the weights accumulated above and below it"""
    section: int
    geometry: LRGeometry
    alpha: int
    beta: int

    @property
    def case(self) -> str:
        return sphere_case(self.alpha, self.beta)


def lr_contexts(path: EdgePath, base_profile: DegenerationProfile) -> List[LRContext]:
    """Effective weights of every LR section, from the profile before spheres"""
    contexts = []
    for chain in lr_chains(path, base_profile):
        for j, (section, geometry) in enumerate(zip(chain.sections, chain.geometries), start=1):
            contexts.append(LRContext(
                section=section,
                geometry=geometry,
                alpha=sum(chain.weights[:j]),
                beta=sum(chain.weights[j:]),
            ))
    return contexts


def sphere_case(alpha: int, beta: int) -> str:
    if alpha + 1 < beta:
        return 'top'
    if alpha > beta + 1:
        return 'bottom'
    if alpha == beta:
        return 'equal'
    if alpha + 1 == beta:
        return 'top_adjacent'
    return 'bottom_adjacent'


def sphere_case_values(
    case: str,
    phi: Optional[complex],
    psi: Optional[complex],
    branch: int = 0,
) -> Dict[str, complex]:
    """
    Closed-form values around one LR section

    Roles run down the section: a (top 1-tet), b (infinity tets),
    c (hinge), d (zero tets), a_check (bottom 1-tet). The top case is
    worked in from above and needs only phi; the bottom case needs only
    psi and leaves a to the section above; the three middle cases take
    a square root of psi / phi.

    Args:
        case: Result of sphere_case
        phi: Context product above the section
        psi: Context product below the section
        branch: 0 for the principal square root, 1 for its negative

    Returns:
        Values for the roles the case determines
    """
    if case == 'top':
        return {'a': 2 / phi, 'b': -4 / phi, 'c': -2 / phi, 'd': 1 / phi}
    if case == 'bottom':
        return {'a_check': -2 * psi, 'd': 4 * psi, 'c': 2 * psi, 'b': -psi}
    if case not in MIDDLE_CASES:
        raise UnknownCase(f"Unknown sphere case: {case}")
    root = (-1 if branch else 1) * cmath.sqrt(psi / phi)
    if case == 'equal':
        return {'c': root, 'a': -root, 'a_check': -root, 'b': -psi, 'd': 1 / phi}
    if case == 'top_adjacent':
        a = 2 / phi + root
        return {'a_check': root, 'd': 1 / phi, 'a': a, 'c': -a, 'b': -a * a * phi}
    a_check = root - 2 * psi
    return {'a': root, 'b': -psi, 'c': -root + 2 * psi, 'a_check': a_check, 'd': a_check ** 2 / psi}


def role_tets(geometry: LRGeometry) -> Dict[str, int]:
    roles = {'a': geometry.top, 'c': geometry.hinge, 'a_check': geometry.bottom}
    if geometry.infinity_chain:
        roles['b'] = geometry.infinity_chain[-1]
    if geometry.zero_chain:
        roles['d'] = geometry.zero_chain[-1]
    return roles


def role_members(geometry: LRGeometry) -> Dict[str, Tuple[int, ...]]:
    """Every tetrahedron taking a role's value; b and d are constant along their chains"""
    return {
        'a': (geometry.top,),
        'b': tuple(geometry.infinity_chain),
        'c': (geometry.hinge,),
        'd': tuple(geometry.zero_chain),
        'a_check': (geometry.bottom,),
    }


def _powers(term_list, tets: Sequence[int]) -> Tuple[Dict[int, int], complex, List[int]]:
    """Net y-power per tet in `tets`, sign from -1/y factors, other tets involved"""
    powers = {t: 0 for t in tets}
    sign = 1 + 0j
    others = []
    for term in term_list:
        if term.coefficient == '1':
            continue
        if term.tet_id in powers:
            if term.coefficient == 'y':
                powers[term.tet_id] += term.power
            elif term.coefficient == '-1/y':
                powers[term.tet_id] -= term.power
                sign *= (-1) ** term.power
            else:
                return powers, sign, [term.tet_id]
        else:
            others.append(term.tet_id)
    return powers, sign, others


def compute_phi_psi(
    system: TildeSystem,
    values: Dict[int, complex],
    geometry: LRGeometry,
    side: str = 'top',
) -> complex:
    """
    Context product phi (above) or psi (below) an LR section

    phi = -b / a^2 and psi = a_check^2 / d, read off the bar equation
    that links the pair with powers (2, -1); every other factor in that
    equation must already be known.

    Raises:
        UnknownCase: No equation links the pair with known neighbours
    """
    roles = role_tets(geometry)
    if side == 'top':
        pair = (roles['a'], roles.get('b'))
    elif side == 'bottom':
        pair = (roles['a_check'], roles.get('d'))
    else:
        raise ValueError(f"Unknown side: {side}")
    if pair[1] is None or pair[0] == pair[1]:
        raise UnknownCase(f"LR at hinge {geometry.hinge} has no {side} pair")

    for equation in system.regular_equations:
        terms = equation.terms
        powers, sign, others = _powers(terms, pair)
        if any(t not in values for t in others):
            continue
        if (powers[pair[0]], powers[pair[1]]) not in ((2, -1), (-2, 1)):
            continue
        constant = sign
        for term in terms:
            if term.tet_id not in pair and term.coefficient != '1':
                constant *= term.value(values) ** term.power
        squared_first = powers[pair[0]] == 2
        if side == 'top':
            # constant * a^2 / b = 1, or constant * b / a^2 = 1
            return -constant if squared_first else -1 / constant
        return 1 / constant if squared_first else constant

    raise UnknownCase(f"No equation fixes {'phi' if side == 'top' else 'psi'} at hinge {geometry.hinge}")


class Propagation:
    """Single-unknown propagation with recorded root branches"""

    def __init__(self, system: TildeSystem, equations: Sequence, branches: Dict[str, int], default_branch: int = 0):
        self.system = system
        self.equations = list(equations)
        self.branches = branches
        self.default_branch = default_branch
        self.choices: List[Tuple[str, int]] = []
        self.root_orders: Dict[str, int] = {}

    def choose(self, site: str, order: int) -> int:
        """Branch taken at a root site, recorded for flipping"""
        branch = self.branches.get(site, self.default_branch) % order
        self.choices.append((site, branch))
        self.root_orders[site] = order
        return branch

    def _candidate(self, eq, known):
        unknown = [t for t in eq.tets() if t not in known]
        if len(unknown) != 1 or self.system.variable(unknown[0]).kind != DIRECTION:
            return None
        tet = unknown[0]

        if isinstance(eq, LinearEquation):
            coef = sum(c for t, c in eq.terms if t == tet)
            if coef == 0:
                return None
            rest = sum(c * known[t] for t, c in eq.terms if t != tet)
            return 3, tet, ('linear', -rest / coef)

        powers, sign, _ = _powers(eq.terms, [tet])
        power = powers[tet]
        if power == 0:
            return None
        constant = sign
        for term in eq.terms:
            if term.tet_id != tet and term.coefficient != '1':
                constant *= term.value(known) ** term.power
        if constant == 0:
            raise ZeroDirection(f"{eq.name}: known factors vanish", stage='solver')
        rhs = eq.target / constant
        if abs(power) == 1:
            rank = 0 if eq.name.startswith('mu') else 1
            return rank, tet, ('monomial', rhs ** power)
        return 2, tet, ('root', rhs, power, eq.name)

    def _root(self, rhs: complex, power: int, site: str) -> complex:
        order = abs(power)
        if power < 0:
            rhs = 1 / rhs
        branch = self.choose(site, order)
        return cmath.exp(cmath.log(rhs) / order) * cmath.exp(2j * cmath.pi * branch / order)

    def run(self, known: Dict[int, complex]) -> Dict[int, complex]:
        known = dict(known)
        while True:
            best = None
            for eq in self.equations:
                candidate = self._candidate(eq, known)
                if candidate and (best is None or candidate[0] < best[0]):
                    best = candidate
            if best is None:
                return known
            _, tet, rule = best
            if rule[0] == 'root':
                value = self._root(rule[1], rule[2], f"{rule[3]}:y{tet}")
            else:
                value = rule[1]
            if abs(value) < ZERO:
                raise ZeroDirection(f"y{tet} forced to 0 by {rule[0]} rule", stage='solver')
            known[tet] = complex(value)


def valid_values(system: TildeSystem, values: Dict[int, complex]) -> bool:
    """Finite, directions off 0, angles off 0 and 1"""
    for var in system.variables:
        v = values[var.tet_id]
        if not np.isfinite(v):
            return False
        if var.kind == DIRECTION and abs(v) < 1e-8:
            return False
        if var.kind == ANGLE and (abs(v) < 1e-8 or abs(v - 1) < 1e-8):
            return False
    return True


def make_solution(system: TildeSystem, values, choices, method: str, equations) -> IdealPointSolution:
    """
    Raises:
        UnsolvedVariable: Some variable has no value
    """
    missing = [v.name for v in system.variables if v.tet_id not in values]
    if missing:
        raise UnsolvedVariable(f"Not determined: {', '.join(missing)}", stage='solver')
    values = {tet: complex(v) for tet, v in sorted(values.items())}
    return IdealPointSolution(
        values=values,
        mu=system.mu_reference.value(values),
        sign_choices=list(choices),
        residual=max_residual(equations, values),
        method=method,
    )


class ClosedFormSolver(IdealSolver):
    """
    Section-by-section sweep with branch back-tracking

    No numerical iteration is involved: every value comes from a closed
    form or a single-unknown equation.
    """

    def __init__(self, config: Dict = None, logger=None):
        super().__init__(config)
        self.logger = logger
        self.angle_values: Optional[Dict[int, complex]] = None

    def _log(self, level: str, message: str, **fields):
        if self.logger is not None:
            getattr(self.logger, level)(message, **fields)

    def _default_branch(self) -> int:
        return 1 if self.branch_policy == 'alternate' else 0

    def _angles(self, system: TildeSystem) -> Dict[int, complex]:
        if self.angle_values is not None:
            return dict(self.angle_values)
        return chain_seed(detect_angle_chains(system))

    def _section_values(self, system, known, context: LRContext, propagation: Propagation):
        """Closed-form role values of one LR section, or None while phi or psi is out of reach"""
        case = context.case
        geometry = context.geometry
        try:
            phi = compute_phi_psi(system, known, geometry, 'top') if case != 'bottom' else None
            psi = compute_phi_psi(system, known, geometry, 'bottom') if case != 'top' else None
        except UnknownCase:
            return None
        if phi == 0 or psi == 0:
            raise ZeroDirection(f"Context product vanishes at hinge {geometry.hinge}", stage='solver')
        branch = propagation.choose(f"lr{geometry.hinge}", 2) if case in MIDDLE_CASES else 0
        return sphere_case_values(case, phi, psi, branch)

    def _sweep(self, system, propagation: Propagation, angles, contexts) -> Dict[int, complex]:
        """
        Raises:
            UnknownCase: An LR section whose phi or psi no rule reaches
            ZeroDirection: A value is forced to zero
        """
        known = propagation.run(angles)
        pending = []
        for context in contexts:
            roles = role_tets(context.geometry)
            # sections folded onto themselves are left to propagation
            if len(set(roles.values())) == len(roles):
                pending.append(context)

        while pending:
            progress = False
            for context in list(pending):
                members = role_members(context.geometry)
                if all(t in known for tets in members.values() for t in tets):
                    pending.remove(context)
                    progress = True
                    continue
                values = self._section_values(system, known, context, propagation)
                if values is None:
                    continue
                for role, value in values.items():
                    if abs(value) < ZERO:
                        raise ZeroDirection(
                            f"Role {role} of the LR section at hinge {context.geometry.hinge} is 0",
                            stage='solver',
                        )
                    for tet in members[role]:
                        if tet not in known and system.variable(tet).kind == DIRECTION:
                            known[tet] = complex(value)
                pending.remove(context)
                progress = True
                known = propagation.run(known)
            if not progress:
                break

        if pending:
            hinges = ', '.join(str(c.geometry.hinge) for c in pending)
            raise UnknownCase(f"No phi/psi rule reaches the LR sections at hinges {hinges}", stage='solver')
        return known

    def solve(
        self,
        system: TildeSystem,
        tri: Triangulation,
        lr_contexts: Sequence = (),
        branches: Optional[Dict[str, int]] = None,
    ) -> IdealPointSolution:
        """
        Sweep the sections, flipping root branches on failure

        Raises:
            UnknownCase: An angle chain or LR neighbourhood matches no rule
            UnsolvedVariable: A variable no rule reaches
            ZeroDirection: Every branch forces a zero
            ResidualTooLarge: Every branch leaves a bar residual
        """
        equations = bar_equations(system)
        sweep = equations + measurement_equations(system, tri)
        angles = self._angles(system)
        queue = [dict(branches or {})]
        tried: List[Dict[str, int]] = []
        last_error = None

        while queue and len(tried) <= self.max_branch_flips:
            forced = queue.pop(0)
            tried.append(forced)
            propagation = Propagation(system, sweep, forced, self._default_branch())
            try:
                values = self._sweep(system, propagation, angles, lr_contexts)
                solution = make_solution(system, values, propagation.choices, 'closed_form', equations)
                if solution.residual < self.tolerance and valid_values(system, solution.values):
                    return solution
                last_error = ResidualTooLarge(
                    f"Sweep left a bar residual of {solution.residual:.3e}", stage='solver'
                )
            except ZeroDirection as e:
                last_error = e
            self._log('warning', "Sweep failed, flipping a root branch", reason=str(last_error))
            for site, order in propagation.root_orders.items():
                if site in forced:
                    continue
                flipped = dict(forced, **{site: (self._default_branch() + 1) % order})
                if flipped not in tried and flipped not in queue:
                    queue.append(flipped)

        raise last_error


class NewtonSolver(IdealSolver):
    """Damped Newton on the bar system from seeded random starts"""

    def __init__(self, config: Dict = None, logger=None):
        super().__init__(config)
        self.logger = logger

    def _start(self, system: TildeSystem, keep: Dict[int, complex], rng) -> Dict[int, complex]:
        values = dict(keep)
        for var in system.variables:
            if var.tet_id in values:
                continue
            if var.kind == ANGLE:
                values[var.tet_id] = complex(0.5 + rng.normal(scale=0.1), 0.8 + rng.normal(scale=0.1))
            else:
                values[var.tet_id] = complex(rng.normal(), rng.normal())
        return values

    def solve(
        self,
        system: TildeSystem,
        tri: Triangulation,
        lr_contexts: Sequence = (),
        branches: Optional[Dict[str, int]] = None,
    ) -> IdealPointSolution:
        """
        Even restarts keep the closed-form angle chains, odd ones are fully random

        Raises:
            NoConvergence: No restart reached a valid solution
        """
        equations = bar_equations(system)
        rng = np.random.default_rng(self.random_seed)
        try:
            chains = chain_seed(detect_angle_chains(system))
        except UnknownCase:
            chains = {}
        best = float('inf')
        for restart in range(self.restarts):
            start = self._start(system, chains if restart % 2 == 0 else {}, rng)
            values, residual, _ = newton(
                equations, start, list(range(system.size)), self.tolerance * 1e-3, self.max_iterations
            )
            best = min(best, residual)
            if residual < self.tolerance and valid_values(system, values):
                if self.logger is not None:
                    self.logger.info("Solved from a random start", restart=restart, stage='solver')
                return make_solution(system, values, [], 'random_seed+newton', equations)
        raise NoConvergence(
            f"No valid solution of the bar system (best residual {best:.3e})", stage='solver'
        )


def solve_directions(
    system: TildeSystem,
    tri: Triangulation,
    angle_values: Optional[Dict[int, complex]] = None,
    config: Dict = None,
    lr_contexts: Sequence = (),
) -> IdealPointSolution:
    """
    Solve the direction variables given angle values

    Args:
        system: Tilde system
        tri: Triangulation
        angle_values: Angle values to start from (closed-form chains when None)
        config: Solver configuration
        lr_contexts: LR sections with effective weights

    Returns:
        IdealPointSolution
    """
    solver = ClosedFormSolver(config)
    solver.angle_values = angle_values
    return solver.solve(system, tri, lr_contexts)
