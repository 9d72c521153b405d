"""
Leading-order (tilde) equations of a degeneration profile

Substituting Z = zeta^k * y into the slot that tends to 0 turns every
slot value into a leading term c * zeta^order:

    ->0 slot       order  k    coefficient  y
    ->inf slot     order -k    coefficient -1/y
    ->1 slot       order  0    coefficient  1
    non-degenerate order  0    coefficient  z, (z-1)/z or 1/(1-z)

Regular vertices keep a multiplicative (bar) equation in the leading
coefficients; at sphere vertices every coefficient is 1 and the first
surviving order gives a linear equation in the direction variables.
"""

from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Tuple

from ..core.exceptions import DivisionByZero, OrderImbalance, UniqueMinimum
from ..surfaces.profile import DegenerationProfile
from ..surfaces.spheres import find_sphere_vertices, is_sphere_edge
from ..triangulation.cusp import BoundaryCurve, reference_level
from ..triangulation.layered import SLOT_EXPRESSIONS, Triangulation

ANGLE = 'angle'
DIRECTION = 'direction'


@dataclass(frozen=True)
class TildeVariable:
    tet_id: int
    kind: str
    rate: int
    degeneration_type: str

    @property
    def name(self) -> str:
        return f"{'y' if self.kind == DIRECTION else 'z'}{self.tet_id}"


@dataclass(frozen=True)
class LeadingTerm:
    """
    Leading part of one slot value raised to a power

    Attributes:
        tet_id: Tetrahedron (and variable) the term refers to
        slot: Angle slot
        power: Exponent of the slot value in the equation
        zeta_order: Order of the slot value itself
        coefficient: One of y, -1/y, 1, z, (z-1)/z, 1/(1-z)
    """
    tet_id: int
    slot: int
    power: int
    zeta_order: int
    coefficient: str

    @property
    def total_order(self) -> int:
        return self.power * self.zeta_order

    def value(self, assignment: Mapping[int, complex]) -> complex:
        """Coefficient value (not yet raised to the power)"""
        if self.coefficient == '1':
            return 1 + 0j
        v = complex(assignment[self.tet_id])
        if self.coefficient in ('y', 'z'):
            return v
        if self.coefficient == '-1/y':
            if v == 0:
                raise DivisionByZero(f"y{self.tet_id} = 0 in -1/y")
            return -1 / v
        if self.coefficient == '(z-1)/z':
            if v == 0:
                raise DivisionByZero(f"z{self.tet_id} = 0 in (z-1)/z")
            return (v - 1) / v
        if v == 1:
            raise DivisionByZero(f"z{self.tet_id} = 1 in 1/(1-z)")
        return 1 / (1 - v)

    def dlog(self, assignment: Mapping[int, complex]) -> complex:
        """d log(coefficient) / d variable"""
        v = complex(assignment[self.tet_id])
        if self.coefficient == '1':
            return 0j
        if self.coefficient in ('y', 'z'):
            return 1 / v
        if self.coefficient == '-1/y':
            return -1 / v
        if self.coefficient == '(z-1)/z':
            return 1 / (v * (v - 1))
        return 1 / (1 - v)

    def to_dict(self) -> Dict[str, any]:
        return {
            'tet': self.tet_id,
            'slot': self.slot,
            'power': self.power,
            'order': self.zeta_order,
            'coefficient': self.coefficient,
        }


def _product(terms, assignment) -> complex:
    value = 1 + 0j
    for term in terms:
        value *= term.value(assignment) ** term.power
    return value


@dataclass(frozen=True)
class RegularEquation:
    """
    Bar equation of a regular vertex: product(side_a) = product(side_b)

    side_a holds the factors of non-negative order, side_b the inverses
    of the factors of negative order (their powers are negated).
    """
    edge_id: int
    side_a: Tuple[LeadingTerm, ...]
    side_b: Tuple[LeadingTerm, ...]

    @property
    def terms(self) -> Tuple[LeadingTerm, ...]:
        return self.side_a + tuple(
            LeadingTerm(t.tet_id, t.slot, -t.power, t.zeta_order, t.coefficient) for t in self.side_b
        )

    @property
    def order(self) -> int:
        return sum(t.total_order for t in self.side_a)

    def sides(self, assignment: Mapping[int, complex]) -> Tuple[complex, complex]:
        return _product(self.side_a, assignment), _product(self.side_b, assignment)

    def residual(self, assignment: Mapping[int, complex]) -> float:
        lhs, rhs = self.sides(assignment)
        return abs(lhs - rhs)

    def to_dict(self) -> Dict[str, any]:
        return {
            'edge': self.edge_id,
            'class': 'regular',
            'order': self.order,
            'side_a': [t.to_dict() for t in self.side_a],
            'side_b': [t.to_dict() for t in self.side_b],
        }


@dataclass(frozen=True)
class SphereEquation:
    """Linear bar equation sum(coefficient * y) = 0 at a sphere vertex"""
    edge_id: int
    terms: Tuple[Tuple[int, int], ...]
    min_rate: int

    def value(self, assignment: Mapping[int, complex]) -> complex:
        return sum(coef * complex(assignment[tet]) for tet, coef in self.terms)

    def residual(self, assignment: Mapping[int, complex]) -> float:
        return abs(self.value(assignment))

    def __str__(self) -> str:
        parts = []
        for tet, coef in self.terms:
            sign = '-' if coef < 0 else '+'
            size = '' if abs(coef) == 1 else f"{abs(coef)}"
            parts.append(f"{sign}{size}y{tet}")
        text = ' '.join(parts)
        return f"{text.lstrip('+')} = 0"

    def to_dict(self) -> Dict[str, any]:
        return {
            'edge': self.edge_id,
            'class': 'sphere',
            'min_rate': self.min_rate,
            'terms': [list(t) for t in self.terms],
            'text': str(self),
        }


@dataclass(frozen=True)
class MuMeasurement:
    """
    Leading monomial of a semi-meridian holonomy

    Attributes:
        level: Polyline level the semi-meridian runs under
        curve: Name of the boundary curve
        terms: One leading term per corner step, power = turn
        zeta_order: Total order of the holonomy
    """
    level: int
    curve: str
    terms: Tuple[LeadingTerm, ...]
    zeta_order: int

    def value(self, assignment: Mapping[int, complex]) -> complex:
        return _product(self.terms, assignment)

    def residual(self, assignment: Mapping[int, complex], target: complex = -1) -> float:
        return abs(self.value(assignment) - target)

    def monomial(self) -> Dict[int, int]:
        """Net power of each tetrahedron's coefficient, angle factors included"""
        powers: Dict[int, int] = {}
        for term in self.terms:
            if term.coefficient == '1':
                continue
            powers[term.tet_id] = powers.get(term.tet_id, 0) + term.power
        return {tet: p for tet, p in sorted(powers.items()) if p}

    def to_dict(self) -> Dict[str, any]:
        return {
            'level': self.level,
            'curve': self.curve,
            'order': self.zeta_order,
            'terms': [t.to_dict() for t in self.terms],
        }


@dataclass(frozen=True)
class TildeSystem:
    profile: DegenerationProfile
    variables: Tuple[TildeVariable, ...]
    regular_equations: Tuple[RegularEquation, ...]
    sphere_equations: Tuple[SphereEquation, ...]
    mu_reference: MuMeasurement

    @property
    def zeta_exponent_unit(self) -> int:
        return self.profile.zeta_exponent_unit

    @property
    def size(self) -> int:
        return len(self.variables)

    def variable(self, tet: int) -> TildeVariable:
        return self.variables[tet]

    def direction_ids(self) -> List[int]:
        return [v.tet_id for v in self.variables if v.kind == DIRECTION]

    def angle_ids(self) -> List[int]:
        return [v.tet_id for v in self.variables if v.kind == ANGLE]

    def to_dict(self) -> Dict[str, any]:
        return {
            'zeta_exponent_unit': self.zeta_exponent_unit,
            'variables': [
                {
                    'tet': v.tet_id,
                    'name': v.name,
                    'kind': v.kind,
                    'rate': v.rate,
                    'type': v.degeneration_type,
                }
                for v in self.variables
            ],
            'equations': (
                [eq.to_dict() for eq in self.regular_equations]
                + [eq.to_dict() for eq in self.sphere_equations]
            ),
            'mu_reference': self.mu_reference.to_dict(),
        }


def leading_term(profile: DegenerationProfile, tet: int, slot: int, power: int) -> LeadingTerm:
    kind = profile.types[tet]
    order = profile.slot_order(tet, slot)
    if not profile.is_degenerate(tet):
        coefficient = SLOT_EXPRESSIONS[slot]
    elif slot == kind.zero_slot:
        coefficient = 'y'
    elif slot == kind.infinity_slot:
        coefficient = '-1/y'
    else:
        coefficient = '1'
    return LeadingTerm(tet, slot, power, order, coefficient)


def _variables(profile: DegenerationProfile) -> Tuple[TildeVariable, ...]:
    return tuple(
        TildeVariable(
            tet_id=tet,
            kind=DIRECTION if profile.rates[tet] > 0 else ANGLE,
            rate=profile.rates[tet],
            degeneration_type=profile.types[tet].value,
        )
        for tet in range(profile.size)
    )


def _curve_measurement(profile: DegenerationProfile, curve: BoundaryCurve, level: int) -> MuMeasurement:
    terms = tuple(
        leading_term(profile, step.tet, step.slot, step.turn) for step in curve.corner_steps
    )
    return MuMeasurement(
        level=level,
        curve=curve.name,
        terms=terms,
        zeta_order=sum(t.total_order for t in terms),
    )


def build_tilde_system(profile: DegenerationProfile, tri: Triangulation) -> TildeSystem:
    """
    Build the bar equations of a profile

    Args:
        profile: Profile satisfying the matching and minimum conditions
        tri: Triangulation

    Returns:
        TildeSystem with one equation per edge class and the reference
        semi-meridian measurement

    Raises:
        OrderImbalance: The two sides of a regular vertex differ in order
        UniqueMinimum: A sphere vertex has a unique minimum rate
    """
    regular = []
    for edge in tri.edges:
        if is_sphere_edge(profile, edge.incidences):
            continue
        side_a, side_b = [], []
        for tet, slot, exp in edge.incidences:
            term = leading_term(profile, tet, slot, exp)
            if term.zeta_order >= 0:
                side_a.append(term)
            else:
                side_b.append(LeadingTerm(tet, slot, -exp, term.zeta_order, term.coefficient))
        order_a = sum(t.total_order for t in side_a)
        order_b = sum(t.total_order for t in side_b)
        if order_a != order_b:
            raise OrderImbalance(
                f"Edge {edge.name}: side orders {order_a} and {order_b} differ",
                stage='tilde',
            )
        regular.append(RegularEquation(edge.id, tuple(side_a), tuple(side_b)))

    spheres = []
    for report in find_sphere_vertices(profile, tri):
        if not report.non_unique_minimum:
            raise UniqueMinimum(
                f"Sphere vertex {tri.edges[report.edge_id].name}: minimum rate "
                f"{report.min_rate} only at tetrahedron {report.achievers[0]}",
                stage='tilde',
            )
        terms = tuple(
            (tet, -mult) for tet, rate, mult in report.incident if rate == report.min_rate
        )
        spheres.append(SphereEquation(report.edge_id, terms, report.min_rate))

    return TildeSystem(
        profile=profile,
        variables=_variables(profile),
        regular_equations=tuple(regular),
        sphere_equations=tuple(spheres),
        mu_reference=mu_measurement(profile, tri),
    )


def mu_measurement(profile: DegenerationProfile, tri: Triangulation, level: Optional[int] = None) -> MuMeasurement:
    """Leading monomial of the semi-meridian under one level (default: first hinge)"""
    if level is None:
        level = reference_level(tri)
    curve = tri.boundary.semi_meridian(level)
    return _curve_measurement(profile, curve, level % tri.size)


def mu_measurements(system: TildeSystem, tri: Triangulation, profile: Optional[DegenerationProfile] = None) -> List[MuMeasurement]:
    """
    Semi-meridian measurements under every level of the stack

    Args:
        system: Tilde system
        tri: Triangulation
        profile: Defaults to the system's profile

    Returns:
        One measurement per level, reference level first
    """
    profile = profile or system.profile
    start = system.mu_reference.level
    return [mu_measurement(profile, tri, (start + i) % tri.size) for i in range(tri.size)]


def evaluate_bar_residual(
    system: TildeSystem,
    assignment: Mapping[int, complex],
    measurements: Optional[List[MuMeasurement]] = None,
    mu_target: Optional[complex] = -1,
) -> float:
    """
    Largest residual over the bar equations and mu measurements

    Args:
        system: Tilde system
        assignment: Value per tetrahedron (y or z)
        measurements: Extra measurements; the reference one is always used
        mu_target: Value every measurement is set to; None skips them

    Returns:
        max |lhs - rhs|

    Raises:
        DivisionByZero: The assignment hits a pole
    """
    missing = [v.name for v in system.variables if v.tet_id not in assignment]
    if missing:
        raise KeyError(f"Assignment misses {', '.join(missing)}")

    residuals = [eq.residual(assignment) for eq in system.regular_equations]
    residuals += [eq.residual(assignment) for eq in system.sphere_equations]
    if mu_target is not None:
        for mu in [system.mu_reference] + list(measurements or []):
            residuals.append(mu.residual(assignment, mu_target))
    return max(residuals) if residuals else 0.0
