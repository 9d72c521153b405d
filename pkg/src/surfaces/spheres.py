"""
Sphere vertices and the addition of vertex-linking spheres

A sphere vertex is an edge class every one of whose corners tends to 1.
The leading equation at such a vertex only has a solution if the
minimum rate around it is attained at least twice; spheres around the
vertices of LR sections raise the rates until that holds.
"""

from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from ..core.exceptions import SemiFiber, UnsupportedVertex
from ..farey.paths import EdgePath, Section
from ..farey.tightness import classify_semi_fiber
from ..triangulation.layered import Triangulation
from .profile import (
    DegenerationProfile,
    DegenerationType,
    LRGeometry,
    lr_geometry,
)


@dataclass(frozen=True)
class SphereVertexReport:
    """
    Rates around a sphere vertex

    Attributes:
        edge_id: Edge class of the vertex
        incident: (tet, rate, multiplicity) per incident tetrahedron
        min_rate: Smallest incident rate
        achievers: Tetrahedra attaining the minimum
    """
    edge_id: int
    incident: Tuple[Tuple[int, int, int], ...]
    min_rate: int
    achievers: Tuple[int, ...]

    @property
    def non_unique_minimum(self) -> bool:
        return len(self.achievers) >= 2

    def to_dict(self) -> Dict[str, any]:
        return {
            'edge': self.edge_id,
            'incident': [list(i) for i in self.incident],
            'min_rate': self.min_rate,
            'achievers': list(self.achievers),
        }


@dataclass(frozen=True)
class SphereTemplate:
    """Rate increments of one sphere around an LR vertex"""
    section: int
    side: str
    increments: Tuple[Tuple[int, DegenerationType, int], ...]


@dataclass(frozen=True)
class LRChain:
    """LR sections linked by shared 1-tetrahedra, top to bottom"""
    sections: Tuple[int, ...]
    geometries: Tuple[LRGeometry, ...]
    weights: Tuple[int, ...]


@dataclass(frozen=True)
class SphereCounts:
    upper: Tuple[int, ...]
    lower: Tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.upper) + sum(self.lower)

    def to_dict(self) -> Dict[str, any]:
        return {'upper': list(self.upper), 'lower': list(self.lower)}


def is_sphere_edge(profile: DegenerationProfile, incidences) -> bool:
    if not incidences:
        return False
    for tet, slot, _ in incidences:
        kind = profile.types[tet]
        if kind is DegenerationType.NONE or slot != kind.one_slot:
            return False
    return True


def find_sphere_vertices(profile: DegenerationProfile, tri: Triangulation) -> List[SphereVertexReport]:
    """
    Report every sphere vertex of a profile

    Args:
        profile: Degeneration profile
        tri: Triangulation

    Returns:
        One report per sphere vertex, in edge-class order

    Raises:
        UnsupportedVertex: An edge class has no incidences at all
    """
    reports = []
    for edge in tri.edges:
        if not edge.incidences:
            raise UnsupportedVertex(f"Edge class {edge.id} has no incident tetrahedra")
        if not is_sphere_edge(profile, edge.incidences):
            continue
        multiplicity: Dict[int, int] = {}
        for tet, _, exp in edge.incidences:
            multiplicity[tet] = multiplicity.get(tet, 0) + exp
        incident = tuple((tet, profile.rates[tet], mult) for tet, mult in sorted(multiplicity.items()))
        min_rate = min(rate for _, rate, _ in incident)
        reports.append(SphereVertexReport(
            edge_id=edge.id,
            incident=incident,
            min_rate=min_rate,
            achievers=tuple(tet for tet, rate, _ in incident if rate == min_rate),
        ))
    return reports


def sphere_template(geometry: LRGeometry, section: int, side: str) -> SphereTemplate:
    """Increments of one upper or lower sphere at an LR section"""
    if side == 'upper':
        increments = [(geometry.top, DegenerationType.T1, 1)]
        increments += [(tet, DegenerationType.TINF, 2) for tet in geometry.infinity_chain]
        increments.append((geometry.hinge, DegenerationType.T1, 1))
    elif side == 'lower':
        increments = [(geometry.hinge, DegenerationType.T1, 1)]
        increments += [(tet, DegenerationType.T0, 2) for tet in geometry.zero_chain]
        increments.append((geometry.bottom, DegenerationType.T1, 1))
    else:
        raise ValueError(f"Unknown sphere side: {side}")
    return SphereTemplate(section=section, side=side, increments=tuple(increments))


def lr_chains(path: EdgePath, profile: DegenerationProfile) -> List[LRChain]:
    """
    Group the LR sections into chains sharing 1-tetrahedra

    Weights are the base rates of the 1-tetrahedra along the chain minus
    one: the top one, each shared one, then the bottom one.

    Raises:
        SemiFiber: The chain closes up around the bundle
    """
    indexed = [(i, s) for i, s in enumerate(path.sections) if s.kind.value == 'LR']
    geometry = {i: lr_geometry(s, path) for i, s in indexed}

    successor = {}
    predecessor = {}
    for i, _ in indexed:
        for j, _ in indexed:
            if i != j and geometry[i].bottom == geometry[j].top:
                successor[i] = j
                predecessor[j] = i

    chains = []
    seen = set()
    for i, _ in indexed:
        if i in seen or i in predecessor:
            continue
        members = [i]
        while members[-1] in successor:
            members.append(successor[members[-1]])
        seen.update(members)
        chains.append(members)

    leftover = [i for i, _ in indexed if i not in seen]
    if leftover:
        raise SemiFiber(
            f"LR sections {leftover} form a closed chain around the bundle",
            stage='spheres',
        )

    result = []
    for members in chains:
        geos = [geometry[i] for i in members]
        ones = [geos[0].top] + [g.bottom for g in geos]
        result.append(LRChain(
            sections=tuple(members),
            geometries=tuple(geos),
            weights=tuple(profile.rates[tet] - 1 for tet in ones),
        ))
    return result


def balance_point(weights: Sequence[int]) -> Tuple[int, int]:
    """
    Locate the middle of a weighted chain

    Args:
        weights: K+1 non-negative weights around K LR sections

    Returns:
        (1, k): the k-th LR section (1-based) splits the weights evenly
        (2, k): the k-th weight outweighs the difference of the two sides
    """
    total = sum(weights)
    count = len(weights) - 1
    prefix = 0
    for k in range(1, count + 1):
        prefix += weights[k - 1]
        if prefix == total - prefix:
            return 1, k

    prefix = 0
    for k in range(1, count + 2):
        before = prefix
        after = total - before - weights[k - 1]
        if weights[k - 1] > abs(before - after):
            return 2, k
        prefix += weights[k - 1]

    raise ValueError(f"No balance point for weights {list(weights)}")


def two_weight_counts(alpha: int, beta: int) -> Tuple[int, int]:
    """Upper and lower sphere counts of an isolated LR section"""
    if alpha < beta:
        return alpha + 1, alpha
    if alpha == beta:
        return beta, alpha
    return beta, beta + 1


def chain_sphere_counts(weights: Sequence[int]) -> SphereCounts:
    """
    Sphere counts along a chain, working inward from both ends

    Sections above the balance point take the top-weighted rule with the
    accumulated weight above them, sections below the bottom-weighted rule.
    """
    case, middle = balance_point(weights)
    upper, lower = [], []
    for j in range(1, len(weights)):
        above = sum(weights[:j])
        below = sum(weights[j:])
        if j < middle:
            a, b = above + 1, above
        elif case == 1 and j == middle:
            a, b = below, above
        else:
            a, b = below, below + 1
        upper.append(a)
        lower.append(b)
    return SphereCounts(tuple(upper), tuple(lower))


def sphere_rows(alpha: int, beta: int) -> Tuple[int, int, int, int, int]:
    """Rates of top, infinity, hinge, zero and bottom tets after adding spheres"""
    a, b = two_weight_counts(alpha, beta)
    return alpha + a + 1, 2 * a + 2, a + b + 1, 2 * b + 2, beta + b + 1


def apply_templates(profile: DegenerationProfile, templates: Sequence[Tuple[SphereTemplate, int]]) -> DegenerationProfile:
    for template, count in templates:
        if count == 0:
            continue
        for tet, kind, rate in template.increments:
            profile = profile.add({tet: (kind, rate * count)})
    return profile


def add_spheres(
    profile: DegenerationProfile,
    tri: Triangulation,
    path: EdgePath,
) -> Tuple[DegenerationProfile, Dict[int, SphereCounts]]:
    """
    Add the fewest spheres giving every sphere vertex a repeated minimum

    Args:
        profile: Profile of the path
        tri: Triangulation
        path: The path the profile came from

    Returns:
        (new profile, sphere counts keyed by the first section of each chain)

    Raises:
        SemiFiber: Every vertex of the path is tight
    """
    semi_fiber, _ = classify_semi_fiber(path)
    if semi_fiber:
        raise SemiFiber(f"Path {path.label} is a semi-fiber", stage='spheres')

    if all(r.non_unique_minimum for r in find_sphere_vertices(profile, tri)):
        return profile, {}

    counts: Dict[int, SphereCounts] = {}
    templates = []
    for chain in lr_chains(path, profile):
        chain_counts = chain_sphere_counts(chain.weights)
        counts[chain.sections[0]] = chain_counts
        for section, geometry, a, b in zip(
            chain.sections, chain.geometries, chain_counts.upper, chain_counts.lower
        ):
            templates.append((sphere_template(geometry, section, 'upper'), a))
            templates.append((sphere_template(geometry, section, 'lower'), b))

    return apply_templates(profile, templates), counts
