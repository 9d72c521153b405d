"""
Layered tetrahedralisation of a punctured torus bundle

Tetrahedron j sits between the Farey triangles j and j+1. Its bottom
pair of faces is the edge replaced at step j (the "old" edge), its top
edge is the one created at step j+1 (the "new" edge). Angle slots:

    slot 0  old and new edges       shape z
    slot 1  column 0 of M_{j+1}     (z - 1) / z
    slot 2  column 1 of M_{j+1}     1 / (1 - z)

Edge classes are indexed by the step that creates them, mod the period.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Tuple

from ..farey.strip import FareyStrip, build_farey_strip, stack_schedule
from ..farey.word import MonodromyWord

SLOT_EXPRESSIONS = ('z', '(z-1)/z', '1/(1-z)')


def slot_value(z: complex, slot: int) -> complex:
    """Complex angle carried by a slot of a tetrahedron with shape z"""
    if slot == 0:
        return z
    if slot == 1:
        return (z - 1) / z
    return 1 / (1 - z)


@dataclass(frozen=True)
class Tetrahedron:
    """
    One layer of the stack

    Attributes:
        id: Stack index j
        letters: (w_j, w_{j+1})
        hinge: 't' for (R, L), 'v' for (L, R), None inside a fan
        fan: Index of the fan containing step j
    """
    id: int
    letters: Tuple[str, str]
    hinge: Optional[str]
    fan: int


@dataclass(frozen=True)
class EdgeClass:
    id: int
    name: str
    incidences: Tuple[Tuple[int, int, int], ...]

    @property
    def valence(self) -> int:
        return sum(exp for _, _, exp in self.incidences)


@dataclass(frozen=True)
class GluingEquation:
    """
    Product of slot values around one edge class

    Attributes:
        edge_id: Edge class index
        terms: (tet_id, slot, exponent) with positive exponents
    """
    edge_id: int
    name: str
    terms: Tuple[Tuple[int, int, int], ...]

    @property
    def valence(self) -> int:
        return sum(exp for _, _, exp in self.terms)

    def evaluate(self, shapes: Mapping[int, complex]) -> complex:
        value = 1 + 0j
        for tet, slot, exp in self.terms:
            value *= slot_value(shapes[tet], slot) ** exp
        return value

    def residual(self, shapes: Mapping[int, complex]) -> float:
        return abs(self.evaluate(shapes) - 1)


@dataclass
class Triangulation:
    """
    Canonical layered triangulation with its edge classes

    The boundary (cusp) triangulation is built on first access.
    """
    word: MonodromyWord
    strip: FareyStrip
    tets: List[Tetrahedron]
    edges: List[EdgeClass]
    _boundary: object = field(default=None, repr=False)

    @property
    def size(self) -> int:
        return len(self.tets)

    @property
    def boundary(self):
        if self._boundary is None:
            from .cusp import CuspTriangulation
            self._boundary = CuspTriangulation(self)
        return self._boundary

    def equations(self) -> List[GluingEquation]:
        return gluing_equations(self)

    def incidences(self, tet_id: int) -> List[Tuple[int, int, int]]:
        """(edge_id, slot, exponent) for one tetrahedron"""
        return [
            (edge.id, slot, exp)
            for edge in self.edges
            for tet, slot, exp in edge.incidences
            if tet == tet_id
        ]

    def to_dict(self) -> Dict[str, any]:
        return {
            'word': self.word.text,
            'tets': [
                {
                    'id': t.id,
                    'letters': ''.join(t.letters),
                    'hinge': t.hinge,
                    'fan': t.fan,
                }
                for t in self.tets
            ],
            'edges': [
                {'id': e.id, 'name': e.name, 'valence': e.valence}
                for e in self.edges
            ],
            'equations': [
                {'edge': eq.edge_id, 'terms': [list(term) for term in eq.terms]}
                for eq in self.equations()
            ],
        }


def _edge_names(strip: FareyStrip) -> Dict[int, str]:
    """λ/ρ naming by creating letter, fan and position; the fan's last edge is '*'"""
    names = {}
    for fan in strip.fans:
        symbol = 'lambda' if fan.letter == 'L' else 'rho'
        for position, step in enumerate(fan.steps(), start=1):
            tag = '*' if position == fan.length else str(position)
            names[step] = f"{symbol}[{fan.index},{tag}]"
    return names


def build_triangulation(word: MonodromyWord) -> Triangulation:
    """
    Build the layered triangulation of a hyperbolic word

    Args:
        word: Canonical monodromy word

    Returns:
        Triangulation with one tetrahedron and one edge class per letter
    """
    strip = build_farey_strip(word)
    schedule = stack_schedule(word)
    n = word.period

    tets = []
    raw: Dict[int, Dict[Tuple[int, int], int]] = {c: {} for c in range(n)}

    def add(edge: int, tet: int, slot: int, exp: int):
        raw[edge][(tet, slot)] = raw[edge].get((tet, slot), 0) + exp

    for j in range(n):
        letters = (word.letter(j), word.letter(j + 1))
        if letters == ('R', 'L'):
            hinge = 't'
        elif letters == ('L', 'R'):
            hinge = 'v'
        else:
            hinge = None
        tets.append(Tetrahedron(id=j, letters=letters, hinge=hinge, fan=strip.fan_at(j).index))

        # middle period so that every column has a known creation step
        step = j + n
        old = schedule.column_class(step, schedule.replaced_column(step))
        new = (j + 1) % n
        add(old, j, 0, 1)
        add(new, j, 0, 1)
        add(schedule.column_class(step + 1, 0), j, 1, 2)
        add(schedule.column_class(step + 1, 1), j, 2, 2)

    names = _edge_names(strip)
    edges = [
        EdgeClass(
            id=c,
            name=names[c],
            incidences=tuple((tet, slot, exp) for (tet, slot), exp in sorted(raw[c].items())),
        )
        for c in range(n)
    ]
    return Triangulation(word=word, strip=strip, tets=tets, edges=edges)


def gluing_equations(tri: Triangulation) -> List[GluingEquation]:
    """
    One gluing equation per edge class, in edge-class order

    Args:
        tri: Layered triangulation

    Returns:
        GluingEquation list; product of slot values = 1 at a solution
    """
    return [
        GluingEquation(edge_id=e.id, name=e.name, terms=e.incidences)
        for e in tri.edges
    ]
