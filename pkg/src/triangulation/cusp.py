"""
Boundary (cusp) triangulation and boundary curves

Each tetrahedron j leaves four triangles on the boundary torus, all in
band j. Write a, b for the columns of M_{j+1}, d = a + b for the new
vertex and e = b - a for the old one (signed). The band sits between
two polylines of six segments each:

    bottom  a -> b -> e -> -a -> -b -> -e -> a
    top     a -> d -> b -> -a -> -d -> -b -> a

and holds, with corners listed anticlockwise,

    U (a, b, d)     bottom segment 0, top segments 0 and 1
    D (e, -a, b)    bottom segments 1 and 2, top segment 2

plus their half-turn images under v -> -v (half 1). Corner slots: in
U the corners a, b, d carry slots 1, 2, 0; in D the corners e, -a, b
carry slots 0, 1, 2. Every boundary edge is the bottom segment of
exactly one band; the top segments of band j are the bottom segments
of band j+1, rotated by one position when w_{j+1} = R.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Tuple

from ..core.exceptions import DegenerateShape
from .layered import Triangulation, slot_value

EdgeId = Tuple[int, int]
TriangleId = Tuple[int, str, int]

ABOVE = 'above'
BELOW = 'below'

CORNER_SLOTS = {'U': (1, 2, 0), 'D': (0, 1, 2)}

# bottom segment -> (kind, half, local edge) of the triangle above it
_ABOVE = {
    0: ('U', 0, 0), 1: ('D', 0, 2), 2: ('D', 0, 0),
    3: ('U', 1, 0), 4: ('D', 1, 2), 5: ('D', 1, 0),
}
# top segment -> (kind, half, local edge) of the triangle below it
_BELOW = {
    0: ('U', 0, 2), 1: ('U', 0, 1), 2: ('D', 0, 1),
    3: ('U', 1, 2), 4: ('U', 1, 1), 5: ('D', 1, 1),
}
# vertical curve: U is left through its left top edge, D through its only one
_VERTICAL_EXIT = {0: 0, 1: 2, 2: 2, 3: 3, 4: 5, 5: 5}


def _other(side: str) -> str:
    return BELOW if side == ABOVE else ABOVE


@dataclass(frozen=True)
class Crossing:
    """A curve crossing a boundary edge from one side to the other"""
    edge: EdgeId
    source: str
    target: str

    def inverse(self) -> 'Crossing':
        return Crossing(self.edge, self.target, self.source)

    def half_turn(self) -> 'Crossing':
        band, seg = self.edge
        return Crossing((band, (seg + 3) % 6), self.source, self.target)


@dataclass(frozen=True)
class CornerStep:
    """
    Passage through one boundary triangle corner

    turn is +1 when the curve turns anticlockwise around the corner
    (corner on its left) and -1 when it turns clockwise.
    """
    tet: int
    triangle: TriangleId
    corner: int
    slot: int
    turn: int


@dataclass(frozen=True)
class BoundaryCurve:
    """
    Curve on the boundary torus, as corner steps

    Attributes:
        name: Human-readable tag
        crossings: Edge crossings in order
        corner_steps: One step per triangle passed
        homology_class: (meridian coefficient, fiber coefficient)
        half_turn: True for a half curve that closes up under v -> -v
    """
    name: str
    crossings: Tuple[Crossing, ...]
    corner_steps: Tuple[CornerStep, ...]
    homology_class: Tuple[int, int]
    half_turn: bool = False


class CuspTriangulation:
    """Boundary torus triangulation of a layered triangulation"""

    def __init__(self, tri: Triangulation):
        self.tri = tri
        self.word = tri.word
        self.n = tri.size
        self._vertex_of = self._vertex_classes()

    # combinatorics

    def shift(self, band: int) -> int:
        """Rotation between the top of band-1 and the bottom of band"""
        return 0 if self.word.letter(band) == 'L' else 1

    def triangles(self) -> List[TriangleId]:
        return [(j, kind, half) for j in range(self.n) for kind in ('U', 'D') for half in (0, 1)]

    def edges(self) -> List[EdgeId]:
        return [(j, seg) for j in range(self.n) for seg in range(6)]

    def triangle_across(self, edge: EdgeId, side: str) -> Tuple[TriangleId, int]:
        """Triangle on one side of an edge and the edge's local index in it"""
        band, seg = edge
        if side == ABOVE:
            kind, half, local = _ABOVE[seg]
            return (band, kind, half), local
        top = (seg + self.shift(band)) % 6
        kind, half, local = _BELOW[top]
        return ((band - 1) % self.n, kind, half), local

    def corner_slot(self, triangle: TriangleId, corner: int) -> int:
        return CORNER_SLOTS[triangle[1]][corner]

    def _vertex_classes(self) -> Dict[Tuple[TriangleId, int], int]:
        parent: Dict[Tuple[TriangleId, int], Tuple[TriangleId, int]] = {}

        def find(x):
            parent.setdefault(x, x)
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[rx] = ry

        for t in self.triangles():
            for corner in range(3):
                find((t, corner))

        for edge in self.edges():
            up, lu = self.triangle_across(edge, ABOVE)
            down, ld = self.triangle_across(edge, BELOW)
            union((up, lu), (down, (ld + 1) % 3))
            union((up, (lu + 1) % 3), (down, ld))

        roots = {}
        labels = {}
        for corner in sorted(parent):
            root = find(corner)
            labels[corner] = roots.setdefault(root, len(roots))
        return labels

    def vertex_of(self, triangle: TriangleId, corner: int) -> int:
        return self._vertex_of[(triangle, corner)]

    def vertex_count(self) -> int:
        return len(set(self._vertex_of.values()))

    def euler_characteristic(self) -> int:
        return self.vertex_count() - len(self.edges()) + len(self.triangles())

    # curves

    def _steps(self, crossings: List[Crossing], half_turn: bool) -> Tuple[CornerStep, ...]:
        steps = []
        for i, crossing in enumerate(crossings):
            if i + 1 < len(crossings):
                following = crossings[i + 1]
            else:
                following = crossings[0].half_turn() if half_turn else crossings[0]
            triangle, entry = self.triangle_across(crossing.edge, crossing.target)
            other, exit_ = self.triangle_across(following.edge, following.source)
            if triangle != other:
                raise ValueError(
                    f"Crossings {crossing.edge} and {following.edge} do not share a triangle"
                )
            if exit_ == (entry + 1) % 3:
                corner, turn = (entry + 1) % 3, -1
            elif exit_ == (entry - 1) % 3:
                corner, turn = entry, 1
            else:
                raise ValueError(f"Curve turns back through edge {crossing.edge}")
            steps.append(CornerStep(
                tet=triangle[0],
                triangle=triangle,
                corner=corner,
                slot=self.corner_slot(triangle, corner),
                turn=turn,
            ))
        return tuple(steps)

    @staticmethod
    def _reduce(crossings: List[Crossing], half_turn: bool) -> List[Crossing]:
        stack: List[Crossing] = []
        for crossing in crossings:
            if stack and stack[-1] == crossing.inverse():
                stack.pop()
            else:
                stack.append(crossing)
        while len(stack) >= 2:
            closing = stack[0].half_turn() if half_turn else stack[0]
            if stack[-1] != closing.inverse():
                break
            stack = stack[1:-1]
        return stack

    def _lower_polyline(self, level: int) -> List[List[Tuple[EdgeId, str]]]:
        """
        Downward edges below each vertex of the level polyline

        For every vertex the list runs left to right; each entry is an
        edge between two consecutive triangles of the vertex's lower
        sector, with the side of the left triangle.
        """
        poly: List[Optional[list]] = [None] * 6

        def grow(record, band, left_seg, right_seg):
            if record is None:
                return None
            return [((band, left_seg), ABOVE)] + record + [((band, right_seg), BELOW)]

        for absolute in range(level, level + 2 * self.n):
            j = absolute % self.n
            a, b, _, minus_a, minus_b, _ = poly
            top = [
                grow(a, j, 5, 0), [], grow(b, j, 0, 1),
                grow(minus_a, j, 2, 3), [], grow(minus_b, j, 3, 4),
            ]
            poly = top if self.shift(absolute + 1) == 0 else top[1:] + top[:1]

        if any(record is None for record in poly):
            raise ValueError(f"Lower sectors at level {level} are incomplete")
        return poly

    def semi_meridian(self, level: int = 0) -> BoundaryCurve:
        """
        Half of the horizontal curve just below a level polyline

        The curve runs leftward under three consecutive polyline
        vertices and closes up under the half-turn.
        """
        poly = self._lower_polyline(level % self.n)
        crossings = []
        for position in (2, 1, 0):
            for edge, left_side in reversed(poly[position]):
                crossings.append(Crossing(edge, _other(left_side), left_side))
        crossings = self._reduce(crossings, half_turn=True)
        return BoundaryCurve(
            name=f"semi_meridian[{level % self.n}]",
            crossings=tuple(crossings),
            corner_steps=self._steps(crossings, half_turn=True),
            homology_class=(1, 0),
            half_turn=True,
        )

    def _period_map(self, seg: int) -> int:
        for j in range(self.n):
            top = _VERTICAL_EXIT[seg]
            seg = (top - self.shift(j + 1)) % 6
        return seg

    def vertical_curve(self) -> BoundaryCurve:
        """
        Curve crossing every band upward once per period

        Its horizontal coefficient counts full turns relative to the
        curve that follows the first polyline vertex a from level to
        level; the fiber coefficient is the number of periods it needs
        to close.
        """
        seen = []
        seg = 0
        while seg not in seen:
            seen.append(seg)
            seg = self._period_map(seg)
        start = seg

        crossings = []
        unwrapped = start
        seg = start
        periods = 0
        while True:
            for j in range(self.n):
                crossings.append(Crossing((j, seg), BELOW, ABOVE))
                top = _VERTICAL_EXIT[seg]
                shift = self.shift(j + 1)
                unwrapped += top - seg - shift
                seg = (top - shift) % 6
            periods += 1
            if seg == start:
                break

        winding = (unwrapped - start) // 6
        return BoundaryCurve(
            name="vertical",
            crossings=tuple(crossings),
            corner_steps=self._steps(crossings, half_turn=False),
            homology_class=(winding, periods),
        )


def reference_level(tri: Triangulation) -> int:
    """Level of the first hinge of the canonical word"""
    return tri.strip.fans[0].hinge


def semi_meridian_curve(tri: Triangulation, level: Optional[int] = None) -> BoundaryCurve:
    """
    Canonical semi-meridian of the boundary torus

    Args:
        tri: Layered triangulation
        level: Polyline level; defaults to the first hinge

    Returns:
        BoundaryCurve whose holonomy squared is the meridian holonomy
    """
    if level is None:
        level = reference_level(tri)
    return tri.boundary.semi_meridian(level)


def holonomy(tri: Triangulation, shapes: Mapping[int, complex], curve: BoundaryCurve) -> complex:
    """
    Holonomy of a boundary curve

    Args:
        tri: Layered triangulation
        shapes: Slot-0 shape per tetrahedron
        curve: Boundary curve

    Returns:
        Product of corner values, inverted on clockwise turns

    Raises:
        DegenerateShape: A shape equals 0 or 1
    """
    for tet, z in shapes.items():
        if z == 0 or z == 1:
            raise DegenerateShape(f"Tetrahedron {tet} has degenerate shape {z}")

    value = 1 + 0j
    for step in curve.corner_steps:
        value *= slot_value(shapes[step.tet], step.slot) ** step.turn
    return value
