"""
Minimal invariant edge paths in the Farey strip

A path is described by one choice per fan: it either runs along the
outer side of the fan or visits the fan's pivot vertex. Raw edges are
derived from the choices, so the enumeration is finite by construction.
"""

from dataclasses import dataclass, field
from enum import Enum
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from ..core.exceptions import MalformedPath
from .strip import FareyStrip, Slope, Vector


class FanChoice(Enum):
    OUTER = 'O'
    PIVOT = 'P'


class SectionType(Enum):
    LL = 'LL'
    RR = 'RR'
    RL = 'RL'
    LR = 'LR'


@dataclass(frozen=True)
class Section:
    """
    One piece of a path between two choice vertices

    LL and RR sections run along an outer fan; RL and LR sections cross
    the strip at a hinge, leaving the pivot of `fan`.
    """
    kind: SectionType
    fan: int
    fan_length: int
    fan_start: int
    hinge: Optional[int] = None

    def to_dict(self) -> Dict[str, any]:
        return {
            'type': self.kind.value,
            'fan': self.fan,
            'fan_length': self.fan_length,
            'hinge': self.hinge,
        }


@dataclass(frozen=True)
class PathEdge:
    start: Slope
    end: Slope
    crossing: bool
    fan: int


@dataclass(frozen=True)
class EdgePath:
    """
    A monodromy-invariant edge path, one period of it

    Attributes:
        choices: Per-fan choice, in fan order
        edges: Edges of one period
        sections: Section decomposition
        pass_through: (fan, length) of visited pivots left along an outer run
        vertex_window: Vertex vectors over three periods, used for
            determinant checks at the period boundary
        primitive_period: Smallest letter shift mapping the path to itself
    """
    strip: FareyStrip = field(compare=False, repr=False)
    choices: Tuple[FanChoice, ...]
    edges: Tuple[PathEdge, ...]
    sections: Tuple[Section, ...]
    pass_through: Tuple[Tuple[int, int], ...]
    vertex_window: Tuple[Vector, ...] = field(compare=False, repr=False)
    window_offset: int = field(compare=False, repr=False, default=0)
    primitive_period: int = 0

    @property
    def label(self) -> str:
        return ''.join(choice.value for choice in self.choices)

    @property
    def crossing_flags(self) -> Tuple[bool, ...]:
        return tuple(edge.crossing for edge in self.edges)

    @property
    def section_decomposition(self) -> List[Tuple[SectionType, int]]:
        return [(s.kind, s.fan_length) for s in self.sections]

    def period_vertices(self) -> List[Tuple[Vector, Vector, Vector]]:
        """(previous, vertex, next) for every vertex of one period"""
        window = self.vertex_window
        start = self.window_offset
        return [
            (window[i - 1], window[i], window[i + 1])
            for i in range(start, start + len(self.edges))
        ]

    @property
    def is_minimal(self) -> bool:
        for u, _, w in self.period_vertices():
            if abs(_det(u, w)) <= 1:
                return False
        return True

    def lr_sections(self) -> List[Section]:
        return [s for s in self.sections if s.kind is SectionType.LR]

    def to_dict(self) -> Dict[str, any]:
        return {
            'choices': self.label,
            'edges': [
                {'from': str(e.start), 'to': str(e.end), 'crossing': e.crossing}
                for e in self.edges
            ],
            'sections': [s.to_dict() for s in self.sections],
            'pass_through': [list(p) for p in self.pass_through],
            'primitive_period': self.primitive_period,
        }


def _det(u: Vector, w: Vector) -> int:
    return u[0] * w[1] - u[1] * w[0]


def _check_choices(strip: FareyStrip, choices: Sequence[FanChoice]):
    if len(choices) != len(strip.fans):
        raise MalformedPath(
            f"Expected {len(strip.fans)} fan choices, got {len(choices)}"
        )
    for k, choice in enumerate(choices):
        if not isinstance(choice, FanChoice):
            raise MalformedPath(f"Unknown fan choice {choice!r}")
        if choice is FanChoice.OUTER and choices[(k + 1) % len(choices)] is FanChoice.OUTER:
            raise MalformedPath(
                f"Fans {k} and {(k + 1) % len(choices)} are both outer: path is disconnected"
            )


def _sections_for(strip: FareyStrip, choices: Sequence[FanChoice]):
    sections = []
    pass_through = []
    count = len(strip.fans)

    for k, fan in enumerate(strip.fans):
        following = choices[(k + 1) % count]
        if choices[k] is FanChoice.OUTER:
            kind = SectionType.LL if fan.letter == 'L' else SectionType.RR
            sections.append(Section(kind, k, fan.length, fan.start))
        elif following is FanChoice.PIVOT:
            kind = SectionType.RL if fan.letter == 'L' else SectionType.LR
            sections.append(Section(kind, k, fan.length, fan.start, hinge=fan.hinge))
        else:
            pass_through.append((k, fan.length))

    return tuple(sections), tuple(pass_through)


def _walk(strip: FareyStrip, choices: Sequence[FanChoice]):
    """Vertex and edge walk over three periods; edges tagged with their period"""
    schedule = strip.schedule
    count = len(strip.fans)
    vertices: List[Vector] = []
    edges = []

    for period in range(3):
        for k, fan in enumerate(strip.fans):
            start = fan.start + period * strip.period
            previous = choices[(k - 1) % count]
            if choices[k] is FanChoice.OUTER:
                outer = [schedule.column(start + i, fan.outer_column) for i in range(fan.length + 1)]
                if not vertices:
                    vertices.append(outer[0])
                elif vertices[-1] != outer[0]:
                    raise MalformedPath(f"Outer run of fan {k} does not start at the previous vertex")
                for v in outer[1:]:
                    edges.append((len(vertices) - 1, v, False, k, period))
                    vertices.append(v)
            else:
                pivot = schedule.column(start, fan.pivot_column)
                if not vertices:
                    vertices.append(pivot)
                elif previous is FanChoice.PIVOT:
                    edges.append((len(vertices) - 1, pivot, True, k, period))
                    vertices.append(pivot)
                elif vertices[-1] != pivot:
                    raise MalformedPath(f"Pivot of fan {k} does not follow the outer run")

    return vertices, edges


def _primitive_period(strip: FareyStrip, choices: Sequence[FanChoice]) -> int:
    count = len(choices)
    lengths = strip.fan_lengths
    for shift in range(2, count + 1, 2):
        if count % shift:
            continue
        rotated = tuple(choices[shift:]) + tuple(choices[:shift])
        rotated_lengths = lengths[shift:] + lengths[:shift]
        if rotated == tuple(choices) and rotated_lengths == lengths:
            return sum(lengths[:shift])
    return strip.period


def build_path(strip: FareyStrip, choices: Sequence[FanChoice]) -> EdgePath:
    """
    Build the edge path determined by per-fan choices

    Args:
        strip: Farey strip of the word
        choices: One FanChoice per fan

    Returns:
        EdgePath (not necessarily minimal; see EdgePath.is_minimal)

    Raises:
        MalformedPath: Choices do not describe a connected path
    """
    choices = tuple(choices)
    _check_choices(strip, choices)

    vertices, raw_edges = _walk(strip, choices)
    middle = [e for e in raw_edges if e[4] == 1]
    offset = middle[0][0] + 1

    edges = tuple(
        PathEdge(
            start=Slope.from_vector(vertices[index]),
            end=Slope.from_vector(end),
            crossing=crossing,
            fan=fan,
        )
        for index, end, crossing, fan, _ in middle
    )
    sections, pass_through = _sections_for(strip, choices)

    return EdgePath(
        strip=strip,
        choices=choices,
        edges=edges,
        sections=sections,
        pass_through=pass_through,
        vertex_window=tuple(vertices),
        window_offset=offset,
        primitive_period=_primitive_period(strip, choices),
    )


def _structurally_minimal(strip: FareyStrip, choices: Sequence[FanChoice]) -> bool:
    count = len(choices)
    for k in range(count):
        if choices[k] is FanChoice.OUTER and choices[(k + 1) % count] is FanChoice.OUTER:
            return False
        middle = strip.fans[k]
        if (
            middle.length == 1
            and choices[(k - 1) % count] is FanChoice.PIVOT
            and choices[k] is FanChoice.PIVOT
            and choices[(k + 1) % count] is FanChoice.PIVOT
        ):
            return False
    return True


def enumerate_minimal_paths(strip: FareyStrip) -> List[EdgePath]:
    """
    Enumerate all minimal invariant edge paths of the strip

    Args:
        strip: Farey strip of the word

    Returns:
        Paths in a fixed order (outer choices before pivot choices, fan by fan)
    """
    paths = []
    for choices in product((FanChoice.OUTER, FanChoice.PIVOT), repeat=len(strip.fans)):
        if not _structurally_minimal(strip, choices):
            continue
        paths.append(build_path(strip, choices))
    return paths


def decompose_sections(path: EdgePath) -> Tuple[Section, ...]:
    """
    Split a path into LL, RR, RL and LR sections

    Args:
        path: Edge path

    Returns:
        Sections in fan order; their fan lengths plus the pass-through
        pivot lengths add up to the word period

    Raises:
        MalformedPath: The choices do not describe a connected path
    """
    _check_choices(path.strip, path.choices)
    sections, _ = _sections_for(path.strip, path.choices)
    return sections
