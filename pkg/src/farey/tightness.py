"""
Tightness of path vertices and semi-fiber classification

A vertex v with path neighbours u and w is tight when the two edges
at v lie in neighbouring Farey triangles, i.e. |det(u, w)| = 2.
"""

from dataclasses import dataclass
from typing import List, Tuple

from .paths import EdgePath, Section, SectionType, _det


@dataclass(frozen=True)
class TightSubPath:
    """Maximal run of edges whose interior vertices are all tight"""
    edges: Tuple[int, ...]
    lr_sections: Tuple[Section, ...]
    cyclic: bool = False


def vertex_determinants(path: EdgePath) -> List[int]:
    """det(previous, next) at the end vertex of each edge of one period"""
    return [_det(u, w) for u, _, w in path.period_vertices()]


def _lr_edge_index(path: EdgePath, section: Section) -> int:
    entering = (section.fan + 1) % len(path.choices)
    for i, (edge, crossing) in enumerate(zip(path.edges, path.crossing_flags)):
        if crossing and edge.fan == entering:
            return i
    raise ValueError(f"No crossing edge for LR section at fan {section.fan}")


def classify_semi_fiber(path: EdgePath) -> Tuple[bool, List[TightSubPath]]:
    """
    Decide whether every vertex of the path is tight

    Args:
        path: Minimal edge path

    Returns:
        (semi_fiber, tight sub-paths containing at least one LR section)
    """
    tight = [abs(d) == 2 for d in vertex_determinants(path)]
    count = len(path.edges)
    lr_by_edge = {_lr_edge_index(path, s): s for s in path.sections if s.kind is SectionType.LR}

    if all(tight):
        runs = [(tuple(range(count)), True)]
    else:
        first_break = tight.index(False)
        runs = []
        current = []
        for step in range(count):
            edge = (first_break + 1 + step) % count
            current.append(edge)
            if not tight[edge]:
                runs.append((tuple(current), False))
                current = []
        if current:
            runs.append((tuple(current), False))

    sub_paths = []
    for edges, cyclic in runs:
        lrs = tuple(lr_by_edge[e] for e in edges if e in lr_by_edge)
        if lrs:
            sub_paths.append(TightSubPath(edges=edges, lr_sections=lrs, cyclic=cyclic))

    return all(tight), sub_paths
