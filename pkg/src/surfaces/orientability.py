"""
Orientability of the surface carried by a profile

Each path edge contributes a saddle spanning the neighbourhoods of the
edge classes of its two end slopes. Saddles meeting at an edge class
are glued there with opposite transverse orientations, so the surface
is orientable exactly when the saddle graph is 2-colourable. Consecutive
saddles share the class of their common vertex, and the last saddle of
a period meets the first one through the monodromy image of its start:
the graph is one cycle per sheet.
"""

from collections import deque
from typing import Dict, List, Tuple

from ..farey.paths import EdgePath
from ..farey.strip import Slope
from ..triangulation.layered import Triangulation
from .profile import DegenerationProfile


def slope_classes(tri: Triangulation) -> Dict[Slope, int]:
    """Edge class of every slope that appears as a column of the stack"""
    schedule = tri.strip.schedule
    classes: Dict[Slope, int] = {}
    for index in range(1, schedule.length + 1):
        for col in (0, 1):
            try:
                edge_class = schedule.column_class(index, col)
            except ValueError:
                continue
            classes.setdefault(Slope.from_vector(schedule.column(index, col)), edge_class)
    return classes


def saddle_classes(path: EdgePath, tri: Triangulation) -> List[Tuple[int, int]]:
    """(bottom, top) edge class of the saddle of every path edge"""
    classes = slope_classes(tri)
    spans = []
    for i, edge in enumerate(path.edges):
        if edge.start not in classes or edge.end not in classes:
            raise ValueError(f"Path edge {i} ({edge.start} -> {edge.end}) leaves the stack")
        spans.append((classes[edge.start], classes[edge.end]))
    return spans


def saddle_graph(path: EdgePath, tri: Triangulation, doubled: bool = False) -> Dict[int, List[int]]:
    """
    Adjacency of saddles glued along a common edge class

    The doubled surface has two sheets; crossing the period boundary
    swaps them.
    """
    spans = saddle_classes(path, tri)
    count = len(spans)
    sheets = 2 if doubled else 1
    graph: Dict[int, List[int]] = {i: [] for i in range(count * sheets)}
    for i, (_, top) in enumerate(spans):
        for j, (bottom, _) in enumerate(spans):
            if bottom != top:
                continue
            wraps = int(j <= i)
            for sheet in range(sheets):
                a = i + sheet * count
                b = j + ((sheet + wraps) % sheets) * count
                graph[a].append(b)
                graph[b].append(a)
    return graph


def two_colouring(graph: Dict[int, List[int]]) -> Tuple[bool, Dict[int, int]]:
    colour: Dict[int, int] = {}
    for root in graph:
        if root in colour:
            continue
        colour[root] = 0
        queue = deque([root])
        while queue:
            node = queue.popleft()
            for neighbour in graph[node]:
                if neighbour not in colour:
                    colour[neighbour] = 1 - colour[node]
                    queue.append(neighbour)
                elif colour[neighbour] == colour[node]:
                    return False, colour
    return True, colour


def is_orientable(profile: DegenerationProfile, path: EdgePath, tri: Triangulation) -> bool:
    ok, _ = two_colouring(saddle_graph(path, tri, doubled=profile.doubled))
    return ok


def orientability_and_double(
    profile: DegenerationProfile,
    tri: Triangulation,
    path: EdgePath,
) -> Tuple[bool, DegenerationProfile]:
    """
    Check orientability and double the profile when it fails

    Args:
        profile: Profile after sphere addition
        tri: Triangulation (sizes must agree)
        path: Path the profile came from

    Returns:
        (orientable, profile to use); the doubled profile has every rate
        multiplied by two and is orientable
    """
    if profile.size != tri.size:
        raise ValueError(f"Profile has {profile.size} entries for {tri.size} tetrahedra")
    if is_orientable(profile, path, tri):
        return True, profile
    return False, profile.double()
