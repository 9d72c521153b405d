"""
SVG boundary picture with twisted-square arcs

Band j of the boundary torus is drawn as a row; the vertices a, b, -a,
-b shared by both polylines sit on the middle line, d and -d above it,
e and -e below it. Every degenerating tetrahedron draws its rate as a
labelled arc in each of its four boundary triangles, from the corner
tending to infinity to the corner tending to 0.
"""

import xml.etree.ElementTree as ET
from typing import Dict, Optional, Tuple

from ..surfaces.profile import DegenerationProfile
from ..triangulation.cusp import CORNER_SLOTS
from ..triangulation.layered import Triangulation

SVG_NS = 'http://www.w3.org/2000/svg'

# (x, y offset) of the corners of each boundary triangle, half 0 and half 1
_CORNERS = {
    ('U', 0): ((0, 0), (2, 0), (1, -1)),
    ('D', 0): ((3, 1), (4, 0), (2, 0)),
    ('U', 1): ((4, 0), (6, 0), (5, -1)),
    ('D', 1): ((7, 1), (8, 0), (6, 0)),
}


def _point(corner: Tuple[int, int], band: int, cell: float, height: float, margin: float):
    x, dy = corner
    return margin + x * cell, margin + (band + 0.5) * height + dy * height * 0.4


def render_boundary_svg(
    tri: Triangulation,
    profile: DegenerationProfile,
    config: Optional[Dict] = None,
) -> str:
    """
    Draw the boundary picture of a profile

    Args:
        tri: Triangulation
        profile: Degeneration profile (after spheres)
        config: Optional `report.svg` sizes (cell, band_height, margin)

    Returns:
        SVG document as text
    """
    sizes = (config or {}).get('report', {}).get('svg', {})
    cell = float(sizes.get('cell', 60))
    height = float(sizes.get('band_height', 90))
    margin = float(sizes.get('margin', 20))
    cusp = tri.boundary

    width = 2 * margin + 8 * cell
    total = 2 * margin + tri.size * height
    root = ET.Element('svg', {
        'xmlns': SVG_NS,
        'version': '1.1',
        'width': f"{width:g}",
        'height': f"{total:g}",
        'viewBox': f"0 0 {width:g} {total:g}",
    })
    defs = ET.SubElement(root, 'defs')
    marker = ET.SubElement(defs, 'marker', {
        'id': 'arrow', 'markerWidth': '8', 'markerHeight': '8',
        'refX': '6', 'refY': '3', 'orient': 'auto',
    })
    ET.SubElement(marker, 'path', {'d': 'M0,0 L6,3 L0,6 z', 'fill': '#b03030'})

    triangles = ET.SubElement(root, 'g', {'class': 'triangles'})
    arcs = ET.SubElement(root, 'g', {'class': 'arcs'})

    for triangle in cusp.triangles():
        band, kind, half = triangle
        points = [_point(c, band, cell, height, margin) for c in _CORNERS[(kind, half)]]
        ET.SubElement(triangles, 'polygon', {
            'points': ' '.join(f"{x:.2f},{y:.2f}" for x, y in points),
            'fill': 'none',
            'stroke': '#444444',
            'data-triangle': f"{band}{kind}{half}",
        })

        rate = profile.rates[band]
        if rate == 0:
            continue
        kind_type = profile.types[band]
        slots = CORNER_SLOTS[kind]
        source = slots.index(kind_type.infinity_slot)
        target = slots.index(kind_type.zero_slot)
        (x0, y0), (x1, y1) = points[source], points[target]
        cx, cy = [sum(c) / 3 for c in zip(*points)]
        sx, sy = x0 + 0.25 * (cx - x0), y0 + 0.25 * (cy - y0)
        tx, ty = x1 + 0.25 * (cx - x1), y1 + 0.25 * (cy - y1)
        ET.SubElement(arcs, 'path', {
            'd': f"M{sx:.2f},{sy:.2f} Q{cx:.2f},{cy:.2f} {tx:.2f},{ty:.2f}",
            'fill': 'none',
            'stroke': '#b03030',
            'marker-end': 'url(#arrow)',
            'class': 'arc',
            'data-tet': str(band),
            'data-rate': str(rate),
            'data-type': kind_type.value,
            'data-from': str(cusp.vertex_of(triangle, source)),
            'data-to': str(cusp.vertex_of(triangle, target)),
        })
        label = ET.SubElement(arcs, 'text', {
            'x': f"{cx:.2f}",
            'y': f"{cy:.2f}",
            'font-size': '11',
            'class': 'rate',
            'data-tet': str(band),
        })
        label.text = str(rate)

    return ET.tostring(root, encoding='unicode')
