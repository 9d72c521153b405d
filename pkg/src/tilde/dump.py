"""
JSON dump of a tilde system for comparison with hand computations
"""

import json
from typing import Optional

from ..triangulation.layered import Triangulation
from .system import TildeSystem


def dump_tilde_system(system: TildeSystem, tri: Triangulation, path: Optional[str] = None) -> str:
    """
    Serialize a tilde system

    Args:
        system: Tilde system
        tri: Triangulation (used for edge names)
        path: Optional file to write

    Returns:
        JSON text
    """
    data = system.to_dict()
    for equation in data['equations']:
        equation['name'] = tri.edges[equation['edge']].name
    text = json.dumps(data, indent=2, sort_keys=True)
    if path:
        with open(path, 'w', encoding='utf-8') as f:
            f.write(text + '\n')
    return text
