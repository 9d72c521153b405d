"""
Monodromy words, Farey strips and minimal invariant edge paths
"""

from .word import MonodromyWord, parse_word, monodromy_matrix
from .strip import Slope, Fan, FareyStrip, build_farey_strip
from .paths import (
    FanChoice,
    SectionType,
    Section,
    PathEdge,
    EdgePath,
    enumerate_minimal_paths,
    build_path,
    decompose_sections,
)
from .tightness import TightSubPath, classify_semi_fiber, vertex_determinants

__all__ = [
    'MonodromyWord', 'parse_word', 'monodromy_matrix',
    'Slope', 'Fan', 'FareyStrip', 'build_farey_strip',
    'FanChoice', 'SectionType', 'Section', 'PathEdge', 'EdgePath',
    'enumerate_minimal_paths', 'build_path', 'decompose_sections',
    'TightSubPath', 'classify_semi_fiber', 'vertex_determinants',
]
