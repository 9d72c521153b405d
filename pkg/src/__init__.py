"""
Torus Surfaces - ideal points detected by surfaces in punctured torus bundles
"""

__version__ = "0.1.0"
__author__ = "Torus Surfaces Team"
