"""
Test suite for Torus Surfaces
"""
