"""
Core module: exception hierarchy and pipeline orchestration

The pipeline is imported from src.core.pipeline directly; every stage
imports the exceptions from here.
"""

from .exceptions import TorusSurfacesError

__all__ = ['TorusSurfacesError']
