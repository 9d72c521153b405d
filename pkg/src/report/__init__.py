"""
Report helpers: schema check, SVG boundary picture, CSV trace
"""

from .schema import REPORT_SCHEMA, SURFACE_STATUSES, validate_report
from .svg import render_boundary_svg
from .trace_csv import trace_to_csv

__all__ = ['REPORT_SCHEMA', 'SURFACE_STATUSES', 'validate_report', 'render_boundary_svg', 'trace_to_csv']
