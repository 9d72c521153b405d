"""
Report schema and validation

The schema lists required keys and their JSON types; nested schemas
describe objects, one-element lists describe arrays.
"""

from typing import Any, Dict

from ..core.exceptions import ReportFormatError

SURFACE_SCHEMA = {
    'index': int,
    'path': {
        'choices': str,
        'edges': [dict],
        'sections': [dict],
        'primitive_period': int,
    },
    'semi_fiber': bool,
    'status': str,
}

REPORT_SCHEMA = {
    'tool': {'name': str, 'version': str},
    'word': str,
    'period': int,
    'triangulation': {'tets': [dict], 'edges': [dict]},
    'config': dict,
    'surfaces': [SURFACE_SCHEMA],
}

SURFACE_STATUSES = ('enumerated', 'solved', 'refused', 'failed')

# keys present once a surface went through the full pipeline
SOLVED_KEYS = ('profile', 'spheres', 'orientable', 'tilde', 'solution', 'continuation', 'peripheral')


def _check(value: Any, schema: Any, where: str):
    if isinstance(schema, dict):
        if not isinstance(value, dict):
            raise ReportFormatError(f"{where}: expected object")
        for key, sub in schema.items():
            if key not in value:
                raise ReportFormatError(f"{where}: missing key '{key}'")
            _check(value[key], sub, f"{where}.{key}")
    elif isinstance(schema, list):
        if not isinstance(value, list):
            raise ReportFormatError(f"{where}: expected array")
        for i, item in enumerate(value):
            _check(item, schema[0], f"{where}[{i}]")
    elif schema is int:
        if not isinstance(value, int) or isinstance(value, bool):
            raise ReportFormatError(f"{where}: expected integer")
    elif not isinstance(value, schema):
        raise ReportFormatError(f"{where}: expected {schema.__name__}")


def validate_report(report: Dict[str, Any]) -> None:
    """
    Check a report against the schema

    Raises:
        ReportFormatError: The report does not follow the schema
    """
    _check(report, REPORT_SCHEMA, 'report')
    for surface in report['surfaces']:
        status = surface['status']
        if status not in SURFACE_STATUSES:
            raise ReportFormatError(f"surface {surface['index']}: unknown status '{status}'")
        if status == 'solved':
            for key in SOLVED_KEYS:
                if key not in surface:
                    raise ReportFormatError(f"surface {surface['index']}: missing key '{key}'")
        if status in ('refused', 'failed') and 'reason' not in surface:
            raise ReportFormatError(f"surface {surface['index']}: missing key 'reason'")
