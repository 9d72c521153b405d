"""
Exception hierarchy shared by every pipeline stage

Each error carries the CLI exit code it maps to and the pipeline
stage that raised it. Library code raises, only main.py exits.
"""


class TorusSurfacesError(Exception):
    """Base class for all errors raised by the library"""

    exit_code = 4
    stage = "pipeline"

    def __init__(self, message: str = "", stage: str = None):
        super().__init__(message)
        if stage is not None:
            self.stage = stage


# Input errors (exit 2)

class InputError(TorusSurfacesError):
    """Bad user input"""
    exit_code = 2
    stage = "input"


class EmptyWord(InputError):
    pass


class InvalidCharacter(InputError):
    pass


class NotHyperbolic(InputError):
    pass


class PathIndexError(InputError):
    pass


class ReportFormatError(InputError):
    pass


# Refusal (exit 3)

class SemiFiber(TorusSurfacesError):
    """
    Surface is a semi-fiber: chains of crossings have no ends, so no
    finite number of spheres fixes the minimum-rate condition
    """
    exit_code = 3
    stage = "spheres"


# Construction and numerical failures (exit 4)

class MalformedPath(TorusSurfacesError):
    stage = "sections"


class SectionTableMiss(TorusSurfacesError):
    stage = "profile"


class UnsupportedVertex(TorusSurfacesError):
    stage = "tilde"


class OrderImbalance(TorusSurfacesError):
    stage = "tilde"


class UniqueMinimum(TorusSurfacesError):
    stage = "tilde"


class DivisionByZero(TorusSurfacesError):
    stage = "tilde"


class ZeroDirection(TorusSurfacesError):
    stage = "solver"


class UnsolvedVariable(TorusSurfacesError):
    stage = "solver"


class UnknownCase(TorusSurfacesError):
    stage = "solver"


class ResidualTooLarge(TorusSurfacesError):
    stage = "verify"


class DegenerateValue(TorusSurfacesError):
    stage = "verify"


class DegenerateShape(TorusSurfacesError):
    stage = "holonomy"


class NoConvergence(TorusSurfacesError):
    stage = "continuation"


class DegenerationCollision(TorusSurfacesError):
    stage = "continuation"


class InsufficientSteps(TorusSurfacesError):
    stage = "continuation"


class RateMismatch(TorusSurfacesError):
    stage = "continuation"
