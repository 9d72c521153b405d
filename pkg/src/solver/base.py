"""
Base solver interface - every ideal-point solver implements this
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from ..tilde.system import TildeSystem
from ..triangulation.layered import Triangulation


@dataclass
class IdealPointSolution:
    """
    Values of the tilde variables at zeta = 0

    Attributes:
        values: Value per tetrahedron (angle z or direction y)
        mu: Value of the reference semi-meridian monomial
        sign_choices: (site, branch) for every root taken
        residual: Largest bar-equation residual
        method: How the values were found
    """
    values: Dict[int, complex]
    mu: complex
    sign_choices: List[Tuple[str, int]] = field(default_factory=list)
    residual: float = float('inf')
    method: str = ''

    def to_dict(self, system: Optional[TildeSystem] = None) -> Dict[str, any]:
        variables = []
        for tet, value in sorted(self.values.items()):
            entry = {'tet': tet, 're': value.real, 'im': value.imag}
            if system is not None:
                var = system.variable(tet)
                entry.update({'name': var.name, 'kind': var.kind, 'rate': var.rate})
            variables.append(entry)
        return {
            'variables': variables,
            'mu': {'re': self.mu.real, 'im': self.mu.imag},
            'sign_choices': [{'site': s, 'branch': b} for s, b in self.sign_choices],
            'residual': self.residual,
            'method': self.method,
        }


class IdealSolver(ABC):
    """
    Abstract base class for ideal-point solvers

    Implementations must be swappable without touching the rest of the
    pipeline: they take a tilde system and return an IdealPointSolution.
    """

    def __init__(self, config: Dict = None):
        self.config = config or {}
        solver_config = self.config.get('solver', {})
        self.tolerance = solver_config.get('residual_tolerance', 1e-10)
        self.max_iterations = solver_config.get('newton_max_iterations', 60)
        self.restarts = solver_config.get('newton_restarts', 24)
        self.random_seed = solver_config.get('random_seed', 0)
        self.branch_policy = solver_config.get('branch_policy', 'principal')
        self.max_branch_flips = solver_config.get('max_branch_flips', 32)

    @abstractmethod
    def solve(
        self,
        system: TildeSystem,
        tri: Triangulation,
        lr_contexts: Sequence = (),
        branches: Optional[Dict[str, int]] = None,
    ) -> IdealPointSolution:
        """
        Solve the bar equations with the reference measurement set to -1

        Args:
            system: Tilde system
            tri: Triangulation the system was built on
            lr_contexts: LR sections with their effective weights, used
                for closed-form seeds
            branches: Forced branch per root site

        Returns:
            IdealPointSolution
        """
        pass
