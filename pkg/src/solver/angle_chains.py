"""
Closed-form solutions of chains of non-degenerate tetrahedra

Inside an L-fan the gluing equations read a_{k-1} a_{k+1} = (1 - a_k)^2
(a-type), inside an R-fan b_k^2 = b_{k-1} b_{k+1} (1 - b_k)^2 (b-type).
With the boundary values a_1 = a_{N+1} = 1 the chain is solved by

    a_k = (1 - cos k beta) / (1 - cos beta),   beta = 2 pi / (N + 2)

and b_k = 1 / a_k.
"""

import math
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from ..core.exceptions import UnknownCase
from ..tilde.system import TildeSystem

A_TYPE = 'a'
B_TYPE = 'b'


@dataclass(frozen=True)
class AngleChain:
    """
    Run of non-degenerate tetrahedra between two degenerate ones

    Attributes:
        kind: 'a' or 'b', read off the squared slot of the recursions
        length: N, one more than the number of members
        members: Tetrahedra in stack order
    """
    kind: str
    length: int
    members: Tuple[int, ...] = ()

    @classmethod
    def of_length(cls, kind: str, length: int) -> 'AngleChain':
        return cls(kind=kind, length=length, members=tuple(range(max(0, length - 1))))


def solve_angle_chain(chain: AngleChain) -> List[complex]:
    """
    Interior values a_2 .. a_N of a chain

    Args:
        chain: Angle chain

    Returns:
        N - 1 values (none for N <= 1)
    """
    if chain.kind not in (A_TYPE, B_TYPE):
        raise ValueError(f"Unknown chain type: {chain.kind}")
    n = chain.length
    if n <= 1:
        return []
    beta = 2 * math.pi / (n + 2)
    denominator = 1 - math.cos(beta)
    values = []
    for k in range(2, n + 1):
        a = (1 - math.cos(k * beta)) / denominator
        values.append(complex(a if chain.kind == A_TYPE else 1 / a))
    return values


def chain_recursion_residual(values: Sequence[complex], kind: str) -> float:
    """Largest recursion residual, boundary values 1 included"""
    padded = [1.0] + list(values) + [1.0]
    worst = 0.0
    for k in range(1, len(padded) - 1):
        left, mid, right = padded[k - 1], padded[k], padded[k + 1]
        if kind == A_TYPE:
            residual = left * right - (1 - mid) ** 2
        else:
            residual = mid ** 2 - left * right * (1 - mid) ** 2
        worst = max(worst, abs(residual))
    return worst


RECURSION_SLOTS = {2: A_TYPE, 1: B_TYPE}


def recursion_kinds(system: TildeSystem) -> Dict[int, str]:
    """
    Chain type of every angle variable that has a recursion equation

    A recursion equation has only angle factors (besides ->1 corners),
    exactly one of them squared: z_{k-1} z_{k+1} s(z_k)^2 = 1. The
    squared slot 1/(1-z) gives the a-type recursion, (z-1)/z the b-type.
    """
    angles = set(system.angle_ids())
    kinds: Dict[int, str] = {}
    for eq in system.regular_equations:
        terms = [t for t in eq.terms if t.coefficient != '1']
        if not terms or any(t.tet_id not in angles for t in terms):
            continue
        squared = [t for t in terms if abs(t.power) == 2]
        if len(squared) != 1 or any(abs(t.power) > 2 for t in terms):
            continue
        kind = RECURSION_SLOTS.get(squared[0].slot)
        if kind is None:
            continue
        tet = squared[0].tet_id
        if kinds.get(tet, kind) != kind:
            raise UnknownCase(f"z{tet} sits in recursions of both types", stage='solver')
        kinds[tet] = kind
    return kinds


def detect_angle_chains(system: TildeSystem) -> List[AngleChain]:
    """
    Maximal runs of angle variables flanked by direction variables

    Each run is typed from its recursion equations. A system with no
    direction variable has no chains.

    Raises:
        UnknownCase: A run has no recursion equation or mixes both types
    """
    n = system.size
    angles = set(system.angle_ids())
    angle = [t in angles for t in range(n)]
    if all(angle) or not any(angle):
        return []

    kinds = recursion_kinds(system)
    start = angle.index(False)
    chains = []
    run: List[int] = []
    for step in range(1, n + 1):
        tet = (start + step) % n
        if angle[tet]:
            run.append(tet)
            continue
        if run:
            found = {kinds[t] for t in run if t in kinds}
            if len(found) != 1:
                names = ', '.join(f"z{t}" for t in run)
                raise UnknownCase(f"Angle chain {names} has no single recursion type", stage='solver')
            chains.append(AngleChain(kind=found.pop(), length=len(run) + 1, members=tuple(run)))
            run = []
    return chains


def chain_seed(chains: Sequence[AngleChain]) -> Dict[int, complex]:
    """Closed-form value for every member of every chain"""
    values = {}
    for chain in chains:
        for tet, value in zip(chain.members, solve_angle_chain(chain)):
            values[tet] = value
    return values
