"""
Farey strip of a monodromy word

The strip is the chain of Farey triangles swept out by the partial
products M_0 = I, M_{i+1} = M_i * G(w_i). The two columns of M_i span
the edge shared by triangles i-1 and i; triangle i adds the vertex
col0 + col1. L keeps column 0 and replaces column 1, R the other way
round, so a run of equal letters is a fan around the fixed column.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Dict, List, Optional, Tuple

import numpy as np

from .word import GENERATORS, IDENTITY, MonodromyWord

Vector = Tuple[int, int]


@dataclass(frozen=True, order=True)
class Slope:
    """Slope p/q stored as the primitive column vector (q, p)"""
    q: int
    p: int

    def __post_init__(self):
        if self.q == 0 and self.p == 0:
            raise ValueError("Slope (0, 0) is not allowed")
        if gcd(abs(self.q), abs(self.p)) != 1:
            raise ValueError(f"Slope vector ({self.q}, {self.p}) is not primitive")
        if self.q < 0 or (self.q == 0 and self.p != 1):
            raise ValueError(f"Slope vector ({self.q}, {self.p}) is not sign-normalized")

    @classmethod
    def from_vector(cls, vector) -> 'Slope':
        q, p = int(vector[0]), int(vector[1])
        if q < 0 or (q == 0 and p < 0):
            q, p = -q, -p
        return cls(q, p)

    def det(self, other: 'Slope') -> int:
        return self.q * other.p - self.p * other.q

    def vector(self) -> Vector:
        return (self.q, self.p)

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"


@dataclass(frozen=True)
class Fan:
    """
    Maximal run of equal letters

    An L-fan turns around column 0 (its pivot) while column 1 walks
    along the outer side; an R-fan does the opposite.
    """
    index: int
    letter: str
    start: int
    length: int

    @property
    def pivot_column(self) -> int:
        return 0 if self.letter == 'L' else 1

    @property
    def outer_column(self) -> int:
        return 1 - self.pivot_column

    @property
    def hinge(self) -> int:
        """Stack index of the hinge tetrahedron closing this fan"""
        return self.start + self.length - 1

    def steps(self) -> range:
        return range(self.start, self.start + self.length)


class StackSchedule:
    """
    Partial products and column bookkeeping over several periods

    Column creation steps are tracked so that each column vector can be
    mapped to the edge class it represents (creation step mod period).
    """

    def __init__(self, word: MonodromyWord, periods: int = 4):
        self.word = word
        self.period = word.period
        self.length = periods * self.period
        self._matrices: List[np.ndarray] = [IDENTITY]
        self._origins: List[Tuple[Optional[int], Optional[int]]] = [(None, None)]

        for step in range(self.length):
            letter = word.letter(step)
            self._matrices.append(self._matrices[-1] @ GENERATORS[letter])
            c0, c1 = self._origins[-1]
            self._origins.append((c0, step) if letter == 'L' else (step, c1))

    def matrix(self, index: int) -> np.ndarray:
        return self._matrices[index]

    def column(self, index: int, col: int) -> Vector:
        m = self._matrices[index]
        return (int(m[0, col]), int(m[1, col]))

    def columns(self, index: int) -> Tuple[Vector, Vector]:
        return self.column(index, 0), self.column(index, 1)

    def column_class(self, index: int, col: int) -> int:
        """Edge class of a column: the step that created it, mod period"""
        origin = self._origins[index][col]
        if origin is None:
            raise ValueError(f"Column {col} of M_{index} predates the schedule")
        return origin % self.period

    def replaced_column(self, step: int) -> int:
        """Column overwritten by the letter at this step"""
        return 1 if self.word.letter(step) == 'L' else 0


@lru_cache(maxsize=256)
def stack_schedule(word: MonodromyWord) -> StackSchedule:
    return StackSchedule(word)


@dataclass(frozen=True)
class FareyStrip:
    """
    One period of the invariant Farey strip

    Attributes:
        word: Canonical monodromy word
        triangles: Per stack index, the Farey triangle (col0, col1, col0+col1)
        fans: Fans in word order, alternating L and R
        fan_boundaries: Stack indices of hinge tetrahedra
    """
    word: MonodromyWord
    triangles: Tuple[Tuple[Slope, Slope, Slope], ...]
    fans: Tuple[Fan, ...]
    fan_boundaries: Tuple[int, ...]
    schedule: StackSchedule = field(compare=False, repr=False)

    @property
    def period(self) -> int:
        return self.word.period

    @property
    def fan_lengths(self) -> Tuple[int, ...]:
        return tuple(fan.length for fan in self.fans)

    def edges(self) -> List[Tuple[Slope, Slope]]:
        """All strip edges of one period (three per triangle, deduplicated)"""
        seen = []
        for tri in self.triangles:
            for a, b in ((tri[0], tri[1]), (tri[0], tri[2]), (tri[1], tri[2])):
                edge = tuple(sorted((a, b)))
                if edge not in seen:
                    seen.append(edge)
        return seen

    def fan_at(self, step: int) -> Fan:
        """Fan containing a (possibly out-of-period) stack index"""
        local = step % self.period
        for fan in self.fans:
            if fan.start <= local < fan.start + fan.length:
                return fan
        raise IndexError(step)

    def to_dict(self) -> Dict[str, any]:
        return {
            'word': self.word.text,
            'period': self.period,
            'fan_lengths': list(self.fan_lengths),
            'fan_boundaries': list(self.fan_boundaries),
            'triangles': [[str(s) for s in tri] for tri in self.triangles],
        }


def build_farey_strip(word: MonodromyWord) -> FareyStrip:
    """
    Build the Farey strip of a hyperbolic word

    Args:
        word: Canonical monodromy word

    Returns:
        FareyStrip with one triangle per letter
    """
    schedule = stack_schedule(word)

    triangles = []
    for i in range(word.period):
        a, b = schedule.columns(i)
        c = (a[0] + b[0], a[1] + b[1])
        triangles.append(tuple(Slope.from_vector(v) for v in (a, b, c)))

    fans = tuple(
        Fan(index=k, letter=letter, start=start, length=length)
        for k, (letter, start, length) in enumerate(word.runs())
    )
    boundaries = tuple(fan.hinge for fan in fans)

    return FareyStrip(
        word=word,
        triangles=tuple(triangles),
        fans=fans,
        fan_boundaries=boundaries,
        schedule=schedule,
    )
