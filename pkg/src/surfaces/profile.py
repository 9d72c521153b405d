"""
Degeneration profiles and the section tables

A profile gives every tetrahedron a rate k (number of parallel twisted
squares) and a type telling which slot degenerates. For type T0 slot 0
tends to 0, for T1 slot 1 does, for T∞ slot 2 does; the next slot
(cyclically) tends to infinity and the remaining one to 1.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from ..core.exceptions import SectionTableMiss
from ..farey.paths import EdgePath, FanChoice, Section, SectionType
from ..farey.strip import FareyStrip
from ..triangulation.layered import Triangulation


class DegenerationType(Enum):
    T0 = '0'
    T1 = '1'
    TINF = 'inf'
    NONE = 'none'

    @property
    def zero_slot(self) -> Optional[int]:
        """Slot whose angle tends to 0 (it carries Z = zeta^k * y)"""
        return {'0': 0, '1': 1, 'inf': 2}.get(self.value)

    @property
    def infinity_slot(self) -> Optional[int]:
        zero = self.zero_slot
        return None if zero is None else (zero + 1) % 3

    @property
    def one_slot(self) -> Optional[int]:
        zero = self.zero_slot
        return None if zero is None else (zero + 2) % 3


Contribution = Tuple[DegenerationType, int]


@dataclass(frozen=True)
class DegenerationProfile:
    """
    Per-tetrahedron rates and degeneration types

    Attributes:
        rates: k per tetrahedron (0 for non-degenerating ones)
        types: DegenerationType per tetrahedron
        doubled: True once every rate was doubled for orientability
    """
    rates: Tuple[int, ...]
    types: Tuple[DegenerationType, ...]
    doubled: bool = False

    def __post_init__(self):
        for tet, (rate, kind) in enumerate(zip(self.rates, self.types)):
            if rate < 0:
                raise ValueError(f"Negative rate at tetrahedron {tet}")
            if (rate == 0) != (kind is DegenerationType.NONE):
                raise ValueError(f"Tetrahedron {tet}: rate {rate} does not match type {kind.value}")

    @classmethod
    def empty(cls, size: int) -> 'DegenerationProfile':
        return cls(rates=(0,) * size, types=(DegenerationType.NONE,) * size)

    @property
    def size(self) -> int:
        return len(self.rates)

    @property
    def zeta_exponent_unit(self) -> int:
        return 2 if self.doubled else 1

    def is_degenerate(self, tet: int) -> bool:
        return self.rates[tet] > 0

    def slot_order(self, tet: int, slot: int) -> int:
        """Leading zeta-order of a slot value"""
        kind = self.types[tet]
        if kind is DegenerationType.NONE:
            return 0
        rate = self.rates[tet]
        if slot == kind.zero_slot:
            return rate
        if slot == kind.infinity_slot:
            return -rate
        return 0

    def add(self, contributions: Dict[int, Contribution]) -> 'DegenerationProfile':
        """
        Add contributions (type, rate) per tetrahedron

        Raises:
            SectionTableMiss: Two pieces disagree on a tetrahedron's type
        """
        rates = list(self.rates)
        types = list(self.types)
        for tet, (kind, rate) in sorted(contributions.items()):
            if rate == 0:
                continue
            if types[tet] not in (DegenerationType.NONE, kind):
                raise SectionTableMiss(
                    f"Tetrahedron {tet} would be both type {types[tet].value} and {kind.value}"
                )
            types[tet] = kind
            rates[tet] += rate
        return DegenerationProfile(tuple(rates), tuple(types), self.doubled)

    def double(self) -> 'DegenerationProfile':
        return DegenerationProfile(
            rates=tuple(2 * r for r in self.rates),
            types=self.types,
            doubled=True,
        )

    def to_dict(self) -> Dict[str, any]:
        return {
            'rates': list(self.rates),
            'types': [t.value for t in self.types],
            'doubled': self.doubled,
        }


@dataclass(frozen=True)
class TableRow:
    """
    One tetrahedron entry of a section table

    Offsets and rates are affine in the table parameters: n (fan length
    minus one), k (running index of repeated rows), and for LR sections
    `up` / `down` (lengths of the outer fans the chains extend through).
    """
    offset: Tuple[int, Tuple[Tuple[str, int], ...]]
    kind: DegenerationType
    rate: Tuple[int, Tuple[Tuple[str, int], ...]]
    repeat: Optional[Tuple[str, int, str]] = None

    @staticmethod
    def _eval(form, params: Dict[str, int]) -> int:
        const, terms = form
        return const + sum(coef * params[name] for name, coef in terms)

    def expand(self, params: Dict[str, int]) -> List[Tuple[int, Contribution]]:
        if self.repeat is None:
            return [(self._eval(self.offset, params), (self.kind, self._eval(self.rate, params)))]
        name, low, high = self.repeat
        rows = []
        for value in range(low, params[high] + 1):
            local = dict(params, **{name: value})
            rows.append((self._eval(self.offset, local), (self.kind, self._eval(self.rate, local))))
        return rows


T0, T1, TINF = DegenerationType.T0, DegenerationType.T1, DegenerationType.TINF

# Rows anchored at the fan start (LL, RR) or at the hinge (RL, LR halves)
SECTION_TABLES: Dict[str, Tuple[TableRow, ...]] = {
    'LL': (
        TableRow((-2, ()), T1, (1, (('n', 1),))),
        TableRow((-1, ()), TINF, (2, (('n', 2),))),
        TableRow((-1, (('k', 1),)), TINF, (2, (('n', 2), ('k', -2))), repeat=('k', 1, 'n')),
    ),
    'RR': (
        TableRow((-1, (('k', 1),)), T0, (0, (('k', 2),)), repeat=('k', 1, 'n')),
        TableRow((0, (('n', 1),)), T0, (2, (('n', 2),))),
        TableRow((1, (('n', 1),)), T1, (1, (('n', 1),))),
    ),
    'RL': (
        TableRow((0, ()), T1, (1, ())),
    ),
    'LR_hinge': (
        TableRow((0, ()), T1, (1, ())),
    ),
    'LR_upper': (
        TableRow((-1, ()), TINF, (2, ())),
        TableRow((-2, ()), T1, (1, ())),
    ),
    # R-fan above the hinge has length 1: the chain runs through the LL region above
    'LR_upper_short': (
        TableRow((-1, (('k', -1),)), TINF, (2, ()), repeat=('k', 0, 'up')),
        TableRow((-2, (('up', -1),)), T1, (1, ())),
    ),
    'LR_lower': (
        TableRow((1, ()), T0, (2, ())),
        TableRow((2, ()), T1, (1, ())),
    ),
    # L-fan below the hinge has length 1: the chain runs through the RR region below
    'LR_lower_short': (
        TableRow((1, (('k', 1),)), T0, (2, ()), repeat=('k', 0, 'down')),
        TableRow((2, (('down', 1),)), T1, (1, ())),
    ),
}


@dataclass(frozen=True)
class LRGeometry:
    """Tetrahedra touched by an LR section, top to bottom"""
    top: int
    infinity_chain: Tuple[int, ...]
    hinge: int
    zero_chain: Tuple[int, ...]
    bottom: int


def _expand(key: str, anchor: int, params: Dict[str, int], size: int) -> List[Tuple[int, Contribution]]:
    if key not in SECTION_TABLES:
        raise SectionTableMiss(f"No table entry for {key}")
    rows = []
    for row in SECTION_TABLES[key]:
        for offset, contribution in row.expand(params):
            rows.append(((anchor + offset) % size, contribution))
    return rows


def _lr_keys(section: Section, strip: FareyStrip, choices: Sequence[FanChoice]):
    count = len(strip.fans)
    above = strip.fans[section.fan]
    below = strip.fans[(section.fan + 1) % count]
    params = {'n': section.fan_length - 1}

    if above.length == 1:
        outer = (section.fan - 1) % count
        if choices[outer] is not FanChoice.OUTER:
            raise SectionTableMiss(
                f"LR at hinge {section.hinge}: short R-fan needs an outer L-fan above"
            )
        upper = 'LR_upper_short'
        params['up'] = strip.fans[outer].length
    else:
        upper = 'LR_upper'

    if below.length == 1:
        outer = (section.fan + 2) % count
        if choices[outer] is not FanChoice.OUTER:
            raise SectionTableMiss(
                f"LR at hinge {section.hinge}: short L-fan needs an outer R-fan below"
            )
        lower = 'LR_lower_short'
        params['down'] = strip.fans[outer].length
    else:
        lower = 'LR_lower'

    return upper, lower, params


def lr_geometry(section: Section, path: EdgePath) -> LRGeometry:
    """Top 1-tet, infinity chain, hinge, zero chain and bottom 1-tet of an LR section"""
    strip = path.strip
    size = strip.period
    upper, lower, params = _lr_keys(section, strip, path.choices)
    up_rows = _expand(upper, section.hinge, params, size)
    down_rows = _expand(lower, section.hinge, params, size)
    return LRGeometry(
        top=up_rows[-1][0],
        infinity_chain=tuple(tet for tet, _ in up_rows[:-1]),
        hinge=section.hinge % size,
        zero_chain=tuple(tet for tet, _ in down_rows[:-1]),
        bottom=down_rows[-1][0],
    )


def section_contributions(section: Section, path: EdgePath) -> List[Tuple[int, Contribution]]:
    """
    Table contributions of one section

    Args:
        section: Section of the path
        path: Path the section belongs to

    Returns:
        (tet, (type, rate)) rows; a tetrahedron may appear more than once

    Raises:
        SectionTableMiss: No table row fits the section
    """
    strip = path.strip
    size = strip.period
    if section.fan_length < 1:
        raise SectionTableMiss(f"Fan length {section.fan_length} has no table entry")
    params = {'n': section.fan_length - 1}

    if section.kind is SectionType.LL:
        return _expand('LL', section.fan_start, params, size)
    if section.kind is SectionType.RR:
        return _expand('RR', section.fan_start, params, size)
    if section.kind is SectionType.RL:
        return _expand('RL', section.hinge, params, size)

    upper, lower, params = _lr_keys(section, strip, path.choices)
    return (
        _expand('LR_hinge', section.hinge, params, size)
        + _expand(upper, section.hinge, params, size)
        + _expand(lower, section.hinge, params, size)
    )


def combine(rows: Iterable[Tuple[int, Contribution]], size: int) -> DegenerationProfile:
    profile = DegenerationProfile.empty(size)
    for tet, contribution in rows:
        profile = profile.add({tet: contribution})
    return profile


def path_to_yoshida(path: EdgePath, tri: Triangulation) -> DegenerationProfile:
    """
    Twisted-square data of the surface carried by a path

    Args:
        path: Decomposed edge path
        tri: Triangulation of the same word

    Returns:
        Profile assembled by adding the section contributions
    """
    rows = []
    for section in path.sections:
        rows.extend(section_contributions(section, path))
    return combine(rows, tri.size)


def check_zero_infty_matching(profile: DegenerationProfile, tri: Triangulation) -> Dict[int, int]:
    """
    0-sides minus infinity-sides at every edge class

    Args:
        profile: Degeneration profile
        tri: Triangulation

    Returns:
        Map edge id -> imbalance, weighted by rate and multiplicity
    """
    imbalance = {}
    for edge in tri.edges:
        imbalance[edge.id] = sum(
            exp * profile.slot_order(tet, slot) for tet, slot, exp in edge.incidences
        )
    return imbalance
