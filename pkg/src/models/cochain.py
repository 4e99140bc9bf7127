"""Cech cochains of the normal bundle on the two-piece cover of C."""

from dataclasses import dataclass
from typing import Optional

from ..algebra import ChartSeries
from ..errors import StructuralError

Pair = tuple[ChartSeries, ChartSeries]


def _truncated(pair: Pair, degree: Optional[int]) -> Pair:
    if degree is None:
        return pair
    return (pair[0].truncate(degree), pair[1].truncate(degree))


@dataclass(frozen=True)
class ZeroCochain:
    """Element of C^0: ((phi0_1, phi0_2) in x on V0, (phi1_1, phi1_2) in w on V1)."""

    phi0: Pair
    phi1: Pair
    degree_bound: Optional[int] = None

    def __post_init__(self):
        """Check chart variables and holomorphy, then truncate."""
        for series in self.phi0:
            if series.variable != 'x' or not series.is_holomorphic():
                raise StructuralError('phi0 components must be holomorphic series in x')
        for series in self.phi1:
            if series.variable != 'w' or not series.is_holomorphic():
                raise StructuralError('phi1 components must be holomorphic series in w')
        object.__setattr__(self, 'phi0', _truncated(tuple(self.phi0), self.degree_bound))
        object.__setattr__(self, 'phi1', _truncated(tuple(self.phi1), self.degree_bound))

    @classmethod
    def zero(cls, arity: int, degree_bound: Optional[int] = None) -> 'ZeroCochain':
        x0 = ChartSeries.zero('x', arity)
        w0 = ChartSeries.zero('w', arity)
        return cls((x0, x0), (w0, w0), degree_bound)

    @property
    def arity(self) -> int:
        return self.phi0[0].arity

    def components(self) -> tuple[ChartSeries, ...]:
        return (*self.phi0, *self.phi1)

    def is_zero(self) -> bool:
        return not any(self.components())

    def with_bound(self, degree_bound: Optional[int]) -> 'ZeroCochain':
        return ZeroCochain(self.phi0, self.phi1, degree_bound)

    def __add__(self, other: 'ZeroCochain') -> 'ZeroCochain':
        return ZeroCochain(
            (self.phi0[0] + other.phi0[0], self.phi0[1] + other.phi0[1]),
            (self.phi1[0] + other.phi1[0], self.phi1[1] + other.phi1[1]),
            _min_bound(self.degree_bound, other.degree_bound),
        )

    def __neg__(self) -> 'ZeroCochain':
        return ZeroCochain((-self.phi0[0], -self.phi0[1]),
                           (-self.phi1[0], -self.phi1[1]), self.degree_bound)

    def __sub__(self, other: 'ZeroCochain') -> 'ZeroCochain':
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, ZeroCochain):
            return NotImplemented
        return self.phi0 == other.phi0 and self.phi1 == other.phi1

    def __hash__(self):
        return hash((self.phi0, self.phi1))

    def homogeneous_part(self, degree: int) -> 'ZeroCochain':
        """Keep only the coefficient terms of total a-degree ``degree``."""
        def part(series: ChartSeries) -> ChartSeries:
            return series.map_coefficients(
                lambda c: c.homogeneous_parts().get(degree, c.zero(c.arity)))
        return ZeroCochain((part(self.phi0[0]), part(self.phi0[1])),
                           (part(self.phi1[0]), part(self.phi1[1])))


@dataclass(frozen=True)
class OneCochain:
    """Element of C^1, written in the V1 trivialization as a pair of series in w."""

    psi: Pair
    degree_bound: Optional[int] = None

    def __post_init__(self):
        for series in self.psi:
            if series.variable != 'w':
                raise StructuralError('one-cochains are expressed in w')
        object.__setattr__(self, 'psi', _truncated(tuple(self.psi), self.degree_bound))

    @classmethod
    def zero(cls, arity: int, degree_bound: Optional[int] = None) -> 'OneCochain':
        w0 = ChartSeries.zero('w', arity)
        return cls((w0, w0), degree_bound)

    @property
    def arity(self) -> int:
        return self.psi[0].arity

    @property
    def first(self) -> ChartSeries:
        return self.psi[0]

    @property
    def second(self) -> ChartSeries:
        return self.psi[1]

    def is_zero(self) -> bool:
        return not any(self.psi)

    def __add__(self, other: 'OneCochain') -> 'OneCochain':
        return OneCochain((self.psi[0] + other.psi[0], self.psi[1] + other.psi[1]),
                          _min_bound(self.degree_bound, other.degree_bound))

    def __neg__(self) -> 'OneCochain':
        return OneCochain((-self.psi[0], -self.psi[1]), self.degree_bound)

    def __sub__(self, other: 'OneCochain') -> 'OneCochain':
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, OneCochain):
            return NotImplemented
        return self.psi == other.psi

    def __hash__(self):
        return hash(self.psi)


def _min_bound(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)
