"""Exact arithmetic kernel.

Rationals are :class:`fractions.Fraction`. Polynomials are sparse maps from
exponent tuples to nonzero rationals; chart series are sparse Laurent
polynomials in one chart variable whose coefficients are polynomials in the
deformation parameters ``a_0..a_m``.
"""

import logging
import numbers
from fractions import Fraction
from types import MappingProxyType
from typing import TYPE_CHECKING, Iterable, Mapping, Optional, Union

from .errors import StructuralError, UnsupportedCompositionError

if TYPE_CHECKING:
    from .exprparse import GluingPoly

LOGGER = logging.getLogger(__name__)

Rat = Fraction
Scalar = Union[int, Fraction]

CHART_VARIABLES = ('x', 'w')


def to_rat(value) -> Fraction:
    """Coerce an integer or rational to a Fraction.

    Floats are rejected: the whole pipeline is exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, numbers.Integral):
        return Fraction(int(value))
    if isinstance(value, numbers.Rational):
        return Fraction(value.numerator, value.denominator)
    raise StructuralError(f'not an exact rational: {value!r}')


def _is_scalar(value) -> bool:
    return isinstance(value, numbers.Rational)


class SparsePoly:
    """Sparse polynomial over the rationals in a fixed number of variables.

    Instances are immutable. Subclasses decide which exponents are legal
    through :meth:`_check_exponent`.
    """

    __slots__ = ('_nvars', '_terms', '_hash')

    def __init__(self, nvars: int, terms: Optional[Mapping[tuple, Scalar]] = None):
        """Initialize the polynomial.

        Args:
            nvars: Number of variables.
            terms: Map from exponent tuple to coefficient. Zero coefficients
                are dropped.
        """
        if nvars < 0:
            raise StructuralError(f'negative variable count {nvars}')
        clean = {}
        for exponent, coeff in (terms or {}).items():
            exponent = tuple(int(e) for e in exponent)
            if len(exponent) != nvars:
                raise StructuralError(
                    f'exponent {exponent} has length {len(exponent)}, expected {nvars}'
                )
            self._check_exponent(exponent)
            coeff = to_rat(coeff)
            if coeff:
                clean[exponent] = clean.get(exponent, 0) + coeff
                if not clean[exponent]:
                    del clean[exponent]
        self._nvars = nvars
        self._terms = clean
        self._hash = None

    @classmethod
    def _build(cls, nvars: int, terms: dict) -> 'SparsePoly':
        """Wrap an already canonical term map without re-validation."""
        poly = cls.__new__(cls)
        poly._nvars = nvars
        poly._terms = terms
        poly._hash = None
        return poly

    def _check_exponent(self, exponent: tuple):
        """Reject exponents the subclass cannot represent."""

    def _new(self, terms: dict) -> 'SparsePoly':
        return type(self)._build(self._nvars, terms)

    # Constructors

    @classmethod
    def constant(cls, nvars: int, value: Scalar) -> 'SparsePoly':
        """Create the constant polynomial ``value``."""
        value = to_rat(value)
        return cls._build(nvars, {(0,) * nvars: value} if value else {})

    @classmethod
    def zero(cls, nvars: int) -> 'SparsePoly':
        """Create the zero polynomial."""
        return cls._build(nvars, {})

    # Accessors

    @property
    def nvars(self) -> int:
        return self._nvars

    @property
    def terms(self) -> Mapping[tuple, Fraction]:
        """Read-only view of the term map."""
        return MappingProxyType(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, exponent: tuple) -> Fraction:
        return self._terms.get(tuple(exponent), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self._nvars, Fraction(0))

    # Comparison

    def __eq__(self, other):
        if _is_scalar(other):
            return self._terms == self.constant(self._nvars, other)._terms
        if not isinstance(other, SparsePoly) or type(other) is not type(self):
            return NotImplemented
        return self._nvars == other._nvars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, self._nvars, frozenset(self._terms.items())))
        return self._hash

    # Arithmetic

    def _coerce(self, other) -> 'SparsePoly':
        if _is_scalar(other):
            return self.constant(self._nvars, other)
        if type(other) is not type(self):
            raise StructuralError(
                f'cannot combine {type(self).__name__} with {type(other).__name__}'
            )
        if other._nvars != self._nvars:
            raise StructuralError(f'arity mismatch: {self._nvars} vs {other._nvars}')
        return other

    def __add__(self, other):
        other = self._coerce(other)
        if not other._terms:
            return self
        result = dict(self._terms)
        for exponent, coeff in other._terms.items():
            value = result.get(exponent, 0) + coeff
            if value:
                result[exponent] = value
            else:
                result.pop(exponent, None)
        return self._new(result)

    __radd__ = __add__

    def __neg__(self):
        return self._new({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, factor: Scalar) -> 'SparsePoly':
        """Multiply every coefficient by a rational."""
        factor = to_rat(factor)
        if not factor:
            return self._new({})
        return self._new({e: c * factor for e, c in self._terms.items()})

    def __mul__(self, other):
        if _is_scalar(other):
            return self.scale(other)
        return self.multiply(other)

    __rmul__ = __mul__

    def multiply(self, other: 'SparsePoly', degree: Optional[int] = None) -> 'SparsePoly':
        """Multiply, optionally dropping products of total degree above ``degree``.

        Args:
            other: Second factor, same type and arity.
            degree: Truncation bound on the total degree, or None.

        Returns:
            The (truncated) product.
        """
        other = self._coerce(other)
        result: dict = {}
        for e1, c1 in self._terms.items():
            d1 = sum(e1) if degree is not None else 0
            for e2, c2 in other._terms.items():
                if degree is not None and d1 + sum(e2) > degree:
                    continue
                exponent = tuple(a + b for a, b in zip(e1, e2))
                value = result.get(exponent, 0) + c1 * c2
                if value:
                    result[exponent] = value
                else:
                    del result[exponent]
        return self._new(result)

    def __pow__(self, k: int):
        if not isinstance(k, numbers.Integral) or k < 0:
            raise StructuralError(f'exponent must be a nonnegative integer, got {k!r}')
        result = self.constant(self._nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __repr__(self):
        return f'{type(self).__name__}({self})'


class ParamPoly(SparsePoly):
    """Polynomial in the deformation parameters ``a_0..a_m``."""

    __slots__ = ()

    def _check_exponent(self, exponent: tuple):
        if any(e < 0 for e in exponent):
            raise StructuralError(f'negative parameter exponent in {exponent}')

    @property
    def arity(self) -> int:
        return self._nvars

    @classmethod
    def generator(cls, arity: int, j: int) -> 'ParamPoly':
        """Create the parameter ``a_j``."""
        if not 0 <= j < arity:
            raise StructuralError(f'parameter index {j} out of range 0..{arity - 1}')
        exponent = tuple(1 if i == j else 0 for i in range(arity))
        return cls._build(arity, {exponent: Fraction(1)})

    @classmethod
    def generators(cls, arity: int) -> list['ParamPoly']:
        return [cls.generator(arity, j) for j in range(arity)]

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def min_degree(self) -> Optional[int]:
        """Lowest total degree of a term; None for the zero polynomial."""
        return min((sum(e) for e in self._terms), default=None)

    def truncate(self, degree: int) -> 'ParamPoly':
        """Drop all terms of total degree above ``degree``."""
        if degree < 0:
            raise StructuralError(f'truncation degree must be >= 0, got {degree}')
        if self.degree() <= degree:
            return self
        return self._new({e: c for e, c in self._terms.items() if sum(e) <= degree})

    def homogeneous_parts(self) -> dict[int, 'ParamPoly']:
        """Split into homogeneous components keyed by total degree."""
        parts: dict[int, dict] = {}
        for exponent, coeff in self._terms.items():
            parts.setdefault(sum(exponent), {})[exponent] = coeff
        return {d: self._new(terms) for d, terms in sorted(parts.items())}

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def diff(self, j: int) -> 'ParamPoly':
        """Partial derivative with respect to ``a_j``."""
        if not 0 <= j < self._nvars:
            raise StructuralError(f'parameter index {j} out of range 0..{self._nvars - 1}')
        result = {}
        for exponent, coeff in self._terms.items():
            power = exponent[j]
            if power:
                lowered = exponent[:j] + (power - 1,) + exponent[j + 1:]
                result[lowered] = coeff * power
        return self._new(result)

    def evaluate(self, point: Iterable):
        """Evaluate at a point.

        Rational points give an exact Fraction; float points give a float.
        """
        point = list(point)
        if len(point) != self._nvars:
            raise StructuralError(f'point has length {len(point)}, expected {self._nvars}')
        total = 0
        for exponent, coeff in self._terms.items():
            term = coeff
            for value, power in zip(point, exponent):
                if power:
                    term = term * value ** power
            total = total + term
        return total

    def __str__(self):
        from .exprparse import print_canonical
        return print_canonical(self)


def poly_arith(p: ParamPoly, q, op: str) -> ParamPoly:
    """Apply ``add``, ``sub``, ``mul`` or ``pow`` (q is then the integer k)."""
    if op == 'add':
        return p + q
    if op == 'sub':
        return p - q
    if op == 'mul':
        return p * q
    if op == 'pow':
        return p ** q
    raise StructuralError(f'unknown polynomial operation {op!r}')


def poly_diff(p: ParamPoly, j: int) -> ParamPoly:
    return p.diff(j)


class ChartSeries:
    """Laurent polynomial in ``x`` or ``w`` with ParamPoly coefficients.

    A series in ``x`` with only nonnegative exponents is holomorphic on V0,
    likewise for ``w`` on V1. On the overlap ``w = x^-1``.
    """

    __slots__ = ('_variable', '_arity', '_terms', '_hash')

    def __init__(self, variable: str, arity: int,
                 terms: Optional[Mapping[int, Union[ParamPoly, Scalar]]] = None):
        """Initialize the series.

        Args:
            variable: Chart variable, ``'x'`` or ``'w'``.
            arity: Number of deformation parameters of the coefficients.
            terms: Map from integer exponent to coefficient.
        """
        if variable not in CHART_VARIABLES:
            raise StructuralError(f'unknown chart variable {variable!r}')
        clean = {}
        for exponent, coeff in (terms or {}).items():
            if _is_scalar(coeff):
                coeff = ParamPoly.constant(arity, coeff)
            elif not isinstance(coeff, ParamPoly) or coeff.arity != arity:
                raise StructuralError(f'coefficient of {variable}^{exponent} has wrong arity')
            if coeff:
                clean[int(exponent)] = coeff
        self._variable = variable
        self._arity = arity
        self._terms = clean
        self._hash = None

    @classmethod
    def _build(cls, variable: str, arity: int, terms: dict) -> 'ChartSeries':
        series = cls.__new__(cls)
        series._variable = variable
        series._arity = arity
        series._terms = terms
        series._hash = None
        return series

    def _new(self, terms: dict, variable: Optional[str] = None) -> 'ChartSeries':
        return ChartSeries._build(variable or self._variable, self._arity, terms)

    @classmethod
    def zero(cls, variable: str, arity: int) -> 'ChartSeries':
        return cls._build(variable, arity, {})

    @classmethod
    def monomial(cls, variable: str, exponent: int, coeff) -> 'ChartSeries':
        """Create ``coeff * variable^exponent``; ``coeff`` must be a ParamPoly."""
        if not isinstance(coeff, ParamPoly):
            raise StructuralError('monomial coefficient must be a ParamPoly')
        return cls(variable, coeff.arity, {exponent: coeff})

    @classmethod
    def from_coefficients(cls, variable: str, coeffs: Mapping[int, ParamPoly],
                          arity: int) -> 'ChartSeries':
        return cls(variable, arity, dict(coeffs))

    @property
    def variable(self) -> str:
        return self._variable

    @property
    def arity(self) -> int:
        return self._arity

    @property
    def terms(self) -> Mapping[int, ParamPoly]:
        return MappingProxyType(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def exponents(self) -> list[int]:
        return sorted(self._terms)

    def coefficient(self, exponent: int) -> ParamPoly:
        return self._terms.get(exponent) or ParamPoly.zero(self._arity)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def min_exponent(self) -> Optional[int]:
        return min(self._terms, default=None)

    def max_exponent(self) -> Optional[int]:
        return max(self._terms, default=None)

    def is_holomorphic(self) -> bool:
        """True when no negative exponents occur."""
        return all(e >= 0 for e in self._terms)

    def min_degree(self) -> Optional[int]:
        """Lowest total a-degree among all coefficients."""
        degrees = [c.min_degree() for c in self._terms.values()]
        return min(degrees, default=None)

    def __eq__(self, other):
        if not isinstance(other, ChartSeries):
            return NotImplemented
        return (self._variable == other._variable and self._arity == other._arity
                and self._terms == other._terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._variable, self._arity, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        body = ' + '.join(f'({c}){self._variable}^{e}' for e, c in self.items()) or '0'
        return f'ChartSeries[{self._variable}]({body})'

    def _check_compatible(self, other: 'ChartSeries'):
        if not isinstance(other, ChartSeries):
            raise StructuralError(f'expected ChartSeries, got {type(other).__name__}')
        if other._variable != self._variable:
            raise StructuralError(
                f'chart variable mismatch: {self._variable} vs {other._variable}'
            )
        if other._arity != self._arity:
            raise StructuralError(f'arity mismatch: {self._arity} vs {other._arity}')

    def __add__(self, other):
        self._check_compatible(other)
        result = dict(self._terms)
        for exponent, coeff in other._terms.items():
            value = result[exponent] + coeff if exponent in result else coeff
            if value:
                result[exponent] = value
            else:
                result.pop(exponent, None)
        return self._new(result)

    def __neg__(self):
        return self._new({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, ChartSeries):
            return self.multiply(other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, factor, degree: Optional[int] = None) -> 'ChartSeries':
        """Multiply every coefficient by a rational or a ParamPoly."""
        result = {}
        for exponent, coeff in self._terms.items():
            if isinstance(factor, ParamPoly):
                value = coeff.multiply(factor, degree)
            else:
                value = coeff.scale(factor)
            if value:
                result[exponent] = value
        return self._new(result)

    def multiply(self, other: 'ChartSeries', degree: Optional[int] = None) -> 'ChartSeries':
        """Laurent product, optionally truncated in the parameters.

        Args:
            other: Series in the same chart variable.
            degree: Drop coefficient terms of total a-degree above this.

        Returns:
            The product series.
        """
        self._check_compatible(other)
        result: dict[int, ParamPoly] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                product = c1.multiply(c2, degree)
                if not product:
                    continue
                exponent = e1 + e2
                value = result[exponent] + product if exponent in result else product
                if value:
                    result[exponent] = value
                else:
                    del result[exponent]
        return self._new(result)

    def power(self, k: int, degree: Optional[int] = None) -> 'ChartSeries':
        """Raise to a nonnegative integer power with optional truncation."""
        if k < 0:
            raise StructuralError(f'series exponent must be >= 0, got {k}')
        result = ChartSeries(self._variable, self._arity, {0: 1})
        base = self
        while k:
            if k & 1:
                result = result.multiply(base, degree)
            k >>= 1
            if k:
                base = base.multiply(base, degree)
        return result

    def shift(self, k: int) -> 'ChartSeries':
        """Multiply by ``variable^k``."""
        if not k:
            return self
        return self._new({e + k: c for e, c in self._terms.items()})

    def select(self, keep) -> 'ChartSeries':
        """Keep only the terms whose exponent satisfies ``keep``."""
        return self._new({e: c for e, c in self._terms.items() if keep(e)})

    def truncate(self, degree: int) -> 'ChartSeries':
        """Drop coefficient terms of total a-degree above ``degree``."""
        result = {}
        for exponent, coeff in self._terms.items():
            coeff = coeff.truncate(degree)
            if coeff:
                result[exponent] = coeff
        return self._new(result)

    def converted(self) -> 'ChartSeries':
        """Rewrite in the other chart variable using ``w = x^-1``."""
        other = 'w' if self._variable == 'x' else 'x'
        return self._new({-e: c for e, c in self._terms.items()}, variable=other)

    def map_coefficients(self, func) -> 'ChartSeries':
        result = {}
        for exponent, coeff in self._terms.items():
            value = func(coeff)
            if value:
                result[exponent] = value
        return self._new(result)


def series_mul(s: ChartSeries, t: ChartSeries) -> ChartSeries:
    return s.multiply(t)


def chart_convert(s: ChartSeries) -> ChartSeries:
    return s.converted()


def truncate_params(value, degree: int):
    """Truncate a ParamPoly or ChartSeries to total a-degree ``degree``."""
    if degree < 0:
        raise StructuralError(f'truncation degree must be >= 0, got {degree}')
    return value.truncate(degree)


def series_substitute_y(r: 'GluingPoly', y1_val: ChartSeries, y2_val: ChartSeries,
                        degree: Optional[int] = None) -> ChartSeries:
    """Expand ``r(x, y1_val, y2_val)`` as a Laurent series in ``x``.

    Args:
        r: Gluing polynomial in ``x, y1, y2``.
        y1_val: Series in ``x`` substituted for ``y1``.
        y2_val: Series in ``x`` substituted for ``y2``.
        degree: Optional a-degree truncation applied after every product.

    Returns:
        The expanded series in ``x``.
    """
    if y1_val.variable != 'x' or y2_val.variable != 'x':
        raise StructuralError('y-values must be series in x')
    y1_val._check_compatible(y2_val)
    arity = y1_val.arity
    powers = ({0: ChartSeries('x', arity, {0: 1})}, {0: ChartSeries('x', arity, {0: 1})})

    def power_of(slot: int, k: int) -> ChartSeries:
        cache = powers[slot]
        if k not in cache:
            base = y1_val if slot == 0 else y2_val
            cache[k] = power_of(slot, k - 1).multiply(base, degree)
        return cache[k]

    result = ChartSeries.zero('x', arity)
    for (ex, e1, e2), coeff in r.items():
        product = power_of(0, e1)
        if e2:
            product = product.multiply(power_of(1, e2), degree)
        if product:
            result = result + product.shift(ex).scale(coeff)
    return result


def series_compose_w(phi: ChartSeries, wmap: ChartSeries,
                     degree: Optional[int] = None) -> ChartSeries:
    """Evaluate ``phi(w)`` at ``w = wmap(x)`` by Horner's rule.

    Args:
        phi: Polynomial in ``w`` (no negative exponents).
        wmap: Series in ``x``, typically ``x^-1 + h(x, phi^0)``.
        degree: Optional a-degree truncation.

    Returns:
        The composition as a Laurent series in ``x``.
    """
    if phi.variable != 'w':
        raise StructuralError('composition expects phi in w')
    if wmap.variable != 'x':
        raise StructuralError('composition expects wmap in x')
    if not phi.is_holomorphic():
        raise UnsupportedCompositionError(
            f'phi has negative w-exponent {phi.min_exponent()}'
        )
    if phi.is_zero():
        return ChartSeries.zero('x', phi.arity)
    result = ChartSeries.zero('x', phi.arity)
    for exponent in range(phi.max_exponent(), -1, -1):
        result = result.multiply(wmap, degree)
        coeff = phi.coefficient(exponent)
        if coeff:
            result = result + ChartSeries('x', phi.arity, {0: coeff})
    return result
