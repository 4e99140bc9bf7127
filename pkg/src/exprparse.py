"""Polynomial expression parser and canonical printer.

Grammar (whitespace insignificant)::

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' ['-'] integer)?
    atom   := variable | integer ['/' integer] | '(' expr ')'

Gluing expressions use the variables ``x``, ``y1``, ``y2``; parameter
polynomials use ``a0..am``. Implicit multiplication is rejected.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .algebra import ParamPoly, SparsePoly
from .errors import ExprParseError, StructuralError

GLUING_VARIABLES = ('x', 'y1', 'y2')

_TOKEN_RE = re.compile(r'\s*(?:(\d+)|([A-Za-z][A-Za-z0-9]*)|(\S))')


class GluingPoly(SparsePoly):
    """Polynomial in ``x, y1, y2``; ``x`` may carry negative exponents.

    Used for the gluing corrections f, g, h, which only need to be
    holomorphic on the overlap of the two charts.
    """

    __slots__ = ()

    def __init__(self, terms=None):
        super().__init__(3, terms)

    @classmethod
    def _build(cls, nvars, terms):
        return super()._build(3, terms)

    @classmethod
    def constant(cls, nvars_or_value, value=None) -> 'GluingPoly':
        if value is None:
            value = nvars_or_value
        return super().constant(3, value)

    @classmethod
    def zero(cls, nvars: int = 3) -> 'GluingPoly':
        return cls._build(3, {})

    @classmethod
    def variable(cls, name: str) -> 'GluingPoly':
        index = GLUING_VARIABLES.index(name)
        exponent = tuple(1 if i == index else 0 for i in range(3))
        return cls._build(3, {exponent: Fraction(1)})

    def _check_exponent(self, exponent: tuple):
        if exponent[1] < 0 or exponent[2] < 0:
            raise StructuralError(f'negative y-exponent in {exponent}')

    def inverse(self) -> 'GluingPoly':
        """Invert a single monomial ``c * x^k``."""
        if len(self._terms) != 1:
            raise StructuralError('only a single x-monomial can be inverted')
        (ex, e1, e2), coeff = next(iter(self._terms.items()))
        if e1 or e2:
            raise StructuralError('negative exponent on y1/y2')
        return self._build(3, {(-ex, 0, 0): 1 / coeff})

    def y_degree(self) -> Optional[int]:
        """Lowest combined y-degree of a term; None for zero."""
        return min((e1 + e2 for _, e1, e2 in self._terms), default=None)

    def low_y_monomials(self, bound: int = 2) -> list[tuple]:
        """Exponents whose y-degree is below ``bound``."""
        return sorted(e for e in self._terms if e[1] + e[2] < bound)

    def depends_on_y1(self) -> bool:
        return any(e1 for _, e1, _ in self._terms)

    def min_x_exponent(self) -> Optional[int]:
        return min((ex for ex, _, _ in self._terms), default=None)

    def max_x_exponent(self) -> Optional[int]:
        return max((ex for ex, _, _ in self._terms), default=None)

    def is_holomorphic_on_u0(self) -> bool:
        """True when no negative x-powers occur."""
        return all(ex >= 0 for ex, _, _ in self._terms)

    def y2_derivative(self) -> 'GluingPoly':
        result = {}
        for (ex, e1, e2), coeff in self._terms.items():
            if e2:
                result[(ex, e1, e2 - 1)] = coeff * e2
        return self._build(3, result)

    def __str__(self):
        return print_canonical(self)


@dataclass(frozen=True)
class Token:
    """Lexical token with its 1-based source offset."""

    kind: str  # 'int', 'name', 'op', 'end'
    text: str
    position: int


def tokenize(source: str) -> list[Token]:
    """Split an expression into tokens.

    Args:
        source: Expression text.

    Returns:
        Tokens followed by an ``end`` token.
    """
    tokens = []
    pos = 0
    while pos < len(source):
        match = _TOKEN_RE.match(source, pos)
        if not match or match.end() == pos:
            break
        number, name, op = match.groups()
        start = match.start(match.lastindex) + 1 if match.lastindex else pos + 1
        if number is not None:
            tokens.append(Token('int', number, start))
        elif name is not None:
            tokens.append(Token('name', name, start))
        elif op is not None:
            if op not in '+-*/^()':
                raise ExprParseError(f'unexpected character {op!r}', start, source)
            tokens.append(Token('op', op, start))
        pos = match.end()
    tokens.append(Token('end', '', len(source) + 1))
    return tokens


class Parser:
    """Recursive-descent parser building sparse polynomials."""

    def __init__(self, source: str, variables: Sequence[str], poly_type: type,
                 nvars: int):
        """Initialize the parser.

        Args:
            source: Expression text.
            variables: Variable names, by index.
            poly_type: SparsePoly subclass to build.
            nvars: Number of variables of ``poly_type``.
        """
        self.source = source
        self.variables = {name: i for i, name in enumerate(variables)}
        self.poly_type = poly_type
        self.nvars = nvars
        self.tokens = tokenize(source)
        self.index = 0

    def parse(self) -> SparsePoly:
        if self._peek().kind == 'end':
            raise self._error('empty expression', self._peek())
        result = self._expr()
        token = self._peek()
        if token.kind != 'end':
            raise self._error(f'unexpected {self._describe(token)}', token)
        return result

    # Helpers

    def _peek(self) -> Token:
        return self.tokens[self.index]

    def _next(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def _accept(self, op: str) -> bool:
        token = self._peek()
        if token.kind == 'op' and token.text == op:
            self.index += 1
            return True
        return False

    def _error(self, message: str, token: Token) -> ExprParseError:
        return ExprParseError(message, token.position, self.source)

    @staticmethod
    def _describe(token: Token) -> str:
        return 'end of input' if token.kind == 'end' else f'token {token.text!r}'

    def _constant(self, value) -> SparsePoly:
        return self.poly_type.constant(self.nvars, value)

    # Grammar rules

    def _expr(self) -> SparsePoly:
        negate = self._accept('-')
        result = self._term()
        if negate:
            result = -result
        while True:
            if self._accept('+'):
                result = result + self._term()
            elif self._accept('-'):
                result = result - self._term()
            else:
                return result

    def _term(self) -> SparsePoly:
        result = self._factor()
        while self._accept('*'):
            result = result * self._factor()
        return result

    def _factor(self) -> SparsePoly:
        base = self._atom()
        if not self._accept('^'):
            return base
        negative = self._accept('-')
        token = self._next()
        if token.kind != 'int':
            raise self._error('exponent must be an integer', token)
        following = self._peek()
        if following.kind == 'op' and following.text == '/':
            raise self._error('exponent must be an integer', following)
        exponent = int(token.text)
        if negative and exponent:
            try:
                base = base.inverse()
            except (AttributeError, StructuralError):
                raise self._error('negative exponent on a non-invertible base', token) from None
        return base ** exponent

    def _atom(self) -> SparsePoly:
        token = self._next()
        if token.kind == 'int':
            value = Fraction(int(token.text))
            if self._accept('/'):
                denominator = self._next()
                if denominator.kind != 'int':
                    raise self._error('expected integer denominator', denominator)
                if int(denominator.text) == 0:
                    raise self._error('division by zero', denominator)
                value = value / int(denominator.text)
            return self._constant(value)
        if token.kind == 'name':
            if token.text not in self.variables:
                if token.text == 'w':
                    raise self._error("'w' is not an input variable; write data in x, y1, y2", token)
                raise self._error(f'unknown variable {token.text!r}', token)
            index = self.variables[token.text]
            exponent = tuple(1 if i == index else 0 for i in range(self.nvars))
            return self.poly_type._build(self.nvars, {exponent: Fraction(1)})
        if token.kind == 'op' and token.text == '(':
            inner = self._expr()
            closing = self._next()
            if closing.kind != 'op' or closing.text != ')':
                raise self._error(f"expected ')' but found {self._describe(closing)}", closing)
            return inner
        raise self._error(f'unexpected {self._describe(token)}', token)


def parse_expr(src: str) -> GluingPoly:
    """Parse a gluing expression in ``x, y1, y2``."""
    return Parser(src, GLUING_VARIABLES, GluingPoly, 3).parse()


def parse_param_poly(src: str, arity: int) -> ParamPoly:
    """Parse a polynomial in ``a0..a{arity-1}``."""
    names = [f'a{i}' for i in range(arity)]
    return Parser(src, names, ParamPoly, arity).parse()


def _format_monomial(exponent: tuple, names: Sequence[str]) -> str:
    factors = []
    for name, power in zip(names, exponent):
        if power == 1:
            factors.append(name)
        elif power:
            factors.append(f'{name}^{power}')
    return '*'.join(factors)


def _sort_key(poly: SparsePoly):
    if isinstance(poly, GluingPoly):
        return lambda e: (e[1] + e[2], -e[2], e[0])
    return lambda e: (sum(e), tuple(-p for p in reversed(e)))


def print_canonical(p: Union[GluingPoly, ParamPoly]) -> str:
    """Render a polynomial deterministically.

    Terms are ordered by ascending degree (y-degree for gluing data, total
    a-degree for parameter polynomials); a coefficient of 1 is omitted and
    rationals print as ``p/q``.
    """
    if not p:
        return '0'
    if isinstance(p, GluingPoly):
        names = GLUING_VARIABLES
    else:
        names = [f'a{i}' for i in range(p.nvars)]
    pieces = []
    for exponent in sorted(p.terms, key=_sort_key(p)):
        coeff = p.terms[exponent]
        monomial = _format_monomial(exponent, names)
        if not pieces:
            if not monomial:
                body = str(coeff)
            elif coeff == 1:
                body = monomial
            else:
                body = f'{coeff}*{monomial}'
            pieces.append(body)
            continue
        sign = '-' if coeff < 0 else '+'
        magnitude = abs(coeff)
        if not monomial:
            body = str(magnitude)
        elif coeff == 1:
            body = monomial
        else:
            body = f'{magnitude}*{monomial}'
        pieces.append(f'{sign} {body}')
    return ' '.join(pieces)
