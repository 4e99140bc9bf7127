"""Gluing data model for a rational curve covered by two charts."""

from dataclasses import dataclass, field, replace

from ..exprparse import GluingPoly, parse_expr, print_canonical


@dataclass(frozen=True)
class GluingData:
    """Transition data near C, written in the coordinates of U0.

    z1 = x^n y1 + f,  z2 = x^-m y2 + g,  w = x^-1 + h.
    """

    m: int
    n: int
    f: GluingPoly = field(default_factory=GluingPoly.zero)
    g: GluingPoly = field(default_factory=GluingPoly.zero)
    h: GluingPoly = field(default_factory=GluingPoly.zero)
    laufer: bool = False  # set by gluing.validate

    @property
    def arity(self) -> int:
        """Number of deformation parameters a_0..a_m."""
        return self.m + 1

    @property
    def h0_dimension(self) -> int:
        return self.m + 1

    @property
    def h1_dimension(self) -> int:
        return self.n - 1

    @property
    def is_calabi_yau(self) -> bool:
        return self.m - self.n == -2

    def with_laufer(self, flag: bool) -> 'GluingData':
        return replace(self, laufer=flag)

    def to_dict(self) -> dict:
        """Convert to the JSON input schema."""
        return {
            'm': self.m,
            'n': self.n,
            'f': print_canonical(self.f),
            'g': print_canonical(self.g),
            'h': print_canonical(self.h),
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'GluingData':
        """Create gluing data from the JSON input schema.

        Expression strings are parsed; ``g`` and ``h`` default to zero.
        """
        return cls(
            m=data['m'],
            n=data['n'],
            f=parse_expr(str(data.get('f', '0'))),
            g=parse_expr(str(data.get('g', '0'))),
            h=parse_expr(str(data.get('h', '0'))),
        )


@dataclass(frozen=True)
class TransitionMatrix:
    """The normal bundle transition diag(x^n, x^-m) in the x-coordinate."""

    m: int
    n: int

    @property
    def exponents(self) -> tuple[int, int]:
        """x-exponents of the two diagonal entries."""
        return (self.n, -self.m)

    @property
    def determinant_exponent(self) -> int:
        return self.n - self.m

    def inverse(self) -> 'TransitionMatrix':
        return TransitionMatrix(m=-self.m, n=-self.n)
