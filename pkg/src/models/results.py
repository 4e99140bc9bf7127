"""Result models: deformation equations, family charts, superpotential, critical points."""

from dataclasses import dataclass, field
from typing import Optional, Union

from ..algebra import ChartSeries, ParamPoly
from ..exprparse import print_canonical


def series_to_dict(series: ChartSeries) -> dict:
    """Map exponent strings to canonical coefficient strings."""
    return {str(e): print_canonical(c) for e, c in series.items()}


@dataclass(frozen=True)
class DeformationResult:
    """Deformation equations k_1..k_{n-1} and the auxiliary coefficients.

    ``k0`` and ``higher`` (k_j for j >= n) describe the universal family;
    only ``equations`` cut out the versal space.
    """

    m: int
    n: int
    equations: tuple[ParamPoly, ...]
    k0: ParamPoly
    higher: tuple[tuple[int, ParamPoly], ...] = ()
    method: str = 'laufer'  # 'laufer' or 'general'
    degree_bound: Union[int, str] = 'exact'

    @property
    def arity(self) -> int:
        return self.m + 1

    @property
    def is_square(self) -> bool:
        return len(self.equations) == self.arity

    def k(self, i: int) -> ParamPoly:
        """Get k_i for 0 <= i, reading k_0 and the family tail as well."""
        if i == 0:
            return self.k0
        if 1 <= i <= len(self.equations):
            return self.equations[i - 1]
        for j, poly in self.higher:
            if j == i:
                return poly
        return ParamPoly.zero(self.arity)

    def truncate(self, degree: int) -> 'DeformationResult':
        """Truncate every coefficient to total a-degree ``degree``."""
        return DeformationResult(
            m=self.m,
            n=self.n,
            equations=tuple(k.truncate(degree) for k in self.equations),
            k0=self.k0.truncate(degree),
            higher=tuple((j, k.truncate(degree)) for j, k in self.higher
                         if k.truncate(degree)),
            method=self.method,
            degree_bound=degree if self.degree_bound == 'exact' else min(degree, self.degree_bound),
        )

    def to_dict(self) -> dict:
        return {
            'm': self.m,
            'n': self.n,
            'method': self.method,
            'degree': self.degree_bound,
            'k': [print_canonical(k) for k in self.equations],
            'k0': print_canonical(self.k0),
            'higher': {str(j): print_canonical(k) for j, k in self.higher},
        }


@dataclass(frozen=True)
class FamilyCharts:
    """Universal family: y-chart on U0 (series in x) and z-chart on U1 (series in w)."""

    y1: ChartSeries
    y2: ChartSeries
    z1: ChartSeries
    z2: ChartSeries
    method: str = 'laufer'
    wmap: Optional[ChartSeries] = None  # x^-1 + h(x, y); None when h = 0

    def to_dict(self) -> dict:
        data = {
            'method': self.method,
            'U0': {'y1': series_to_dict(self.y1), 'y2': series_to_dict(self.y2)},
            'U1': {'z1': series_to_dict(self.z1), 'z2': series_to_dict(self.z2)},
        }
        if self.wmap is not None:
            data['w'] = series_to_dict(self.wmap)
        return data


@dataclass(frozen=True)
class Superpotential:
    """Potential W with dW/da_i = k_{n-1-i}, normalised by W(0) = 0."""

    W: ParamPoly
    m: int
    n: int

    def gradient(self) -> tuple[ParamPoly, ...]:
        return tuple(self.W.diff(i) for i in range(self.m + 1))

    def to_dict(self) -> dict:
        return {'W': print_canonical(self.W)}


@dataclass(frozen=True)
class CriticalPoint:
    """Endpoint of one Newton run."""

    point: tuple[float, ...]
    gradient_norm: float
    hessian_min_singular_value: float
    iterations: int
    converged: bool
    singular: bool = False
    exact_gradient_norm: Optional[float] = None  # set by the rational re-check
    start: tuple[float, ...] = field(default=(), compare=False)

    def to_dict(self) -> dict:
        data = {
            'point': [float(v) for v in self.point],
            'gradient_norm': float(self.gradient_norm),
            'hessian_min_singular_value': float(self.hessian_min_singular_value),
            'iterations': self.iterations,
            'converged': self.converged,
            'singular': self.singular,
        }
        if self.exact_gradient_norm is not None:
            data['exact_gradient_norm'] = self.exact_gradient_norm
        return data


@dataclass(frozen=True)
class GradientCheckReport:
    """Outcome of the finite-difference gradient check."""

    passed: bool
    max_deviation: float
    worst_point: tuple[float, ...]
    points_checked: int

    def to_dict(self) -> dict:
        return {
            'passed': self.passed,
            'max_deviation': self.max_deviation,
            'worst_point': list(self.worst_point),
            'points_checked': self.points_checked,
        }
