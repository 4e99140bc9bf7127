"""Fast path for Laufer curves: g = h = 0 and f = f(x, y2) holomorphic on U0.

Here L^-1(s(a)) has a closed form and the equations are read directly from
the Taylor coefficients of f(x, sum a_i x^i).
"""

import logging
from fractions import Fraction
from typing import Optional, Sequence

from .algebra import ChartSeries, ParamPoly, series_substitute_y
from .cech import lift_E0, map_L, project_B
from .errors import CheckFailure, NotLauferError
from .gluing import section_of_H0
from .models.cochain import OneCochain, ZeroCochain
from .models.gluing_data import GluingData
from .models.results import DeformationResult, FamilyCharts

LOGGER = logging.getLogger(__name__)


def _require_laufer(d: GluingData):
    if not d.laufer:
        raise NotLauferError('not a Laufer curve')


def _substituted_f(d: GluingData) -> ChartSeries:
    """f(x, sum a_i x^i) as a series in x."""
    y2 = section_of_H0(d).phi0[1]
    return series_substitute_y(d.f, ChartSeries.zero('x', d.arity), y2)


def taylor_coeffs(d: GluingData, max_index: Optional[int] = None) -> list[ParamPoly]:
    """Coefficients f_0..f_max of f(x, sum_j a_j x^j) = sum_i f_i(a) x^i.

    Args:
        d: Validated Laufer gluing data.
        max_index: Last index to return; defaults to the top x-degree.

    Returns:
        List of exact polynomials in a_0..a_m.
    """
    _require_laufer(d)
    series = _substituted_f(d)
    if max_index is None:
        max_index = series.max_exponent() if series else -1
    return [series.coefficient(i) for i in range(max_index + 1)]


def deformation_equations_laufer(d: GluingData) -> DeformationResult:
    """Equations k_i = -f_i, 1 <= i <= n-1, together with k_0 and the tail k_j, j >= n."""
    _require_laufer(d)
    series = _substituted_f(d)
    top = max(series.max_exponent() or 0, d.n - 1)
    coeffs = [series.coefficient(i) for i in range(top + 1)]

    equations = tuple(-coeffs[i] for i in range(1, d.n))
    higher = tuple((j, -coeffs[j]) for j in range(d.n, top + 1) if coeffs[j])
    LOGGER.info('laufer equations: %d taylor coefficients, %d tail terms',
                len(coeffs), len(higher))
    return DeformationResult(
        m=d.m,
        n=d.n,
        equations=equations,
        k0=-coeffs[0],
        higher=higher,
        method='laufer',
        degree_bound='exact',
    )


def _tail(d: GluingData, result: DeformationResult) -> ChartSeries:
    """sum_{j >= n} k_j x^(j-n), i.e. -h(x, a) in closed form."""
    return ChartSeries('x', d.arity, {j - d.n: k for j, k in result.higher})


def closed_form_Linv(d: GluingData) -> ZeroCochain:
    """Closed-form preimage ((-h, sum a_i x^i), (f_0, sum a_i w^(m-i))) of s(a).

    Raises:
        CheckFailure: map_L of the closed form differs from s(a).
    """
    _require_laufer(d)
    result = deformation_equations_laufer(d)
    section = section_of_H0(d)
    phi = ZeroCochain(
        (_tail(d, result), section.phi0[1]),
        (ChartSeries('w', d.arity, {0: -result.k0}), section.phi1[1]),
    )
    if map_L(phi, d) != section:
        raise CheckFailure('closed-form L^-1 does not map back to s(a)')
    return phi


def laufer_map_L(phi: ZeroCochain, d: GluingData) -> ZeroCochain:
    """Simplified L(phi) = phi + E0 B((-f(x, phi^0_2), 0)) valid for Laufer data."""
    _require_laufer(d)
    f_val = series_substitute_y(d.f, phi.phi0[0], phi.phi0[1], phi.degree_bound)
    psi = OneCochain(((-f_val).converted(), ChartSeries.zero('w', d.arity)), phi.degree_bound)
    return phi + lift_E0(project_B(psi, d.n), d)


def _evaluated(series: ChartSeries, point: Sequence[Fraction]) -> ChartSeries:
    return series.map_coefficients(
        lambda c: ParamPoly.constant(c.arity, c.evaluate(point)))


def verify_family(charts: FamilyCharts, d: GluingData,
                  point: Optional[Sequence[Fraction]] = None) -> bool:
    """Re-substitute the family charts into the gluing map.

    Symbolically, x^n y1 + f(x, y2) - z1 must equal -sum_{i=1}^{n-1} k_i x^i,
    which lies in the ideal of the equations. At a rational point of the
    versal space the residual must vanish identically in x.

    Args:
        charts: Laufer family charts.
        d: Laufer gluing data.
        point: Optional rational point a on the zero set of k_1..k_{n-1}.

    Returns:
        True when the gluing identities hold.
    """
    _require_laufer(d)
    z1_in_x = charts.z1.converted()
    residual = (charts.y1.shift(d.n)
                + series_substitute_y(d.f, charts.y1, charts.y2)
                - z1_in_x)
    z2_residual = charts.y2.shift(-d.m).converted() - charts.z2

    if point is None:
        result = deformation_equations_laufer(d)
        expected = ChartSeries('x', d.arity,
                               {i: -k for i, k in enumerate(result.equations, start=1)})
        return residual == expected and z2_residual.is_zero()
    point = [Fraction(v) for v in point]
    return (_evaluated(residual, point).is_zero()
            and _evaluated(z2_residual, point).is_zero())


def family_charts(d: GluingData) -> FamilyCharts:
    """Universal family over the versal space.

    U0: y1 = sum_{j >= n} k_j x^(j-n), y2 = sum a_i x^i.
    U1: z1 = -k_0 = f_0, z2 = sum a_i w^(m-i).
    """
    _require_laufer(d)
    result = deformation_equations_laufer(d)
    section = section_of_H0(d)
    charts = FamilyCharts(
        y1=_tail(d, result),
        y2=section.phi0[1],
        z1=ChartSeries('w', d.arity, {0: -result.k0}),
        z2=section.phi1[1],
        method='laufer',
    )
    if not verify_family(charts, d):
        raise CheckFailure('family charts do not satisfy the gluing map')
    return charts
