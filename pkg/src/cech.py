"""Cech cochain machinery for the versal deformation space.

All one-cochains live in the V1 trivialization (series in w); the V0 half of
a zero-cochain is kept in x. The operator L = 1 + E0 B K - E0 delta is
inverted by fixed-point iteration graded by the degree in the parameters.
"""

import logging
from typing import Optional

from .algebra import ChartSeries, series_compose_w, series_substitute_y
from .errors import ConvergenceError, NotACoboundaryError, StructuralError
from .gluing import apply_transition, section_of_H0, transition_matrix
from .models.cochain import OneCochain, ZeroCochain
from .models.gluing_data import GluingData
from .models.results import DeformationResult, FamilyCharts

LOGGER = logging.getLogger(__name__)


def _bound(phi, degree: Optional[int]) -> Optional[int]:
    return degree if degree is not None else phi.degree_bound


def _check_n(n: int):
    if n < 2:
        raise StructuralError(f'n must be >= 2, got {n}')


def coboundary(phi: ZeroCochain, d: GluingData) -> OneCochain:
    """delta(phi) = phi^1 - phi^0 F, written in w."""
    transported = apply_transition(phi.phi0, transition_matrix(d))
    return OneCochain(
        (phi.phi1[0] - transported[0], phi.phi1[1] - transported[1]),
        phi.degree_bound,
    )


def _is_h1_exponent(exponent: int, n: int) -> bool:
    return -(n - 1) <= exponent <= -1


def project_H(psi: OneCochain, n: int) -> OneCochain:
    """Natural truncation onto H^1: keep b_{-1}..b_{-(n-1)}, drop the rest."""
    _check_n(n)
    first = psi.first.select(lambda e: _is_h1_exponent(e, n))
    return OneCochain((first, ChartSeries.zero('w', psi.arity)), psi.degree_bound)


def project_B(psi: OneCochain, n: int) -> OneCochain:
    """Projection onto the coboundaries; B + H is the identity on first components."""
    _check_n(n)
    first = psi.first.select(lambda e: not _is_h1_exponent(e, n))
    return OneCochain((first, psi.second), psi.degree_bound)


def lift_E0(psi: OneCochain, d: GluingData) -> ZeroCochain:
    """Right inverse of delta on the image of B.

    Args:
        psi: One-cochain with no first-component exponents in -(n-1)..-1.
        d: Gluing data supplying m and n.

    Returns:
        A zero-cochain phi with delta(phi) = psi.
    """
    n, m = d.n, d.m
    b, c = psi.first, psi.second
    stray = [e for e in b.exponents() if _is_h1_exponent(e, n)]
    if stray:
        raise NotACoboundaryError(f'first component has H^1 exponents {stray}')
    arity = psi.arity

    phi0_1 = ChartSeries('x', arity, {-n - i: -coeff for i, coeff in b.items() if i <= -n})
    phi0_2 = ChartSeries('x', arity, {m - i: -coeff for i, coeff in c.items() if i < 0})
    phi1_1 = b.select(lambda e: e >= 0)
    phi1_2 = c.select(lambda e: e >= 0)
    return ZeroCochain((phi0_1, phi0_2), (phi1_1, phi1_2), psi.degree_bound)


def overlap_wmap(phi: ZeroCochain, d: GluingData, degree: Optional[int] = None) -> ChartSeries:
    """The curve's w-coordinate on the overlap: x^-1 + h(x, phi^0)."""
    y1, y2 = phi.phi0
    hval = series_substitute_y(d.h, y1, y2, degree)
    return ChartSeries('x', phi.arity, {-1: 1}) + hval


def map_K(phi: ZeroCochain, d: GluingData, degree: Optional[int] = None) -> OneCochain:
    """Patching defect of the curve defined by phi.

    The cochain defines a compact curve exactly when K(phi) = 0.

    Args:
        phi: Zero-cochain.
        d: Gluing data.
        degree: a-degree truncation; defaults to ``phi.degree_bound``.

    Returns:
        K(phi) in the V1 trivialization.
    """
    degree = _bound(phi, degree)
    y1, y2 = phi.phi0
    if d.h.is_zero():
        z1 = phi.phi1[0].converted()
        z2 = phi.phi1[1].converted()
    else:
        wmap = overlap_wmap(phi, d, degree)
        z1 = series_compose_w(phi.phi1[0], wmap, degree)
        z2 = series_compose_w(phi.phi1[1], wmap, degree)

    first = z1 - y1.shift(d.n) - series_substitute_y(d.f, y1, y2, degree)
    second = z2 - y2.shift(-d.m) - series_substitute_y(d.g, y1, y2, degree)
    return OneCochain((first.converted(), second.converted()), degree)


def _correction(phi: ZeroCochain, d: GluingData, degree: Optional[int]) -> ZeroCochain:
    """E0 B (K - delta)(phi), the nonlinear part of L."""
    defect = map_K(phi, d, degree) - coboundary(phi, d)
    return lift_E0(project_B(defect, d.n), d)


def map_L(phi: ZeroCochain, d: GluingData, degree: Optional[int] = None) -> ZeroCochain:
    """L(phi) = phi + E0 B K(phi) - E0 delta(phi)."""
    degree = _bound(phi, degree)
    return (phi + _correction(phi, d, degree)).with_bound(degree)


def invert_L(target: ZeroCochain, d: GluingData, degree: int) -> ZeroCochain:
    """Solve L(phi) = target modulo a-degree above ``degree``.

    Iterates phi <- target - E0 B (K - delta)(phi). Each pass fixes one more
    a-degree because f, g, h lie in I^2.

    Args:
        target: Usually the universal section s(a).
        d: Validated gluing data.
        degree: Truncation degree D >= 1.

    Returns:
        The truncated preimage phi*.

    Raises:
        ConvergenceError: No fixed point after D + 1 passes.
    """
    if degree < 1:
        raise StructuralError(f'degree bound must be >= 1, got {degree}')
    target = target.with_bound(degree)
    phi = target
    for iteration in range(1, degree + 2):
        updated = (target - _correction(phi, d, degree)).with_bound(degree)
        if updated == phi:
            LOGGER.debug('invert_L stabilised after %d iteration(s) at D=%d', iteration, degree)
            return phi
        phi = updated
    raise ConvergenceError(
        f'fixed-point iteration did not stabilise within {degree + 1} passes; '
        f'gluing data probably escaped the I^2 check'
    )


def is_in_M(phi: ZeroCochain, d: GluingData, degree: Optional[int] = None) -> bool:
    """True when phi patches to a compact curve, i.e. K(phi) = 0."""
    return map_K(phi, d, degree).is_zero()


def L_maps_M_into_H0(phi: ZeroCochain, d: GluingData, degree: Optional[int] = None) -> bool:
    """For phi in M, check that L(phi) is a global section (delta L(phi) = 0)."""
    if not is_in_M(phi, d, degree):
        raise StructuralError('cochain does not patch to a curve (K(phi) != 0)')
    return coboundary(map_L(phi, d, degree), d).is_zero()


def solve_universal_cochain(d: GluingData, degree: int) -> ZeroCochain:
    """phi* = L^-1(s(a)), checked against B K(phi*) = 0."""
    phi = invert_L(section_of_H0(d, degree), d, degree)
    residual = project_B(map_K(phi, d, degree), d.n)
    if not residual.is_zero():
        raise ConvergenceError('B K(L^-1(s(a))) does not vanish at the truncation degree')
    return phi


def deformation_equations_general(d: GluingData, degree: int) -> DeformationResult:
    """Compute k_1..k_{n-1} from H K L^-1(s(a)) = (sum k_i w^-i, 0).

    Args:
        d: Validated gluing data.
        degree: Truncation degree D.

    Returns:
        Equations truncated to a-degree D, with k0 and the family tail read
        off phi* = L^-1(s(a)).
    """
    phi = solve_universal_cochain(d, degree)
    representative = project_H(map_K(phi, d, degree), d.n)
    equations = tuple(representative.first.coefficient(-i) for i in range(1, d.n))

    k0 = -phi.phi1[0].coefficient(0)
    higher = tuple((e + d.n, coeff) for e, coeff in phi.phi0[0].items())
    LOGGER.info('general equations computed at D=%d (%d nonzero)',
                degree, sum(1 for k in equations if k))
    return DeformationResult(
        m=d.m,
        n=d.n,
        equations=equations,
        k0=k0,
        higher=higher,
        method='general',
        degree_bound=degree,
    )


def family_charts_general(d: GluingData, degree: int) -> FamilyCharts:
    """Universal family read from phi*: y = phi*^0(x), z = phi*^1(w)."""
    phi = solve_universal_cochain(d, degree)
    wmap = None if d.h.is_zero() else overlap_wmap(phi, d, degree)
    return FamilyCharts(
        y1=phi.phi0[0],
        y2=phi.phi0[1],
        z1=phi.phi1[0],
        z2=phi.phi1[1],
        method='general',
        wmap=wmap,
    )
