"""Calabi-Yau check, integrability and reconstruction of the superpotential."""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

from .algebra import ChartSeries, ParamPoly, series_substitute_y
from .errors import IntegrabilityError, NotCalabiYauError, StructuralError
from .exprparse import GluingPoly
from .models.gluing_data import GluingData
from .models.results import DeformationResult, Superpotential

LOGGER = logging.getLogger(__name__)


def cy_check(d: Union[GluingData, DeformationResult]) -> bool:
    """Trivial canonical bundle, equivalently m - n = -2."""
    return d.m - d.n == -2


def gradient_field(eqs: DeformationResult) -> list[ParamPoly]:
    """The field v_i = k_{n-1-i}, i = 0..m, for a square system."""
    if not cy_check(eqs) or not eqs.is_square:
        raise NotCalabiYauError(
            f'system is not square: m={eqs.m}, n={eqs.n} (needs m - n = -2)'
        )
    return [eqs.k(eqs.n - 1 - i) for i in range(eqs.arity)]


@dataclass(frozen=True)
class IntegrabilityReport:
    """Outcome of the symmetric-Jacobian test, with a witness on failure."""

    ok: bool
    pair: Optional[tuple[int, int]] = None
    difference: Optional[ParamPoly] = None

    def __bool__(self):
        return self.ok


def check_integrability(eqs: DeformationResult) -> IntegrabilityReport:
    """Check dv_i/da_j = dv_j/da_i for all i < j.

    The witness difference is dv_j/da_i - dv_i/da_j.
    """
    field = gradient_field(eqs)
    size = len(field)
    for i in range(size):
        for j in range(i + 1, size):
            difference = field[j].diff(i) - field[i].diff(j)
            if difference:
                LOGGER.debug('integrability fails at (%d, %d)', i, j)
                return IntegrabilityReport(False, (i, j), difference)
    return IntegrabilityReport(True)


def _lemma_series(r: GluingPoly, m: int) -> ChartSeries:
    if r.depends_on_y1():
        raise StructuralError('lemma polynomial must not depend on y1')
    if not r.is_holomorphic_on_u0():
        raise StructuralError('lemma polynomial must not have negative x-powers')
    arity = m + 1
    y = ChartSeries('x', arity, {i: ParamPoly.generator(arity, i) for i in range(arity)})
    return series_substitute_y(r, ChartSeries.zero('x', arity), y)


def lemma_triples(r: GluingPoly, m: int) -> list[tuple[int, int, int]]:
    """All (i, j, k) with 0 <= j <= m and 0 <= k + j - i <= m, i and k up to
    the top x-degree of r(x, sum a_j x^j) plus m."""
    top = (_lemma_series(r, m).max_exponent() or 0) + m
    return [(i, j, k)
            for i in range(top + 1)
            for j in range(m + 1)
            for k in range(top + 1)
            if 0 <= k + j - i <= m]


def coeff_symmetry_lemma_check(r: GluingPoly, m: int,
                               triples: Optional[Iterable[tuple[int, int, int]]] = None) -> bool:
    """Verify dh_i/da_j = dh_k/da_{k+j-i} for h = r(x, sum a_j x^j) = sum h_i x^i.

    Args:
        r: Polynomial in x and y2 (no y1, no negative x-powers).
        m: Top parameter index.
        triples: Index triples to check; all valid triples by default.

    Returns:
        True when every identity holds exactly.
    """
    if m < 0:
        raise StructuralError(f'm must be >= 0, got {m}')
    series = _lemma_series(r, m)
    if triples is None:
        triples = lemma_triples(r, m)
    for i, j, k in triples:
        if min(i, k) < 0 or not 0 <= j <= m or not 0 <= k + j - i <= m:
            raise StructuralError(f'index triple {(i, j, k)} out of range for m={m}')
        if series.coefficient(i).diff(j) != series.coefficient(k).diff(k + j - i):
            LOGGER.debug('lemma identity fails at %s', (i, j, k))
            return False
    return True


def integrate_potential(eqs: DeformationResult) -> Superpotential:
    """Reconstruct W with dW/da_i = k_{n-1-i} and W(0) = 0.

    Each homogeneous degree-d part of the field contributes
    (sum_i a_i v_i^(d)) / (d + 1) to W.

    Raises:
        NotCalabiYauError: System not square.
        IntegrabilityError: Field is not a gradient.
    """
    report = check_integrability(eqs)
    if not report:
        i, j = report.pair
        raise IntegrabilityError(
            f'dk/da not symmetric at ({i}, {j}): difference {report.difference}',
            i, j, report.difference,
        )
    field = gradient_field(eqs)
    params = ParamPoly.generators(eqs.arity)
    W = ParamPoly.zero(eqs.arity)
    for a_i, v_i in zip(params, field):
        for d, part in v_i.homogeneous_parts().items():
            W = W + (a_i * part).scale(Fraction(1, d + 1))

    for i, v_i in enumerate(field):
        if W.diff(i) != v_i:
            raise IntegrabilityError(f'reconstructed potential fails dW/da_{i} = k_{eqs.n - 1 - i}',
                                     i, i, W.diff(i) - v_i)
    LOGGER.info('superpotential reconstructed with %d terms', len(W))
    return Superpotential(W=W, m=eqs.m, n=eqs.n)
