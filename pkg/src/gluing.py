"""Validation of gluing data, the transition matrix and the universal H^0 section."""

import json
import logging
from pathlib import Path
from typing import Optional

from .algebra import ChartSeries, ParamPoly
from .errors import ValidationError
from .exprparse import GLUING_VARIABLES, GluingPoly, print_canonical
from .models.cochain import Pair, ZeroCochain
from .models.gluing_data import GluingData, TransitionMatrix

LOGGER = logging.getLogger(__name__)


def _monomial_text(exponent: tuple) -> str:
    return print_canonical(GluingPoly({exponent: 1}))


def is_laufer(d: GluingData) -> bool:
    """Check the Laufer shape: g = h = 0 and f = f(x, y2) holomorphic on U0."""
    return (d.g.is_zero() and d.h.is_zero() and not d.f.depends_on_y1()
            and d.f.is_holomorphic_on_u0())


def validate(d: GluingData) -> GluingData:
    """Check the normal form and record the Laufer flag.

    Args:
        d: Gluing data as read from input.

    Returns:
        The same data with ``laufer`` set.

    Raises:
        ValidationError: m < 0, n < 2, or a correction term outside I^2.
    """
    if not isinstance(d.m, int) or d.m < 0:
        raise ValidationError(f'm must be an integer >= 0, got {d.m!r}')
    if not isinstance(d.n, int) or d.n < 2:
        raise ValidationError(f'n must be an integer >= 2, got {d.n!r}')

    for name in ('f', 'g', 'h'):
        poly = getattr(d, name)
        offending = poly.low_y_monomials(2)
        if offending:
            exponent = offending[0]
            raise ValidationError(
                f'{name} has monomial {_monomial_text(exponent)} of y-degree '
                f'{exponent[1] + exponent[2]}; gluing terms must lie in I^2'
            )

    validated = d.with_laufer(is_laufer(d))
    LOGGER.info('validated gluing data m=%d n=%d laufer=%s', d.m, d.n, validated.laufer)
    return validated


def transition_matrix(d: GluingData) -> TransitionMatrix:
    return TransitionMatrix(m=d.m, n=d.n)


def section_of_H0(d: GluingData, degree_bound: Optional[int] = None) -> ZeroCochain:
    """Build the universal global section s(a).

    Returns:
        ((0, sum a_i x^i), (0, sum a_i w^(m-i))) with symbolic a_0..a_m.
    """
    arity = d.arity
    params = ParamPoly.generators(arity)
    y_part = ChartSeries('x', arity, {i: params[i] for i in range(arity)})
    z_part = ChartSeries('w', arity, {d.m - i: params[i] for i in range(arity)})
    return ZeroCochain(
        (ChartSeries.zero('x', arity), y_part),
        (ChartSeries.zero('w', arity), z_part),
        degree_bound,
    )


def apply_transition(phi: Pair, F: TransitionMatrix) -> Pair:
    """Multiply a row vector of local sections by F.

    The product is formed in the x-coordinate; the result is written in the
    other chart variable, so a pair in x comes back in w and vice versa.
    """
    result = []
    for series, exponent in zip(phi, F.exponents):
        in_x = series if series.variable == 'x' else series.converted()
        product = in_x.shift(exponent)
        result.append(product.converted() if series.variable == 'x' else product)
    return tuple(result)


def load_gluing_file(path: Path) -> GluingData:
    """Read and validate a JSON gluing file.

    Args:
        path: File with keys m, n, f and optionally g, h.

    Returns:
        Validated gluing data.
    """
    try:
        text = Path(path).read_text(encoding='utf-8')
    except OSError as exc:
        raise ValidationError(f'cannot read input file {path}: {exc.strerror}') from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f'input is not valid JSON: {exc.msg}') from exc

    if not isinstance(data, dict):
        raise ValidationError('input must be a JSON object')
    for key in ('m', 'n', 'f'):
        if key not in data:
            raise ValidationError(f'input is missing key {key!r}')
    for key in ('m', 'n'):
        if isinstance(data[key], bool) or not isinstance(data[key], int):
            raise ValidationError(f'{key} must be an integer')
    unknown = set(data) - {'m', 'n', 'f', 'g', 'h'}
    if unknown:
        LOGGER.info('ignoring unknown input keys: %s', ', '.join(sorted(unknown)))

    LOGGER.debug('parsing gluing expressions in %s', ', '.join(GLUING_VARIABLES))
    return validate(GluingData.from_dict(data))
