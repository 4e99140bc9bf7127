"""Text and JSON rendering of pipeline results.

Both formats are deterministic: polynomials are printed in canonical form,
keys keep insertion order and floats use a fixed precision in text.
"""

import json
from typing import Optional, Sequence, Union

from .algebra import ChartSeries
from .exprparse import print_canonical
from .models.results import CriticalPoint, DeformationResult, FamilyCharts, Superpotential

FLOAT_FORMAT = '{:.12g}'

Result = Union[DeformationResult, Superpotential, FamilyCharts, Sequence[CriticalPoint], dict]


def format_series(series: ChartSeries) -> str:
    """Render a chart series as a sum of (coefficient)*var^e terms."""
    if series.is_zero():
        return '0'
    parts = []
    for exponent, coeff in series.items():
        text = f'({print_canonical(coeff)})'
        if exponent == 1:
            text += f'*{series.variable}'
        elif exponent != 0:
            text += f'*{series.variable}^{exponent}'
        parts.append(text)
    return ' + '.join(parts)


def _format_value(value) -> str:
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, float):
        return FLOAT_FORMAT.format(value)
    if isinstance(value, (list, tuple)):
        return '(' + ', '.join(_format_value(v) for v in value) + ')'
    return str(value)


def _equation_lines(eqs: DeformationResult) -> list[str]:
    return [f'k{i} = {print_canonical(k)}' for i, k in enumerate(eqs.equations, start=1)]


def _point_line(point: CriticalPoint) -> str:
    line = (f'point = {_format_value(point.point)}  '
            f'|k| = {_format_value(point.gradient_norm)}  '
            f'sigma_min = {_format_value(point.hessian_min_singular_value)}  '
            f'iterations = {point.iterations}  '
            f'converged = {_format_value(point.converged)}  '
            f'singular = {_format_value(point.singular)}')
    if point.exact_gradient_norm is not None:
        line += f'  exact |k| = {_format_value(point.exact_gradient_norm)}'
    return line


def _family_lines(charts: FamilyCharts) -> list[str]:
    lines = [
        f'y1 = {format_series(charts.y1)}',
        f'y2 = {format_series(charts.y2)}',
        f'z1 = {format_series(charts.z1)}',
        f'z2 = {format_series(charts.z2)}',
    ]
    if charts.wmap is not None:
        lines.append(f'w = {format_series(charts.wmap)}')
    return lines


def _to_text(result: Result, equations: Optional[DeformationResult]) -> str:
    lines = _equation_lines(equations) if equations is not None else []
    if isinstance(result, DeformationResult):
        lines = _equation_lines(result)
    elif isinstance(result, Superpotential):
        lines.append(f'W = {print_canonical(result.W)}')
    elif isinstance(result, FamilyCharts):
        lines.extend(_family_lines(result))
    elif isinstance(result, dict):
        lines.extend(f'{key} = {_format_value(value)}' for key, value in result.items())
    else:
        lines.extend(_point_line(point) for point in result)
    return '\n'.join(lines)


def _to_json(result: Result, equations: Optional[DeformationResult]) -> str:
    data = equations.to_dict() if equations is not None else {}
    if isinstance(result, DeformationResult):
        data = result.to_dict()
    elif isinstance(result, Superpotential):
        data.update(result.to_dict())
    elif isinstance(result, FamilyCharts):
        data['family'] = result.to_dict()
    elif isinstance(result, dict):
        data.update(result)
    else:
        data['critical_points'] = [point.to_dict() for point in result]
    return json.dumps(data, indent=2)


def serialize(result: Result, fmt: str = 'text',
              equations: Optional[DeformationResult] = None) -> str:
    """Render a result for standard output.

    Args:
        result: Equations, a superpotential, family charts, a list of
            critical points, or a flat summary dictionary.
        fmt: 'text' or 'json'.
        equations: Equations to print alongside a non-equation result.

    Returns:
        The rendered text, without a trailing newline.
    """
    if fmt == 'json':
        return _to_json(result, equations)
    return _to_text(result, equations)
