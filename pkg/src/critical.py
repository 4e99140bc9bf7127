"""Floating-point analysis of the equations and of W.

Polynomials are compiled to numpy arrays once and evaluated in double
precision. Newton's method locates points of the versal space; a
finite-difference check cross-validates the exact gradient identity.
"""

import logging
from dataclasses import replace
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

from .algebra import ParamPoly
from .errors import CheckFailure, StructuralError
from .models.results import CriticalPoint, DeformationResult, GradientCheckReport, Superpotential

LOGGER = logging.getLogger(__name__)

SINGULAR_COND = 1e12
DIVERGENCE_FACTOR = 10.0


class CompiledPoly:
    """A ParamPoly as exponent matrix and coefficient vector."""

    def __init__(self, poly: ParamPoly):
        self.arity = poly.arity
        items = list(poly.items())
        self.exponents = np.array([e for e, _ in items], dtype=float).reshape(len(items), poly.arity)
        self.coeffs = np.array([float(c) for _, c in items], dtype=float)

    def __call__(self, a: np.ndarray) -> float:
        if not len(self.coeffs):
            return 0.0
        return float(self.coeffs @ np.prod(np.power(a, self.exponents), axis=1))


class CompiledSystem:
    """Equations k_1..k_{n-1} with their Jacobian, ready for float evaluation."""

    def __init__(self, polys: Sequence[ParamPoly]):
        if not polys:
            raise StructuralError('empty system')
        self.arity = polys[0].arity
        self.functions = [CompiledPoly(p) for p in polys]
        self.jacobian_entries = [[CompiledPoly(p.diff(j)) for j in range(self.arity)]
                                 for p in polys]

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.functions), self.arity)

    def values(self, a: np.ndarray) -> np.ndarray:
        return np.array([f(a) for f in self.functions])

    def jacobian(self, a: np.ndarray) -> np.ndarray:
        return np.array([[entry(a) for entry in row] for row in self.jacobian_entries])


def _as_vector(a, arity: int) -> np.ndarray:
    vector = np.asarray(a, dtype=float).reshape(-1)
    if vector.shape[0] != arity:
        raise StructuralError(f'point has length {vector.shape[0]}, expected {arity}')
    return vector


def eval_field(target: Union[DeformationResult, Superpotential, ParamPoly, Sequence[ParamPoly]],
               a) -> Union[np.ndarray, float]:
    """Evaluate equations (vector) or a single polynomial / W (scalar) at ``a``."""
    if isinstance(target, Superpotential):
        target = target.W
    if isinstance(target, ParamPoly):
        return CompiledPoly(target)(_as_vector(a, target.arity))
    polys = target.equations if isinstance(target, DeformationResult) else list(target)
    if not polys:
        return np.zeros(0)
    vector = _as_vector(a, polys[0].arity)
    return np.array([CompiledPoly(p)(vector) for p in polys])


def eval_field_exact(eqs: DeformationResult, a: Sequence) -> list[Fraction]:
    """Exact rational evaluation, for degenerate diagnostics."""
    point = [Fraction(v) for v in a]
    if len(point) != eqs.arity:
        raise StructuralError(f'point has length {len(point)}, expected {eqs.arity}')
    return [Fraction(k.evaluate(point)) for k in eqs.equations]


def sample_ball(count: int, arity: int, radius: float,
                rng: np.random.Generator) -> np.ndarray:
    """Uniform samples from the Euclidean ball of the given radius."""
    directions = rng.normal(size=(count, arity))
    norms = np.linalg.norm(directions, axis=1, keepdims=True)
    norms[norms == 0] = 1.0
    radii = radius * rng.uniform(size=(count, 1)) ** (1.0 / arity)
    return directions / norms * radii


def fd_gradient_check(W: Superpotential, eqs: DeformationResult,
                      points: Union[int, np.ndarray] = 20, tol: float = 1e-6,
                      step: float = 1e-5, radius: float = 0.5, seed: int = 0,
                      strict: bool = True) -> GradientCheckReport:
    """Compare central differences of W with k_{n-1-i}.

    Args:
        W: Superpotential.
        eqs: Square system it was built from.
        points: Number of random points in the ball, or an explicit array.
        tol: Allowed relative error, with an absolute floor of 1.
        step: Finite-difference step.
        radius: Ball radius for random points.
        seed: Seed for random points.
        strict: Raise CheckFailure instead of returning a failing report.

    Returns:
        Report with the maximum deviation and the worst point.
    """
    arity = eqs.arity
    if isinstance(points, int):
        points = sample_ball(points, arity, radius, np.random.default_rng(seed))
    points = np.atleast_2d(np.asarray(points, dtype=float))

    potential = CompiledPoly(W.W)
    field = [CompiledPoly(eqs.k(eqs.n - 1 - i)) for i in range(arity)]
    worst, worst_point = 0.0, tuple(points[0]) if len(points) else ()
    for a in points:
        for i in range(arity):
            offset = np.zeros(arity)
            offset[i] = step
            fd = (potential(a + offset) - potential(a - offset)) / (2 * step)
            exact = field[i](a)
            deviation = abs(fd - exact) / max(1.0, abs(exact))
            if deviation > worst:
                worst, worst_point = deviation, tuple(float(v) for v in a)

    report = GradientCheckReport(worst <= tol, worst, worst_point, len(points))
    LOGGER.info('finite-difference check: max deviation %.3e over %d points',
                worst, len(points))
    if strict and not report.passed:
        raise CheckFailure(f'finite-difference gradient deviates by {worst:.3e} at {worst_point}')
    return report


def newton_solve(eqs: DeformationResult, start, tol: float = 1e-10, max_iter: int = 200,
                 box: Optional[float] = None,
                 system: Optional[CompiledSystem] = None) -> CriticalPoint:
    """Newton's method on k(a) = 0 with backtracking on ||k||.

    Square well-conditioned systems take a plain Newton step; singular or
    non-square Jacobians fall back to a least-squares (pseudo-inverse) step.
    The run is flagged singular after such a step, or when the Jacobian at
    the endpoint has a singular value at or below sqrt(tol).

    Args:
        eqs: Deformation equations.
        start: Starting point.
        tol: Stop when ||k(a)|| <= tol.
        max_iter: Iteration cap.
        box: Radius of the start region; the run stops as diverged once
            ||a|| exceeds ten times this.
        system: Precompiled system, reused across starts.

    Returns:
        The endpoint with diagnostics.
    """
    system = system or CompiledSystem(eqs.equations)
    a = _as_vector(start, system.arity).copy()
    start_tuple = tuple(float(v) for v in a)
    limit = DIVERGENCE_FACTOR * (box if box else max(float(np.linalg.norm(a)), 1.0))
    square = system.shape[0] == system.shape[1]
    singular = False

    values = system.values(a)
    norm = float(np.linalg.norm(values))
    iterations = 0
    while norm > tol and iterations < max_iter:
        J = system.jacobian(a)
        cond = np.linalg.cond(J) if square else np.inf
        if square and np.isfinite(cond) and cond < SINGULAR_COND:
            step = np.linalg.solve(J, -values)
        else:
            if not singular:
                LOGGER.warning('singular Jacobian near %s, using least-squares step', a)
            singular = True
            step = np.linalg.lstsq(J, -values, rcond=None)[0]

        t = 1.0
        while True:
            candidate = a + t * step
            candidate_values = system.values(candidate)
            candidate_norm = float(np.linalg.norm(candidate_values))
            if candidate_norm < norm or t < 1e-6:
                break
            t *= 0.5
        a, values, norm = candidate, candidate_values, candidate_norm
        iterations += 1
        LOGGER.debug('newton iteration %d: ||k|| = %.3e, step scale %.3g', iterations, norm, t)
        if float(np.linalg.norm(a)) > limit:
            LOGGER.warning('newton run from %s diverged', start_tuple)
            break

    singular_values = np.linalg.svd(system.jacobian(a), compute_uv=False)
    sigma_min = float(singular_values.min()) if len(singular_values) else 0.0
    if sigma_min <= np.sqrt(tol):
        singular = True
    return CriticalPoint(
        point=tuple(float(v) for v in a),
        gradient_norm=norm,
        hessian_min_singular_value=sigma_min,
        iterations=iterations,
        converged=norm <= tol,
        singular=singular,
        start=start_tuple,
    )


def _recheck(eqs: DeformationResult, result: CriticalPoint, tol: float,
             exact: bool) -> CriticalPoint:
    """Re-evaluate the equations at a converged endpoint, in floats or rationals."""
    if exact:
        values = eval_field_exact(eqs, result.point)
        norm_sq = sum(v * v for v in values)
        residual = float(norm_sq) ** 0.5
        passed = norm_sq <= Fraction(tol) ** 2
        result = replace(result, exact_gradient_norm=residual)
    else:
        residual = float(np.linalg.norm(eval_field(eqs, result.point)))
        passed = residual <= tol
    if not passed:
        LOGGER.warning('endpoint %s failed the independent re-check', result.point)
        result = replace(result, gradient_norm=max(result.gradient_norm, residual), converged=False)
    return result


def multi_start(eqs: DeformationResult, starts: int = 20, seed: int = 0, box: float = 0.2,
                tol: float = 1e-10, max_iter: int = 200, merge: bool = True,
                exact: bool = False) -> list[CriticalPoint]:
    """Run Newton from seeded random starts and merge the endpoints.

    Converged endpoints are re-checked against an independent evaluation of
    the equations; with ``exact`` that evaluation is done in rationals at the
    float endpoint and its residual is reported. Results are sorted; with
    ``merge`` endpoints closer than sqrt(tol) are reported once.
    """
    if not any(eqs.equations):
        LOGGER.info('all equations vanish; every point is critical')
    system = CompiledSystem(eqs.equations)
    rng = np.random.default_rng(seed)
    results = []
    for start in sample_ball(starts, eqs.arity, box, rng):
        result = newton_solve(eqs, start, tol=tol, max_iter=max_iter, box=box, system=system)
        if result.converged:
            result = _recheck(eqs, result, tol, exact)
        results.append(result)

    results.sort(key=lambda r: (not r.converged, r.point))
    if not merge:
        return results
    radius = max(np.sqrt(tol), 1e-12)
    merged: list[CriticalPoint] = []
    for result in results:
        if any(other.converged == result.converged
               and np.linalg.norm(np.subtract(other.point, result.point)) <= radius
               for other in merged):
            continue
        merged.append(result)
    return merged
