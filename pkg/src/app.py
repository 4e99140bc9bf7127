"""Main application class."""

import logging
from typing import Optional

import click

from .cech import deformation_equations_general, family_charts_general
from .critical import multi_start
from .errors import CheckFailure, NotCalabiYauError, ValidationError, VersalError
from .gluing import load_gluing_file
from .laufer import deformation_equations_laufer, family_charts
from .models.gluing_data import GluingData
from .models.job import JobConfig
from .models.results import DeformationResult
from .serializer import serialize
from .superpotential import (
    coeff_symmetry_lemma_check,
    integrate_potential,
    lemma_triples,
)

LOGGER = logging.getLogger(__name__)


class DeformationApp:
    """Application controller: one job, one exit code."""

    def __init__(self, config: JobConfig):
        """Initialize the application.

        Args:
            config: Settings of the job to run.
        """
        self.config = config
        self._data: Optional[GluingData] = None

    def run(self) -> int:
        """Run the job.

        Results go to standard output; an expected failure prints exactly
        one reason line on standard error.

        Returns:
            Exit code.
        """
        try:
            output = self.execute()
        except VersalError as exc:
            LOGGER.debug('job failed', exc_info=True)
            click.echo(exc.reason, err=True)
            return exc.exit_code
        click.echo(output)
        return 0

    def execute(self) -> str:
        """Run the configured command and return the serialized output."""
        handler = getattr(self, f'_command_{self.config.command}')
        return handler(self.data)

    @property
    def data(self) -> GluingData:
        """Validated gluing data, loaded on first use."""
        if self._data is None:
            self._data = load_gluing_file(self.config.input)
        return self._data

    @property
    def method(self) -> str:
        return self.config.resolve_method(self.data.laufer)

    def equations(self) -> DeformationResult:
        """Compute the deformation equations with the selected pipeline."""
        if self.method == 'laufer':
            return deformation_equations_laufer(self.data)
        return deformation_equations_general(self.data, self.config.degree)

    def _render(self, result, equations: Optional[DeformationResult] = None) -> str:
        return serialize(result, self.config.format, equations)

    def _command_check(self, d: GluingData) -> str:
        summary = {
            'm': d.m,
            'n': d.n,
            'laufer': d.laufer,
            'calabi_yau': d.is_calabi_yau,
            'h0_dimension': d.h0_dimension,
            'h1_dimension': d.h1_dimension,
        }
        return self._render(summary)

    def _command_equations(self, d: GluingData) -> str:
        return self._render(self.equations())

    def _command_superpotential(self, d: GluingData) -> str:
        if not d.is_calabi_yau:
            raise NotCalabiYauError(f'm - n = {d.m - d.n}, superpotential needs m - n = -2')
        eqs = self.equations()
        return self._render(integrate_potential(eqs), eqs)

    def _command_family(self, d: GluingData) -> str:
        if self.method == 'laufer':
            return self._render(family_charts(d))
        return self._render(family_charts_general(d, self.config.degree))

    def _command_critical(self, d: GluingData) -> str:
        eqs = self.equations()
        cfg = self.config
        points = multi_start(eqs, starts=cfg.starts, seed=cfg.seed, box=cfg.box,
                             tol=cfg.tol, max_iter=cfg.max_iter, exact=cfg.exact)
        failed = sum(1 for p in points if not p.converged)
        if failed:
            LOGGER.warning('%d endpoint(s) did not converge', failed)
        return self._render(points, eqs)

    def _command_lemma(self, d: GluingData) -> str:
        if d.f.depends_on_y1() or not d.f.is_holomorphic_on_u0():
            raise ValidationError('lemma needs f = f(x, y2) without negative x-powers')
        triples = lemma_triples(d.f, d.m)
        if not coeff_symmetry_lemma_check(d.f, d.m, triples):
            raise CheckFailure('coefficient symmetry fails for f')
        return self._render({'lemma': 'passed', 'triples': len(triples)})
