"""Command-line surface: one subcommand per pipeline stage."""

import click

from .app import DeformationApp
from .models.job import FORMATS, METHODS, JobConfig
from .utils.logging import logging_to_stderr


def job_options(command):
    """Attach the options shared by every subcommand."""
    options = [
        click.option('--input', 'input_path', required=True, type=click.Path(dir_okay=False),
                     help='JSON file with m, n, f and optional g, h.'),
        click.option('--degree', type=click.IntRange(min=1), default=6, show_default=True,
                     envvar='VERSALDEF_DEGREE', help='Truncation degree for the general method.'),
        click.option('--method', type=click.Choice(METHODS), default='auto', show_default=True,
                     envvar='VERSALDEF_METHOD'),
        click.option('--format', 'fmt', type=click.Choice(FORMATS), default='text',
                     show_default=True, envvar='VERSALDEF_FORMAT'),
        click.option('--starts', type=click.IntRange(min=1), default=20, show_default=True,
                     help='Newton starts for the critical command.'),
        click.option('--seed', type=int, default=0, show_default=True),
        click.option('--tol', type=click.FloatRange(min=0, min_open=True), default=1e-10,
                     show_default=True),
        click.option('--box', type=click.FloatRange(min=0, min_open=True), default=0.2,
                     show_default=True, help='Radius of the ball of Newton starts.'),
        click.option('--max-iter', type=click.IntRange(min=1), default=200, show_default=True),
        click.option('--exact', is_flag=True,
                     help='Re-check Newton endpoints in exact rational arithmetic.'),
        click.option('-v', '--verbose', 'verbosity', count=True,
                     help='Log progress to standard error (-vv for debug).'),
    ]
    for option in reversed(options):
        command = option(command)
    return command


def _run(command: str, input_path, fmt, **options):
    config = JobConfig(input=input_path, command=command, format=fmt, **options)
    with logging_to_stderr(config.verbosity):
        code = DeformationApp(config).run()
    click.get_current_context().exit(code)


@click.group()
@click.version_option('1.0.0', prog_name='versaldef')
def cli():
    """Versal deformation spaces of rational curves in threefolds."""


@cli.command()
@job_options
def check(**options):
    """Validate the gluing data and print its invariants."""
    _run('check', **options)


@cli.command()
@job_options
def equations(**options):
    """Print the deformation equations k_1..k_{n-1}."""
    _run('equations', **options)


@cli.command()
@job_options
def superpotential(**options):
    """Print the equations and W with dW/da_i = k_{n-1-i}."""
    _run('superpotential', **options)


@cli.command()
@job_options
def family(**options):
    """Print the charts of the universal family."""
    _run('family', **options)


@cli.command()
@job_options
def critical(**options):
    """Locate points of the versal space by multi-start Newton."""
    _run('critical', **options)


@cli.command()
@job_options
def lemma(**options):
    """Check the coefficient symmetry identities for f."""
    _run('lemma', **options)


def main():
    cli(prog_name='versaldef')
