"""
NCG Kit - Command Line Entry Point
Theta constants, coordinate-ring export, the verification suite and the characteristic-variety sampler
"""

import logging
from dataclasses import replace
from typing import Callable, List, Optional

import typer
from rich import box
from rich.console import Console
from rich.table import Table

from . import __version__
from .config import LOG_FORMAT, RunConfig, get_defaults
from .errors import NcgkitError, ParameterDomainError
from .services import ExportService, Mutations, ReportService, VerificationService, summarize_rows
from .spheres import PhiParams
from .thetaring import ThetaChar, theta_const

logger = logging.getLogger(__name__)

app = typer.Typer(
    name='ncgkit',
    help='Exact and certified computations on noncommutative tori, theta rings and spheres.',
    add_completion=False,
    no_args_is_help=True,
)

# stdout carries data (values, CSV, reports); summaries go to stderr
console = Console(stderr=True)


def configure_logging(level: str) -> None:
    numeric = getattr(logging, level.upper(), None)
    if not isinstance(numeric, int):
        raise typer.BadParameter(f"unknown log level {level!r}")
    logging.basicConfig(level=numeric, format=LOG_FORMAT)
    logging.getLogger().setLevel(numeric)


def cmd_theta(config: RunConfig) -> int:
    """Print theta[r](l, tau_eff) with its certified error."""
    if config.parsed_tau_eff is None:
        raise ParameterDomainError("theta needs --tau-eff re,im")
    ch = ThetaChar(config.parsed_char, config.parsed_scale)
    value = theta_const(ch, config.parsed_tau_eff, config.eps, config.bits)
    typer.echo(value.format(config.eps))
    logger.info(f"theta r={ch.r} l={ch.l}: radius {value.radius}, {value.bits} bits")
    return 0


def cmd_ring(config: RunConfig) -> int:
    """Write struct_constants.csv and presentation.json for the coordinate ring at theta."""
    missing = [flag for flag, value in (('--g', config.parsed_g), ('--theta', config.parsed_theta),
                                        ('--tau', config.parsed_tau)) if value is None]
    if missing:
        raise ParameterDomainError(f"ring needs {', '.join(missing)}")
    service = ExportService(bits=config.bits)
    result = service.export_ring(
        config.parsed_g, config.parsed_theta, config.parsed_tau,
        config.eps, config.tol, config.seed, config.out or '.',
    )
    if not result['success']:
        _print_error(result['error'], result.get('details', ''))
        return result['exit_code']

    table = Table(title='Coordinate ring export', box=box.SIMPLE_HEAVY)
    table.add_column('Field')
    table.add_column('Value')
    for key in ('classification', 'rows', 'generators', 'relations', 'max_error', 'csv_path', 'json_path'):
        table.add_row(key, str(result[key]))
    console.print(table)
    return 0


def cmd_verify(config: RunConfig) -> int:
    """Run the claim suite; the exit code is 1 when any claim fails."""
    defaults = replace(get_defaults(), eps=config.eps, tol=config.tol, bits=config.bits, seed=config.seed)
    service = VerificationService(defaults, Mutations.from_names(config.inject), seed=config.seed,
                                  samples=config.verify_samples)
    modules = config.only_modules()
    result = service.run(modules)
    if not result['success']:
        _print_error(result['error'], result.get('details', ''))
        return result['exit_code']

    report = result['report']
    fmt = 'md' if config.fmt == 'md' else 'json'
    reporter = ReportService()
    if config.out:
        written = reporter.write(report, config.out, fmt, config.seed, modules)
        if not written['success']:
            _print_error(f"could not write report: {written['error']}")
            return 2
    else:
        typer.echo(reporter.render(report, fmt, config.seed, modules), nl=False)

    table = Table(title=f'Verification ({len(report.claims)} claims)', box=box.SIMPLE_HEAVY)
    table.add_column('Claim')
    table.add_column('Status')
    for claim in report.claims:
        style = 'red' if claim.status == 'fail' else 'green'
        table.add_row(claim.claim_id, f'[{style}]{claim.status}[/{style}]')
    console.print(table)
    return report.exit_code


def cmd_charvar(config: RunConfig) -> int:
    """Sample the characteristic variety and emit one CSV row per point."""
    if config.parsed_phi is None:
        raise ParameterDomainError("charvar needs --phi")
    service = ExportService(bits=config.bits)
    result = service.sample_charvar(PhiParams(config.parsed_phi), config.samples, config.mode,
                                    config.tol, config.seed, config.out)
    if not result['success']:
        _print_error(result['error'], result.get('details', ''))
        return result['exit_code']
    if not config.out:
        typer.echo(result['csv'], nl=False)

    summary = summarize_rows(result['rows'])
    table = Table(title=f'Characteristic variety ({config.mode})', box=box.SIMPLE_HEAVY)
    table.add_column('Rank')
    table.add_column('Points')
    for rank, count in sorted(summary['ranks'].items()):
        table.add_row(str(rank), str(count))
    console.print(table)
    if summary['max_residual'] is not None:
        console.print(f"max residual {summary['max_residual']:.3e}")
    return 0


def _print_error(message: str, details: str = '') -> None:
    typer.echo(f"error: {message}", err=True)
    if details:
        typer.echo(f"  {details}", err=True)


def _dispatch(command: Callable[[RunConfig], int], build: Callable[[], RunConfig]) -> None:
    try:
        code = command(build())
    except NcgkitError as e:
        logger.debug(f"{type(e).__name__}: {e.message}", exc_info=True)
        _print_error(e.message, e.details)
        raise typer.Exit(code=e.exit_code)
    if code:
        raise typer.Exit(code=code)


def _bits(bits: Optional[int]) -> int:
    return bits if bits is not None else get_defaults().bits


def _version_callback(value: bool) -> None:
    if value:
        typer.echo(f"ncgkit {__version__}")
        raise typer.Exit()


@app.callback()
def main(
    log_level: Optional[str] = typer.Option(None, '--log-level', help='DEBUG, INFO, WARNING or ERROR (default NCGKIT_LOG_LEVEL)'),
    version: Optional[bool] = typer.Option(None, '--version', callback=_version_callback, is_eager=True,
                                           help='Show the version and exit'),
) -> None:
    configure_logging(log_level or get_defaults().log_level)


@app.command('theta')
def theta(
    char: str = typer.Option('0', '--char', help='Rational characteristic r'),
    scale: str = typer.Option('1', '--scale', help='Positive rational scale l'),
    tau_eff: str = typer.Option(..., '--tau-eff', help="Effective argument 're,im'"),
    eps: float = typer.Option(1e-12, '--eps', help='Certified absolute error'),
    bits: Optional[int] = typer.Option(None, '--bits', help='Working precision (default NCGKIT_BITS)'),
) -> None:
    """Evaluate a theta constant with rational characteristic."""
    _dispatch(cmd_theta, lambda: RunConfig('theta', char=char, scale=scale, tau_eff=tau_eff,
                                           eps=eps, bits=_bits(bits)))


@app.command('ring')
def ring(
    g: str = typer.Option(..., '--g', help="SL(2,Z) matrix 'a,b,c,d'"),
    theta_text: str = typer.Option(..., '--theta', help="Fixed point '(p + s*sqrt(D))/q'"),
    tau: str = typer.Option(..., '--tau', help="'re,im' with im < 0"),
    eps: float = typer.Option(1e-12, '--eps', help='Certified error of each structure constant'),
    tol: float = typer.Option(1e-8, '--tol', help='Relative rank threshold'),
    bits: Optional[int] = typer.Option(None, '--bits', help='Working precision (default NCGKIT_BITS)'),
    seed: int = typer.Option(0, '--seed', help='Recorded in the provenance block'),
    out: str = typer.Option('.', '--out', help='Output directory'),
) -> None:
    """Export structure constants and the quadratic presentation of a coordinate ring."""
    _dispatch(cmd_ring, lambda: RunConfig('ring', theta=theta_text, tau=tau, g=g, eps=eps, tol=tol,
                                          bits=_bits(bits), seed=seed, out=out))


@app.command('verify')
def verify(
    only: Optional[str] = typer.Option(None, '--only', help='Comma-separated modules to restrict the suite to'),
    fmt: str = typer.Option('json', '--format', help='json or md'),
    out: Optional[str] = typer.Option(None, '--out', help='Report path (default stdout)'),
    seed: int = typer.Option(0, '--seed', help='Seed of the random samples'),
    eps: float = typer.Option(1e-12, '--eps', help='Certified error for numeric claims'),
    tol: float = typer.Option(1e-8, '--tol', help='Rank threshold'),
    bits: Optional[int] = typer.Option(None, '--bits', help='Working precision (default NCGKIT_BITS)'),
    samples: Optional[int] = typer.Option(None, '--samples', help='Draws per random claim (default: acceptance sizes)'),
    inject: Optional[List[str]] = typer.Option(None, '--inject', hidden=True),
) -> None:
    """Run the verification suite."""
    if fmt not in ('json', 'md'):
        _print_error(f"unknown report format {fmt!r}", "choose json or md")
        raise typer.Exit(code=3)
    _dispatch(cmd_verify, lambda: RunConfig('verify', only=only, fmt=fmt, out=out, seed=seed, eps=eps,
                                            tol=tol, bits=_bits(bits), verify_samples=samples,
                                            inject=list(inject or [])))


@app.command('charvar')
def charvar(
    phi: str = typer.Option(..., '--phi', help="Angles in turns 'p1,p2,p3'"),
    samples: int = typer.Option(100, '--samples', help='Number of points'),
    mode: str = typer.Option('random', '--mode', help='random, line or coordinate'),
    tol: float = typer.Option(1e-8, '--tol', help='Relative rank tolerance'),
    seed: int = typer.Option(0, '--seed', help='Seed of the sampler'),
    out: Optional[str] = typer.Option(None, '--out', help='CSV path (default stdout)'),
) -> None:
    """Sample the characteristic variety of the three-sphere relations."""
    _dispatch(cmd_charvar, lambda: RunConfig('charvar', phi=phi, samples=samples, mode=mode, tol=tol,
                                             seed=seed, out=out, fmt='csv'))


if __name__ == '__main__':
    app()
