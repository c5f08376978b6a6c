"""
Module Name: cli

Command-line interface (CLI) for the Levi-form analyses.

This module provides a centralized interface to:
- Load a problem description and apply `--set key=value` overrides
- Run the analyze, strata and submanifold commands through AnalysisService
- Write deterministic reports to stdout or to a file
- Map failures to stable exit codes (2 configuration, 3 no data, 4 internal)

Example:
    >>> levi-strata analyze sphere.json --out sphere.json.report
    >>> levi-strata strata weighted.json --q 1 --format csv
"""


import sys
import click
import logging

from pathlib import Path
from typing import Optional, Sequence, Tuple

from src import __version__
from src.errors import *
from src.config import ProblemConfig, load_problem_config
from src.models import Report
from src.service import AnalysisService
from src.storage import ReportWriter
from src.utils import setup_logging, LoggingSetupError


# --- Configuration Constants ---
SUPPORTED_LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR"]
SUPPORTED_FORMATS = ["json", "csv"]

EXIT_OK = 0
EXIT_CONFIGURATION = 2
EXIT_NO_DATA = 3
EXIT_INTERNAL = 4

CONFIGURATION_ERRORS: Tuple[type, ...] = (
    ConfigurationError,
    ExpressionSyntaxError,
    InvalidRegionError,
    InvalidStratumIndexError,
    InvalidSystemError,
    InvalidToleranceError,
    NotRealValuedError,
    NonHermitianError,
    LoggingSetupError,
)
NO_DATA_ERRORS: Tuple[type, ...] = (NoDataError, EmptyPointSetError, EmptySampleError)


def exit_code_for(error: BaseException) -> int:
    """Exit code of a failed command: 2 configuration/parse, 3 no data, 4 anything else."""
    if isinstance(error, CONFIGURATION_ERRORS):
        return EXIT_CONFIGURATION
    if isinstance(error, NO_DATA_ERRORS):
        return EXIT_NO_DATA
    return EXIT_INTERNAL


class LeviCLI:
    """
    Holds the components behind the `levi-strata` commands.

    Attributes:
        _logger (logging.Logger): Logger injected by the root command.
        service (AnalysisService): Runs the analyses and assembles reports.
        writer (ReportWriter): Renders and writes reports.
    """

    def __init__(self, logger: logging.Logger, log_level: str = "WARNING") -> None:
        if logger is None:
            self._logger = logging.getLogger(__name__)
            self._logger.warning("LeviCLI initialized WITHOUT injected logger. Using default logger.")
        else:
            self._logger = logger

        if log_level not in SUPPORTED_LOG_LEVELS:
            raise CLIError(f"Invalid log level: '{log_level}'. Must be one of: {SUPPORTED_LOG_LEVELS}")
        self.service = AnalysisService(logger=self._logger)
        self.writer = ReportWriter(logger=self._logger)

    def load(self, config_path: Path, overrides: Sequence[str]) -> ProblemConfig:
        return load_problem_config(config_path, overrides)

    def emit(self, report: Report, out: Optional[Path], fmt: str) -> None:
        """Writes the rendered report to `out`, or to stdout when no path is given."""
        if out is None:
            click.echo(self.writer.render(report, fmt), nl=False)
        else:
            self.writer.save(report, out, fmt)

    def execute_command(
        self,
        command: str,
        config_path: Path,
        overrides: Sequence[str],
        out: Optional[Path],
        fmt: Optional[str],
        q: Optional[int] = None,
    ) -> int:
        """
        Runs one analysis command end to end and returns its exit code.

        Errors never escape: they are logged, reported on stderr and turned
        into the exit code of `exit_code_for`.
        """
        logger = self._logger
        logger.info(f"Initiating '{command}' for {config_path}")
        try:
            config = self.load(config_path, overrides)
            if command == "analyze":
                report = self.service.analyze(config)
            elif command == "strata":
                report = self.service.strata(config, q)
            else:
                report = self.service.submanifold(config)
            self.emit(report, out, fmt or config.output_format)
        except ApplicationError as e:
            code = exit_code_for(e)
            level = logging.ERROR if code == EXIT_INTERNAL else logging.WARNING
            logger.log(level, f"'{command}' failed ({type(e).__name__}): {e}", exc_info=code == EXIT_INTERNAL)
            click.secho(f"Error [{type(e).__name__}]: {e}", fg="red", bold=True, err=True)
            return code
        except Exception as e:
            logger.critical(f"Unexpected error during '{command}': {e}", exc_info=True)
            click.secho(f"Unexpected error in '{command}': {e}", fg="red", bold=True, err=True)
            return EXIT_INTERNAL
        logger.info(f"'{command}' finished")
        return EXIT_OK


def _run(ctx: click.Context, command: str, config: str, overrides, out, fmt, q=None) -> None:
    cli_instance: LeviCLI = ctx.obj
    code = cli_instance.execute_command(
        command, Path(config), tuple(overrides), None if out is None else Path(out), fmt, q
    )
    if code != EXIT_OK:
        ctx.exit(code)


def _common_options(function):
    function = click.option(
        "--format", "fmt", type=click.Choice(SUPPORTED_FORMATS), default=None,
        help="Report format; overrides output.format of the problem file.",
    )(function)
    function = click.option(
        "--out", "-o", type=click.Path(dir_okay=False), default=None,
        help="Write the report to this file instead of stdout.",
    )(function)
    function = click.option(
        "--set", "overrides", multiple=True, metavar="KEY=VALUE",
        help="Override a problem-file entry, e.g. --set region.seed=3 (JSON values).",
    )(function)
    function = click.argument("config", type=click.Path(dir_okay=False))(function)
    return function


@click.group()
@click.option(
    "--verbose",
    "-v",
    default="WARNING",
    show_default=True,
    type=click.Choice(SUPPORTED_LOG_LEVELS),
    help=f"Verbosity level for logging: {SUPPORTED_LOG_LEVELS}.",
)
@click.option(
    "--log-dir",
    type=click.Path(file_okay=False),
    default=None,
    help="Directory for levi_strata.log (defaults to <project>/logs).",
)
@click.version_option(version=__version__, prog_name="levi-strata")
@click.pass_context
def cli(ctx: click.Context, verbose: str, log_dir: Optional[str]) -> None:
    """
    Levi-form invariants, strata S_q and complex-submanifold criteria for real hypersurfaces.

    Every command reads a JSON problem description (rho, dimension, region,
    tolerances and the optional strata/system/parametrization blocks).
    """
    project_root = Path(__file__).resolve().parent.parent.parent
    try:
        setup_logging(log_level=verbose.upper(), project_root=project_root,
                      log_dir=None if log_dir is None else Path(log_dir))
        logger = logging.getLogger(__name__)
        ctx.obj = LeviCLI(logger=logger, log_level=verbose.upper())
        logger.debug(f"CLI initialized: log_level='{verbose}'")
    except LoggingSetupError as e:
        click.secho(f"Error configuring logging: {e}", fg="red", bold=True, err=True)
        ctx.exit(EXIT_CONFIGURATION)
    except CLIError as e:
        click.secho(f"CLI configuration error: {e}", fg="red", bold=True, err=True)
        ctx.exit(EXIT_CONFIGURATION)


@cli.command()
@_common_options
@click.pass_context
def analyze(ctx: click.Context, config: str, overrides, out, fmt) -> None:
    """Sample M, classify every point and decide pseudoconvexity."""
    _run(ctx, "analyze", config, overrides, out, fmt)


@cli.command()
@_common_options
@click.option("--q", "q", type=int, default=None,
              help="Stratum level 1..n; without it every S_1..S_n is detected.")
@click.pass_context
def strata(ctx: click.Context, config: str, overrides, out, fmt, q: Optional[int]) -> None:
    """Detect the strata S_q and check the 2q dimension condition."""
    _run(ctx, "strata", config, overrides, out, fmt, q)


@cli.command()
@_common_options
@click.pass_context
def submanifold(ctx: click.Context, config: str, overrides, out, fmt) -> None:
    """Test the configured defining system and/or parametrization."""
    _run(ctx, "submanifold", config, overrides, out, fmt)


def main() -> None:
    """
    Entry point of the `levi-strata` console script.

    Exit Codes:
        - 0: Success, or cancellation with Ctrl+C.
        - 2: Configuration or parse error (including click usage errors).
        - 3: No sample data.
        - 4: Numerical failure or any unhandled error.
    """
    try:
        cli()
    except KeyboardInterrupt:
        click.secho("\nOperation cancelled by user.", fg="yellow", err=True)
        sys.exit(EXIT_OK)
    except Exception as e:
        logging.getLogger(__name__).critical("Unhandled error in main", exc_info=True)
        click.secho(f"Unhandled error in the application: {e}", fg="red", bold=True, err=True)
        sys.exit(EXIT_INTERNAL)


if __name__ == "__main__":
    main()
