"""
Entry point for the ``gainloss`` command.

Usage:
    gainloss <subcommand> <config-file> [--out DIR] [--jobs N] [-v]
    python -m src.cli <subcommand> <config-file> ...

This module:
1. Loads runtime settings from environment variables and flags
2. Configures structured logging (stderr JSON or text)
3. Loads and validates the run config for the subcommand
4. Runs the subcommand and writes its artifacts
5. Maps errors to exit codes (1 config, 2 numerical failure, 3 infeasible)
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from src.continuation import Backend
from src.domain.errors import GainLossError

from . import __version__
from .commands import COMMAND_HANDLERS
from .config import COMMANDS, RunConfig, load_config
from .logging_setup import bind_run_context, clear_run_context, configure_logging
from .settings import RuntimeSettings

logger = logging.getLogger("gainloss.cli")

_UNEXPECTED_ERROR_EXIT = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gainloss",
        description="Balanced gain and loss in complex Gaussian multi-well potentials.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("command", choices=COMMANDS, help="Workflow to run.")
    parser.add_argument("config", help="Run config (YAML or JSON, or a previous *.meta.json).")
    parser.add_argument("--out", default=None, help="Output directory (default: $GAINLOSS_OUTPUT_DIR or .).")
    parser.add_argument("--jobs", type=int, default=None, help="Worker threads (default: $GAINLOSS_JOBS or 1).")
    parser.add_argument("-v", "--verbose", action="store_true", help="Debug logging.")
    return parser


def _backend_of(config: RunConfig) -> str:
    """Solver the run uses for its spectra."""
    if config.command == "matrix-model":
        return Backend.MATRIX_MODEL.value
    return config.task.get("backend", Backend.GRID.value)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """``gainloss`` entry point; returns the exit code."""
    args = build_parser().parse_args(argv)

    # -- Settings -----------------------------------------------------------
    try:
        settings = RuntimeSettings().apply_overrides(
            jobs=args.jobs, output_dir=args.out, verbose=args.verbose
        )
        settings.validate()
    except ValueError as exc:
        print(f"FATAL: invalid runtime settings: {exc}", file=sys.stderr)
        return 1

    # -- Logging ------------------------------------------------------------
    configure_logging(settings.log_level, json_format=settings.log_format == "json")
    clear_run_context()
    bind_run_context(command=args.command)
    logger.info("gainloss starting", extra={"settings": repr(settings), "version": __version__})

    # -- Configuration ------------------------------------------------------
    try:
        config = load_config(args.config, args.command)
    except GainLossError as exc:
        logger.error("Invalid run config: %s", exc, extra=exc.context)
        print(f"config error: {exc}", file=sys.stderr)
        return exc.exit_code
    bind_run_context(configSha256=config.sha256, backend=_backend_of(config))

    # -- Run ----------------------------------------------------------------
    out_dir = Path(settings.output_dir)
    try:
        code = COMMAND_HANDLERS[args.command](config, out_dir, settings.jobs)
    except GainLossError as exc:
        logger.error(
            "%s failed: %s",
            args.command,
            exc,
            extra={"category": exc.category.value, **exc.context},
        )
        print(f"{args.command} failed: {exc}", file=sys.stderr)
        return exc.exit_code
    except Exception:
        logger.exception("Unexpected error in %s", args.command)
        return _UNEXPECTED_ERROR_EXIT

    logger.info("gainloss finished", extra={"exitCode": code})
    return code


if __name__ == "__main__":
    sys.exit(main())
