"""
Runtime settings for the ``gainloss`` command.

Process-level settings are sourced from environment variables; the
experiment itself lives in the run-config file. Command-line flags
override the environment.
"""

import os
from typing import Optional

_LOG_FORMATS = ("json", "text")
_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


class RuntimeSettings:
    """Settings sourced from environment variables."""

    def __init__(self) -> None:
        # -----------------------------------------------------------------
        # Logging
        # -----------------------------------------------------------------
        # "json" (one object per line on stderr) or "text"
        self.log_format: str = os.environ.get("GAINLOSS_LOG_FORMAT", "json").lower()

        self.log_level: str = os.environ.get("GAINLOSS_LOG_LEVEL", "INFO").upper()

        # -----------------------------------------------------------------
        # Execution
        # -----------------------------------------------------------------
        # Worker threads for independent sweep points, lattice rows and boundary rays
        self.jobs: int = int(os.environ.get("GAINLOSS_JOBS", "1"))

        # Directory receiving the artifacts
        self.output_dir: str = os.environ.get("GAINLOSS_OUTPUT_DIR", ".")

    def apply_overrides(
        self,
        *,
        jobs: Optional[int] = None,
        output_dir: Optional[str] = None,
        verbose: bool = False,
    ) -> "RuntimeSettings":
        """Apply command-line flags on top of the environment values."""
        if jobs is not None:
            self.jobs = jobs
        if output_dir is not None:
            self.output_dir = output_dir
        if verbose:
            self.log_level = "DEBUG"
        return self

    def validate(self) -> None:
        """Raise ValueError if a setting is out of range."""
        if self.log_format not in _LOG_FORMATS:
            raise ValueError(
                f"GAINLOSS_LOG_FORMAT must be one of {', '.join(_LOG_FORMATS)}, got {self.log_format!r}"
            )
        if self.log_level not in _LOG_LEVELS:
            raise ValueError(
                f"GAINLOSS_LOG_LEVEL must be one of {', '.join(_LOG_LEVELS)}, got {self.log_level!r}"
            )
        if self.jobs < 1:
            raise ValueError(f"jobs must be >= 1, got {self.jobs}")
        if not self.output_dir:
            raise ValueError("output directory must not be empty")

    def __repr__(self) -> str:
        return (
            f"RuntimeSettings("
            f"logFormat={self.log_format!r}, "
            f"logLevel={self.log_level!r}, "
            f"jobs={self.jobs!r}, "
            f"outputDir={self.output_dir!r})"
        )
