"""
Classified error types for the gain/loss balance toolkit.

Every error raised by the numerics carries a ``category`` so that callers
(the sweep drivers, the CLI) can decide between recording a per-point
failure, aborting a run, or mapping to a process exit code without
inspecting concrete exception classes.

No I/O, no side effects.
"""

from __future__ import annotations

from enum import Enum
from typing import Any


class ErrorCategory(str, Enum):
    """Classification of numerical and configuration errors.

    Values:
        CONFIGURATION: The run configuration is malformed or inconsistent.
        INPUT: A function was called with arguments outside its domain.
        CONVERGENCE: An iterative method did not reach its tolerance.
        DEGENERATE: A matrix or basis is singular / not positive definite.
        INFEASIBLE: The requested balance configuration cannot exist
            (sign or ordering criteria of the matrix model fail, or the
            gain-loss parameters would have to become imaginary).
    """

    CONFIGURATION = "configuration"
    INPUT = "input"
    CONVERGENCE = "convergence"
    DEGENERATE = "degenerate"
    INFEASIBLE = "infeasible"


_EXIT_CODES = {
    ErrorCategory.CONFIGURATION: 1,
    ErrorCategory.INPUT: 1,
    ErrorCategory.CONVERGENCE: 2,
    ErrorCategory.DEGENERATE: 2,
    ErrorCategory.INFEASIBLE: 3,
}


class GainLossError(Exception):
    """Base error carrying a category and structured context.

    Attributes:
        category: The classified error category.
        context: Structured diagnostic values (shifts, indices, ...), also
            suitable as ``extra=`` for structured logging.
    """

    def __init__(
        self,
        message: str,
        category: ErrorCategory,
        context: dict[str, Any] | None = None,
    ) -> None:
        super().__init__(message)
        self.category = category
        self.context = dict(context or {})

    @property
    def exit_code(self) -> int:
        """Process exit code the CLI uses for this error."""
        return _EXIT_CODES[self.category]


class ConfigError(GainLossError):
    """Raised when a run configuration fails validation.

    ``field`` is the dotted path of the offending entry, e.g.
    ``potential.wells[1].width``.
    """

    def __init__(self, field: str, message: str) -> None:
        super().__init__(
            f"{field}: {message}",
            ErrorCategory.CONFIGURATION,
            {"field": field},
        )
        self.field = field


class EigensolverConvergenceError(GainLossError):
    """Inverse iteration did not converge for a shift."""

    def __init__(self, shift: complex, iterations: int, residual: float) -> None:
        super().__init__(
            f"inverse iteration did not converge for shift {shift:.8g} "
            f"after {iterations} iterations (residual {residual:.3e})",
            ErrorCategory.CONVERGENCE,
            {"shift": str(shift), "iterations": iterations, "residual": residual},
        )
        self.shift = shift
        self.iterations = iterations
        self.residual = residual


class UnboundWellError(GainLossError):
    """A single well is too shallow to bind a state on the grid."""

    def __init__(self, well: int, ground_energy: float) -> None:
        super().__init__(
            f"well {well} binds no state (ground energy {ground_energy:.6g} >= 0)",
            ErrorCategory.CONVERGENCE,
            {"well": well, "groundEnergy": ground_energy},
        )
        self.well = well
        self.ground_energy = ground_energy


class OverlapMatrixError(GainLossError):
    """The overlap matrix K is not positive definite."""

    def __init__(self, min_eigenvalue: float) -> None:
        super().__init__(
            f"overlap matrix is not positive definite (min eigenvalue {min_eigenvalue:.3e})",
            ErrorCategory.DEGENERATE,
            {"minEigenvalue": min_eigenvalue},
        )
        self.min_eigenvalue = min_eigenvalue


class InfeasibilityReason(str, Enum):
    """Why a matrix-model configuration admits no balanced solution."""

    SIGN = "sign"            # two-well criterion: gains must have opposite signs
    ORDERING = "ordering"    # three-well criterion: on-site energies / gain-loss pattern
    IMAGINARY = "imaginary"  # gain-loss parameters would have to become imaginary


class InfeasibleSeedError(GainLossError):
    """The matrix model cannot produce a balanced seed."""

    def __init__(self, reason: InfeasibilityReason, message: str) -> None:
        super().__init__(message, ErrorCategory.INFEASIBLE, {"reason": reason.value})
        self.reason = reason


class EtaConstructionError(GainLossError):
    """The classification handed to η construction is inconsistent."""

    def __init__(self, message: str) -> None:
        super().__init__(message, ErrorCategory.INPUT)


class ResidualEvaluationError(GainLossError):
    """A residual map could not be evaluated at a parameter vector."""

    def __init__(self, message: str, cause: Exception | None = None) -> None:
        super().__init__(message, ErrorCategory.CONVERGENCE)
        self.cause = cause
