from typing import Optional, Sequence

__all__ = [
    "RtgqError",
    "DistributionError",
    "UnstableError",
    "QuadratureError",
    "TruncationBudgetError",
    "ConvergenceError",
    "SimulationConfigError",
    "SimulationOverflowError",
    "InsufficientDataError",
    "ScenarioParseError",
    "ScenarioValidationError",
    "UnknownFieldError",
]


class RtgqError(Exception):
    """Base error. `code` is the stable machine-readable tag printed by the CLI."""

    code: str = "error"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class DistributionError(RtgqError):
    """Invalid service-law parameters, an argument outside the domain, or an unsupported operation."""

    code = "distribution"


class UnstableError(RtgqError):
    code = "unstable"

    def __init__(self, rho: float, message: Optional[str] = None):
        super().__init__(message or f"traffic intensity rho={rho:.6g} >= 1, no stationary regime")
        self.rho = rho


class QuadratureError(RtgqError):
    code = "quadrature"


class TruncationBudgetError(RtgqError):
    code = "truncation"


class ConvergenceError(RtgqError):
    code = "convergence"


class SimulationConfigError(RtgqError):
    code = "config"


class SimulationOverflowError(RtgqError):
    code = "overflow"


class InsufficientDataError(RtgqError):
    code = "insufficient-data"


class ScenarioParseError(RtgqError):
    code = "parse"

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        location = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(f"{location}{message}")
        self.line = line
        self.column = column


class ScenarioValidationError(RtgqError):
    code = "validation"

    def __init__(self, message: str, fields: Sequence[str] = ()):
        super().__init__(message)
        self.fields = tuple(fields)


class UnknownFieldError(ScenarioValidationError):
    code = "unknown-field"
