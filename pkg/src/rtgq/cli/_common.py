"""Option handling shared by the rtgq commands"""

import logging
import contextlib
from typing import Any, Iterator, Optional
from pathlib import Path

import typer
from pydantic import BaseModel, ValidationError

from ..types import Scenario, Diagnostic, SimulationConfig
from ..utils import print_diagnostic
from ..config import get_settings
from ..errors import RtgqError, SimulationConfigError, ScenarioValidationError
from ..scenario_io import load_scenario

logger = logging.getLogger(__name__)

# errors caused by the invocation rather than the computation
USAGE_CODES = frozenset({"usage", "parse", "validation", "unknown-field", "distribution", "config"})


def exit_code(error: RtgqError) -> int:
    return 2 if error.code in USAGE_CODES else 1


def report(code: str, message: str) -> None:
    print_diagnostic(Diagnostic(code=code, message=message))


@contextlib.contextmanager
def reporting() -> Iterator[None]:
    """Turn an RtgqError into its diagnostic line and the matching exit status."""
    try:
        yield
    except RtgqError as e:
        logger.debug(f"{type(e).__name__}: {e.message}")
        report(e.code, e.message)
        raise typer.Exit(exit_code(e)) from None


def describe_errors(error: ValidationError, flags: Optional[dict[str, str]] = None) -> tuple[str, list[str]]:
    flags = flags or {}
    fields: list[str] = []
    problems: list[str] = []
    for item in error.errors():
        field = ".".join(str(part) for part in item["loc"]) or "input"
        fields.append(field)
        problems.append(f"{flags.get(field, field)}: {item['msg']}")
    return "; ".join(problems), fields


def scenario_from_options(
    lam: Optional[float], theta: Optional[float], service: Optional[str], scenario_file: Optional[Path]
) -> Scenario:
    if scenario_file is not None:
        flags = (("--lambda", lam), ("--theta", theta), ("--service", service))
        given = [flag for flag, value in flags if value is not None]
        if given:
            raise ScenarioValidationError(f"--scenario cannot be combined with {', '.join(given)}", given)
        return load_scenario(scenario_file)

    missing = [flag for flag, value in (("--lambda", lam), ("--service", service)) if value is None]
    if missing:
        raise ScenarioValidationError(f"missing {', '.join(missing)} (or pass --scenario FILE)", missing)

    data: dict[str, Any] = {
        "lambda": lam,
        "theta": theta if theta is not None else get_settings().DEFAULT_THETA,
        "service": service,
    }
    try:
        return Scenario.model_validate(data)
    except ValidationError as e:
        message, fields = describe_errors(e, {"lambda": "--lambda", "theta": "--theta", "service": "--service"})
        raise ScenarioValidationError(message, fields) from None


def simulation_config(
    seed: int, departures: int, warmup: Optional[int], batches: int, retrial_mode: str = "aggregate"
) -> SimulationConfig:
    try:
        return SimulationConfig(
            seed=seed,
            measured_departures=departures,
            warmup_departures=warmup,
            batches=batches,
            retrial_mode=retrial_mode,  # type: ignore[arg-type]
        )
    except ValidationError as e:
        flags = {
            "seed": "--seed",
            "measured_departures": "--departures",
            "warmup_departures": "--warmup",
            "batches": "--batches",
            "retrial_mode": "--retrial-mode",
        }
        raise SimulationConfigError(describe_errors(e, flags)[0]) from None


def emit(record: BaseModel) -> None:
    """One JSON record per line on stdout."""
    typer.echo(record.model_dump_json())
