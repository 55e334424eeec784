"""Validate command implementation"""

from typing import Optional
from pathlib import Path

import typer
from pydantic import ValidationError

from .._common import emit, report, reporting, describe_errors, simulation_config, scenario_from_options
from ...types import Tolerances
from ...errors import SimulationConfigError
from ...validation import validate

validate_cmd = typer.Typer(name="validate", help="Cross-check closed form, embedded chain and simulation")


@validate_cmd.callback(invoke_without_command=True)
def validate_scenario(
    lam: Optional[float] = typer.Option(None, "--lambda", "-l", help="Truck arrival rate"),
    theta: Optional[float] = typer.Option(None, "--theta", "-t", help="Retrial rate of each parked truck"),
    service: Optional[str] = typer.Option(None, "--service", "-s", help="Loading-time law, e.g. exp:1.0"),
    scenario_file: Optional[Path] = typer.Option(
        None, "--scenario", exists=True, dir_okay=False, help="Scenario document instead of the flags above"
    ),
    seed: int = typer.Option(42, "--seed", min=0, help="Simulation seed"),
    departures: int = typer.Option(10**6, "--departures", "-n", min=1, help="Measured departures"),
    warmup: Optional[int] = typer.Option(None, "--warmup", min=0, help="Discarded departures"),
    batches: int = typer.Option(32, "--batches", help="Batches for the confidence intervals"),
    rel_tol: float = typer.Option(0.02, "--rel-tol", help="Largest relative gap of the simulated mean"),
    chain_tol: float = typer.Option(1e-6, "--chain-tol", help="Chain tolerance, scaled by 1 + N"),
    require_ci: bool = typer.Option(
        True, "--require-ci/--no-require-ci", help="Also require the simulated CI to cover the closed form"
    ),
):
    """Exit 0 when every check passes, 1 otherwise"""
    with reporting():
        sc = scenario_from_options(lam, theta, service, scenario_file)
        cfg = simulation_config(seed, departures, warmup, batches)
        try:
            tolerances = Tolerances(sim_rel=rel_tol, chain_rel=chain_tol, require_ci_cover=require_ci)
        except ValidationError as e:
            flags = {"sim_rel": "--rel-tol", "chain_rel": "--chain-tol"}
            raise SimulationConfigError(describe_errors(e, flags)[0]) from None
        result = validate(sc, cfg, tolerances)

    emit(result)
    for point in result.points:
        for error in point.errors:
            code, _, message = error.partition(": ")
            report(code, message)
    raise typer.Exit(0 if result.passed else 1)
