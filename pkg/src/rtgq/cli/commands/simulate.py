"""Simulate command implementation"""

from typing import Optional
from pathlib import Path

import typer

from .._common import emit, reporting, simulation_config, scenario_from_options
from ...simulator import run, run_replications

simulate_cmd = typer.Typer(name="simulate", help="Discrete-event simulation of one scenario")


@simulate_cmd.callback(invoke_without_command=True)
def simulate_scenario(
    lam: Optional[float] = typer.Option(None, "--lambda", "-l", help="Truck arrival rate"),
    theta: Optional[float] = typer.Option(None, "--theta", "-t", help="Retrial rate of each parked truck"),
    service: Optional[str] = typer.Option(None, "--service", "-s", help="Loading-time law, e.g. exp:1.0"),
    scenario_file: Optional[Path] = typer.Option(
        None, "--scenario", exists=True, dir_okay=False, help="Scenario document instead of the flags above"
    ),
    seed: int = typer.Option(42, "--seed", min=0, help="Master seed (unsigned 64-bit)"),
    departures: int = typer.Option(10**6, "--departures", "-n", min=1, help="Measured departures"),
    warmup: Optional[int] = typer.Option(
        None, "--warmup", min=0, help="Discarded departures [default: max(1e4, n/10)]"
    ),
    batches: int = typer.Option(32, "--batches", help="Batches for the confidence intervals"),
    retrial_mode: str = typer.Option("aggregate", "--retrial-mode", help="aggregate | individual"),
    replications: int = typer.Option(1, "--replications", "-r", min=1, help="Independent replications, one line each"),
    workers: Optional[int] = typer.Option(None, "--workers", "-w", min=1, help="Worker processes for replications"),
):
    """Print the estimates with their 95% confidence intervals as JSON lines"""
    with reporting():
        sc = scenario_from_options(lam, theta, service, scenario_file)
        cfg = simulation_config(seed, departures, warmup, batches, retrial_mode)
        if replications == 1:
            results = [run(sc, cfg)]
        else:
            results = run_replications(sc, cfg, replications, max_workers=workers)
    for result in results:
        emit(result)
