"""Sweep command implementation"""

from typing import Optional
from pathlib import Path

import typer
from pydantic import ValidationError

from .._common import reporting, describe_errors, simulation_config
from ...types import SweepSpec
from ...sweep import run_sweep, gnuplot_script, write_sweep_csv
from ...utils import console
from ...config import get_settings
from ...errors import ScenarioValidationError

sweep_cmd = typer.Typer(name="sweep", help="Mean trucks and time in the zone over a traffic-rate grid")

_FLAGS = {
    "rho_min": "--rho-min",
    "rho_max": "--rho-max",
    "steps": "--steps",
    "theta": "--theta",
    "service": "--service",
}


@sweep_cmd.callback(invoke_without_command=True)
def sweep_traffic(
    rho_min: float = typer.Option(..., "--rho-min", help="Lowest traffic rate"),
    rho_max: float = typer.Option(..., "--rho-max", help="Highest traffic rate, below 1"),
    steps: int = typer.Option(..., "--steps", help="Grid points, ends included"),
    theta: Optional[float] = typer.Option(None, "--theta", "-t", help="Retrial rate [default: RTGQ_DEFAULT_THETA]"),
    service: str = typer.Option("exp:1.0", "--service", "-s", help="Loading-time law"),
    out: Path = typer.Option(..., "--out", "-o", dir_okay=False, help="CSV destination"),
    gnuplot: Optional[Path] = typer.Option(None, "--gnuplot", dir_okay=False, help="Also write a gnuplot script"),
    simulate: bool = typer.Option(False, "--simulate", help="Add simulated estimates at every point"),
    seed: int = typer.Option(42, "--seed", min=0, help="Master seed; point i uses a seed derived from (seed, i)"),
    departures: int = typer.Option(10**6, "--departures", "-n", min=1, help="Measured departures per point"),
    warmup: Optional[int] = typer.Option(None, "--warmup", min=0, help="Discarded departures per point"),
    batches: int = typer.Option(32, "--batches", help="Batches for the confidence intervals"),
    chain: bool = typer.Option(True, "--chain/--no-chain", help="Solve the embedded chain at every point"),
    workers: Optional[int] = typer.Option(None, "--workers", "-w", min=1, help="Worker processes"),
    quiet: bool = typer.Option(False, "--quiet", "-q", help="No progress bar"),
):
    """Write one CSV row per traffic rate, ascending"""
    with reporting():
        sim = simulation_config(seed, departures, warmup, batches) if simulate else None
        try:
            spec = SweepSpec(
                rho_min=rho_min,
                rho_max=rho_max,
                steps=steps,
                theta=theta if theta is not None else get_settings().DEFAULT_THETA,
                service=service,  # type: ignore[arg-type]
                sim=sim,
                chain=chain,
            )
        except ValidationError as e:
            message, fields = describe_errors(e, _FLAGS)
            raise ScenarioValidationError(message, fields) from None

        rows = run_sweep(spec, progress=not quiet, max_workers=workers)
        write_sweep_csv(rows, out)
        if gnuplot is not None:
            gnuplot.write_text(gnuplot_script(out, simulated=simulate, title=f"theta={spec.theta:g}, {service}"))

    if not quiet:
        console.print(f"[success]{len(rows)} rows written to {out}[/success]")
