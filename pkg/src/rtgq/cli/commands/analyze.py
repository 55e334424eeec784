"""Analyze command implementation"""

from typing import Optional
from pathlib import Path

import typer

from .._common import emit, reporting, scenario_from_options
from ...analytics import analyze, derivative_crosscheck

analyze_cmd = typer.Typer(name="analyze", help="Closed-form measures of one scenario")


@analyze_cmd.callback(invoke_without_command=True)
def analyze_scenario(
    lam: Optional[float] = typer.Option(None, "--lambda", "-l", help="Truck arrival rate"),
    theta: Optional[float] = typer.Option(None, "--theta", "-t", help="Retrial rate of each parked truck"),
    service: Optional[str] = typer.Option(None, "--service", "-s", help="Loading-time law, e.g. exp:1.0"),
    scenario_file: Optional[Path] = typer.Option(
        None, "--scenario", exists=True, dir_okay=False, help="Scenario document instead of the flags above"
    ),
    check_derivative: bool = typer.Option(
        False, "--check-derivative", help="Also log f'(1) by finite differences against the closed form"
    ),
):
    """Print {rho, stable, n_mean, w_mean, pi0, ...} as one JSON line"""
    with reporting():
        sc = scenario_from_options(lam, theta, service, scenario_file)
        report = analyze(sc)
        if check_derivative and report.stable:
            numeric, closed, gap = derivative_crosscheck(sc)
            typer.echo(f"f'(1) numeric={numeric!r} closed={closed!r} gap={gap:.3e}", err=True)
    emit(report)
