"""Chain command implementation"""

from typing import Union, Literal, Optional
from pathlib import Path

import typer

from .._common import emit, reporting, scenario_from_options
from ...types import ChainSummary
from ...embedded_chain import solve, chain_mean, write_pi_csv

chain_cmd = typer.Typer(name="chain", help="Solve the embedded chain at departure epochs")


def _truncation(value: str) -> Union[int, Literal["auto"]]:
    if value == "auto":
        return "auto"
    try:
        K = int(value)
    except ValueError:
        raise typer.BadParameter(f"expected a positive integer or 'auto', got {value!r}") from None
    if K < 1:
        raise typer.BadParameter(f"truncation must be at least 1, got {K}")
    return K


@chain_cmd.callback(invoke_without_command=True)
def solve_chain(
    lam: Optional[float] = typer.Option(None, "--lambda", "-l", help="Truck arrival rate"),
    theta: Optional[float] = typer.Option(None, "--theta", "-t", help="Retrial rate of each parked truck"),
    service: Optional[str] = typer.Option(None, "--service", "-s", help="Loading-time law, e.g. exp:1.0"),
    scenario_file: Optional[Path] = typer.Option(
        None, "--scenario", exists=True, dir_okay=False, help="Scenario document instead of the flags above"
    ),
    truncation: str = typer.Option("auto", "--truncation", "-K", help="Largest orbit size kept, or 'auto'"),
    dump_pi: Optional[Path] = typer.Option(None, "--dump-pi", dir_okay=False, help="Write state,probability CSV"),
):
    """Print {K, pi0, chain_mean, residual, ...} as one JSON line"""
    K = _truncation(truncation)
    with reporting():
        sc = scenario_from_options(lam, theta, service, scenario_file)
        matrix, dist = solve(sc, K)
        summary = ChainSummary(
            K=dist.K,
            pi0=dist.pi0,
            chain_mean=chain_mean(dist),
            residual=dist.residual,
            method=dist.method,
            tail_mass=matrix.tail_mass,
            truncation_suspect=dist.truncation_suspect,
        )
        if dump_pi is not None:
            write_pi_csv(dist, dump_pi)
    emit(summary)
