"""rtgq command line: analytic, chain and simulated measures of the RTG retrial queue"""

import sys
import logging

import click
import typer
from rich.text import Text
from rich.panel import Panel

from ._common import report, exit_code
from .commands import chain_cmd, sweep_cmd, analyze_cmd, simulate_cmd, validate_cmd
from .._version import __version__
from ..errors import RtgqError
from ..utils import console, set_log_level

logger = logging.getLogger(__name__)

app = typer.Typer(
    help="Trucks, retrials and one RTG: the M/G/1 retrial queue with linear retrial rate",
    short_help="RTG retrial queue toolkit",
    pretty_exceptions_enable=False,
)

app.add_typer(analyze_cmd)
app.add_typer(simulate_cmd)
app.add_typer(chain_cmd)
app.add_typer(sweep_cmd)
app.add_typer(validate_cmd)


def version_callback(value: bool) -> None:
    if value:
        typer.echo(f"rtgq {__version__}")
        raise typer.Exit()


def print_usage() -> None:
    examples = Panel(
        Text.from_markup("""
[bold]Commands:[/bold]

[yellow]analyze[/yellow]    Closed-form mean trucks, mean time in the zone and pi0
[yellow]simulate[/yellow]   Discrete-event estimates with 95% confidence intervals
[yellow]chain[/yellow]      Stationary orbit law at loading completions
[yellow]sweep[/yellow]      CSV of the measures over a traffic-rate grid
[yellow]validate[/yellow]   Three-way check, exit 0 on pass and 1 on fail

[bold]Examples:[/bold]

  rtgq analyze --lambda 0.5 --theta 1.4 --service exp:1.0
  rtgq simulate --lambda 0.5 --service det:1.0 --seed 7 --departures 1000000
  rtgq chain --scenario scenario.json --dump-pi pi.csv
  rtgq sweep --rho-min 0.1 --rho-max 0.9 --steps 9 --out sweep.csv --gnuplot sweep.gp
  rtgq validate --lambda 0.5 --service exp:1.0 --seed 1 --departures 1000000

Errors are reported on stderr as [bold]rtgq-error[<code>]: <message>[/bold].
"""),
        title="rtgq",
        expand=False,
    )
    console.print(examples)


@app.callback(invoke_without_command=True)
def callback(
    ctx: typer.Context,
    version: bool = typer.Option(
        False, "--version", "-V", help="Show version and exit", callback=version_callback, is_eager=True
    ),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging"),
) -> None:
    """
    Measures of the M/G/1 retrial queue with linear retrial rate.

    Use a command's --help for its options.
    """
    if verbose:
        set_log_level(logging.DEBUG)
    if ctx.invoked_subcommand is None:
        print_usage()
        raise typer.Exit()


def main() -> None:
    """Entry point of the `rtgq` script"""
    try:
        status = app(standalone_mode=False)
    except click.UsageError as e:
        report("usage", e.format_message())
        sys.exit(2)
    except click.ClickException as e:
        report("usage", e.format_message())
        sys.exit(e.exit_code)
    except (click.Abort, KeyboardInterrupt):
        console.print("\n[warning]Operation cancelled by user[/warning]")
        sys.exit(130)
    except RtgqError as e:
        report(e.code, e.message)
        sys.exit(exit_code(e))
    sys.exit(status if isinstance(status, int) else 0)


if __name__ == "__main__":
    main()
