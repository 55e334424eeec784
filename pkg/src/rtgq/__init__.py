from pathlib import Path

from dotenv import load_dotenv

from .types import (
    Scenario,
    SweepRow,
    SweepSpec,
    Tolerances,
    AnalyticReport,
    SimulationConfig,
    SimulationResult,
    ValidationReport,
    StationaryDistribution,
)
from .sweep import run_sweep, write_sweep_csv
from .errors import RtgqError, UnstableError
from ._version import __title__, __version__
from .analytics import analyze, mean_wait, mean_trucks, evaluate_pgf
from .simulator import run as simulate, run_replications
from .utils.logs import setup_logging as _setup_logging
from .validation import validate
from .scenario_io import load_scenario, parse_scenario
from .distributions import Erlang, HyperExp2, Exponential, Deterministic, parse_service
from .embedded_chain import solve, chain_mean

env_path = Path(__file__).resolve().parent.parent.parent / ".env"
load_dotenv(dotenv_path=env_path)

__all__ = [
    "__version__",
    "__title__",
    "AnalyticReport",
    "Deterministic",
    "Erlang",
    "Exponential",
    "HyperExp2",
    "RtgqError",
    "Scenario",
    "SimulationConfig",
    "SimulationResult",
    "StationaryDistribution",
    "SweepRow",
    "SweepSpec",
    "Tolerances",
    "UnstableError",
    "ValidationReport",
    "analyze",
    "chain_mean",
    "evaluate_pgf",
    "load_scenario",
    "mean_trucks",
    "mean_wait",
    "parse_scenario",
    "parse_service",
    "run_replications",
    "run_sweep",
    "simulate",
    "solve",
    "validate",
    "write_sweep_csv",
]

_setup_logging()
