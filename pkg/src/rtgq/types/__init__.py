from .chain import ChainSummary as ChainSummary, StationaryDistribution as StationaryDistribution
from .sweep import SWEEP_COLUMNS as SWEEP_COLUMNS, SweepRow as SweepRow, SweepSpec as SweepSpec
from .scenario import Scenario as Scenario
from .diagnostic import Diagnostic as Diagnostic
from .simulation import (
    SimState as SimState,
    RetrialMode as RetrialMode,
    SimulationConfig as SimulationConfig,
    SimulationResult as SimulationResult,
)
from .validation import Tolerances as Tolerances, PointRecord as PointRecord, ValidationReport as ValidationReport
from .analytic_report import AnalyticReport as AnalyticReport
