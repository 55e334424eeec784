from typing import Literal, Optional
from dataclasses import dataclass

from pydantic import Field, BaseModel, ConfigDict, model_validator

__all__ = ["SimState", "SimulationConfig", "SimulationResult", "RetrialMode"]

RetrialMode = Literal["aggregate", "individual"]


@dataclass(frozen=True, slots=True)
class SimState:
    """
    End-of-run snapshot: clock, C(t), N(t) and the pending event epochs at the last measured
    departure. The event loops keep these in locals and build the snapshot once they stop.
    """

    clock: float = 0.0
    server_busy: int = 0
    orbit_size: int = 0
    next_arrival: float = 0.0
    next_retrial: Optional[float] = None
    service_end: Optional[float] = None
    in_service_entry_time: Optional[float] = None


class SimulationConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    seed: int = Field(default=42, ge=0, lt=2**64)
    warmup_departures: Optional[int] = Field(default=None, ge=0)
    measured_departures: int = Field(default=10**6, gt=0)
    batches: int = 32
    retrial_mode: RetrialMode = "aggregate"

    @model_validator(mode="after")
    def check_batches(self) -> "SimulationConfig":
        if self.batches < 10:
            raise ValueError(f"batches must be >= 10, got {self.batches}")
        if self.measured_departures % self.batches:
            raise ValueError(
                f"measured_departures ({self.measured_departures}) must be divisible by batches ({self.batches})"
            )
        return self

    @property
    def effective_warmup(self) -> int:
        """Explicit warm-up, else the larger of 10^4 and 10% of the measured departures."""
        if self.warmup_departures is not None:
            return self.warmup_departures
        return max(10**4, self.measured_departures // 10)

    @property
    def batch_size(self) -> int:
        return self.measured_departures // self.batches


class SimulationResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    n_mean: float
    n_ci_half: float
    w_mean: float
    w_ci_half: float
    utilization: float
    departure_orbit_histogram: list[int]
    departures: int
    sim_time: float
    events: int
    seed: int
    retrial_mode: RetrialMode = "aggregate"
    non_stationary: bool = False

    @property
    def lambda_effective(self) -> float:
        return self.departures / self.sim_time if self.sim_time > 0 else 0.0
