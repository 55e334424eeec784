from typing import Optional

from pydantic import Field, BaseModel, ConfigDict, field_validator, model_validator, field_serializer

from ..errors import RtgqError
from .simulation import SimulationConfig
from ..distributions import ServiceDistribution, parse_service

__all__ = ["SweepSpec", "SweepRow", "SWEEP_COLUMNS"]

SWEEP_COLUMNS = (
    "rho",
    "lambda",
    "n_mean_analytic",
    "w_mean_analytic",
    "n_mean_chain",
    "n_mean_sim",
    "n_ci_half",
    "w_mean_sim",
    "w_ci_half",
)


class SweepSpec(BaseModel):
    """Traffic-rate grid: rho from rho_min to rho_max in `steps` points, lambda = rho / beta1."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    rho_min: float = Field(gt=0, lt=1)
    rho_max: float = Field(gt=0, lt=1)
    steps: int = Field(ge=2)
    theta: float = Field(gt=0, allow_inf_nan=False)
    service: ServiceDistribution
    sim: Optional[SimulationConfig] = None
    chain: bool = True

    @field_validator("service", mode="before")
    @classmethod
    def parse_service_spec(cls, value: object) -> object:
        if isinstance(value, str):
            try:
                return parse_service(value)
            except RtgqError as e:
                raise ValueError(e.message) from e
        return value

    @field_serializer("service")
    def serialize_service(self, service: ServiceDistribution) -> str:
        return service.spec

    @model_validator(mode="after")
    def check_range(self) -> "SweepSpec":
        if not self.rho_min < self.rho_max:
            raise ValueError(f"rho_min ({self.rho_min}) must be below rho_max ({self.rho_max})")
        return self

    def grid(self) -> list[float]:
        width = (self.rho_max - self.rho_min) / (self.steps - 1)
        points = [self.rho_min + i * width for i in range(self.steps - 1)]
        return [*points, self.rho_max]


class SweepRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    rho: float
    lam: float
    n_mean_analytic: float
    w_mean_analytic: float
    n_mean_chain: Optional[float] = None
    n_mean_sim: Optional[float] = None
    n_ci_half: Optional[float] = None
    w_mean_sim: Optional[float] = None
    w_ci_half: Optional[float] = None

    def csv_values(self) -> list[Optional[float]]:
        return [
            self.rho,
            self.lam,
            self.n_mean_analytic,
            self.w_mean_analytic,
            self.n_mean_chain,
            self.n_mean_sim,
            self.n_ci_half,
            self.w_mean_sim,
            self.w_ci_half,
        ]
