from typing import Any

from pydantic import Field, BaseModel, ConfigDict, field_validator, field_serializer

from ..errors import RtgqError
from ..distributions import ServiceDistribution, parse_service

__all__ = ["Scenario"]


class Scenario(BaseModel):
    """One queue instance: Poisson arrivals at `lam`, per-truck retrial rate `theta`, general service."""

    model_config = ConfigDict(frozen=True, extra="forbid", populate_by_name=True)

    lam: float = Field(alias="lambda", gt=0, allow_inf_nan=False)
    theta: float = Field(gt=0, allow_inf_nan=False)
    service: ServiceDistribution

    @field_validator("service", mode="before")
    @classmethod
    def parse_service_spec(cls, value: Any) -> Any:
        if isinstance(value, str):
            try:
                return parse_service(value)
            except RtgqError as e:
                raise ValueError(e.message) from e
        return value

    @field_serializer("service")
    def serialize_service(self, service: ServiceDistribution) -> str:
        return service.spec

    @property
    def beta1(self) -> float:
        return self.service.moments()[0]

    @property
    def beta2(self) -> float:
        return self.service.moments()[1]

    @property
    def rho(self) -> float:
        return self.lam * self.beta1

    def with_theta(self, theta: float) -> "Scenario":
        return Scenario(lam=self.lam, theta=theta, service=self.service)

    def with_lambda(self, lam: float) -> "Scenario":
        return Scenario(lam=lam, theta=self.theta, service=self.service)

    def describe(self) -> str:
        return f"lambda={self.lam:g} theta={self.theta:g} service={self.service.spec}"
