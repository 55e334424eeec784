from typing import Optional

from pydantic import BaseModel, ConfigDict

__all__ = ["AnalyticReport"]


class AnalyticReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    rho: float
    stable: bool
    n_mean: Optional[float] = None  # trucks in the zone, orbit plus the one being loaded
    w_mean: Optional[float] = None  # arrival to end of loading
    pi0: Optional[float] = None  # f(0), empty orbit just after a loading
    pk_n_mean: Optional[float] = None  # retrial-free M/G/1 mean
    orbit_mean: Optional[float] = None
    orbit_wait: Optional[float] = None
    idle_orbit_mean: Optional[float] = None  # orbit size given the RTG is idle
