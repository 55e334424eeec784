from typing import Literal, Optional

from pydantic import Field, BaseModel, ConfigDict

__all__ = ["Tolerances", "PointRecord", "ValidationReport"]


class Tolerances(BaseModel):
    model_config = ConfigDict(frozen=True)

    chain_rel: float = Field(default=1e-6, gt=0)
    sim_rel: float = Field(default=0.02, gt=0)
    pgf_abs: float = Field(default=1e-6, gt=0)
    require_ci_cover: bool = True


class PointRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    rho: float
    n_mean_analytic: Optional[float] = None
    w_mean_analytic: Optional[float] = None
    n_mean_chain: Optional[float] = None
    chain_K: Optional[int] = None
    n_mean_sim: Optional[float] = None
    n_ci_half: Optional[float] = None
    w_mean_sim: Optional[float] = None
    w_ci_half: Optional[float] = None
    chain_pass: bool = False
    sim_gap_pass: bool = False
    sim_ci_pass: bool = False
    pgf_pass: bool = False
    errors: list[str] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.errors and self.chain_pass and self.sim_gap_pass and self.sim_ci_pass and self.pgf_pass


class ValidationReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    points: list[PointRecord]
    verdict: Literal["pass", "fail"]

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"
