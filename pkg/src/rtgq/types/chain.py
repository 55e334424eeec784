from typing import Any

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, field_serializer

__all__ = ["StationaryDistribution", "ChainSummary", "SUSPECT_TAIL"]

# pi_K above this means mass beyond K was cut off and k-moments are biased low
SUSPECT_TAIL = 1e-8


class StationaryDistribution(BaseModel):
    """Orbit-size law just after a loading, truncated at K."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    pi: npt.NDArray[np.float64]
    K: int
    residual: float
    method: str = "direct"

    @field_serializer("pi")
    def serialize_pi(self, pi: npt.NDArray[np.float64]) -> list[Any]:
        return [float(x) for x in pi]

    @property
    def pi0(self) -> float:
        return float(self.pi[0])

    @property
    def tail(self) -> float:
        return float(self.pi[-1])

    @property
    def truncation_suspect(self) -> bool:
        return self.tail > SUSPECT_TAIL

    def pgf(self, z: float) -> float:
        """Sum of pi_k z^k."""
        return float(np.polynomial.polynomial.polyval(z, self.pi))


class ChainSummary(BaseModel):
    model_config = ConfigDict(frozen=True)

    K: int
    pi0: float
    chain_mean: float
    residual: float
    method: str
    tail_mass: float
    truncation_suspect: bool = False
