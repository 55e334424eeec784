"""
Service-time laws of the RTG.

Each law carries its exact first two raw moments, the Laplace-Stieltjes transform
B(s) = E[exp(-s S)], the density where one exists, samplers, and the closed-form
distribution q_k of the number of Poisson(rate) arrivals during one service.

Textual grammar used by scenario documents and the CLI:

    exp:<mu> | det:<d> | erlang:<shape>:<rate> | hyper2:<p>:<mu1>:<mu2>
"""

import math
import logging
from abc import abstractmethod
from typing import Union, Literal, Annotated

import numpy as np
import numpy.typing as npt
from scipy import stats
from pydantic import Field, BaseModel, ConfigDict, TypeAdapter, ValidationError

from .errors import DistributionError

logger = logging.getLogger(__name__)

__all__ = [
    "Exponential",
    "Deterministic",
    "Erlang",
    "HyperExp2",
    "ServiceDistribution",
    "parse_service",
]

PositiveFinite = Annotated[float, Field(gt=0, allow_inf_nan=False)]
Probability = Annotated[float, Field(ge=0, le=1, allow_inf_nan=False)]


class _ServiceLaw(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    @abstractmethod
    def moments(self) -> tuple[float, float]:
        """Exact (beta1, beta2), the first and second raw moments."""

    @abstractmethod
    def _lst(self, s: float) -> float: ...

    @abstractmethod
    def _lst_complement(self, s: float) -> float: ...

    @abstractmethod
    def _pdf(self, t: float) -> float: ...

    @abstractmethod
    def _pmf(self, rate: float, k: npt.NDArray[np.int64]) -> npt.NDArray[np.float64]: ...

    @abstractmethod
    def sample_many(self, rng: np.random.Generator, size: int) -> npt.NDArray[np.float64]:
        """Draw `size` service durations from `rng`."""

    @abstractmethod
    def sample(self, rng: np.random.Generator) -> float:
        """Draw one service duration from `rng`."""

    @property
    @abstractmethod
    def spec(self) -> str:
        """The law in the textual grammar, e.g. `exp:1.0`."""

    @property
    def mean(self) -> float:
        return self.moments()[0]

    def scv(self) -> float:
        """Squared coefficient of variation beta2 / beta1**2 - 1."""
        beta1, beta2 = self.moments()
        return beta2 / beta1**2 - 1.0

    def lst(self, s: float) -> float:
        if not s >= 0:
            raise DistributionError(f"Laplace-Stieltjes transform needs s >= 0, got {s}")
        return self._lst(s)

    def lst_complement(self, s: float) -> float:
        """1 - B(s), evaluated without cancellation for small s."""
        if not s >= 0:
            raise DistributionError(f"Laplace-Stieltjes transform needs s >= 0, got {s}")
        return self._lst_complement(s)

    def pdf(self, t: float) -> float:
        if not t >= 0:
            raise DistributionError(f"density needs t >= 0, got {t}")
        return self._pdf(t)

    def arrival_count_pmf(self, rate: float, k: int) -> float:
        """q_k: probability of exactly k Poisson(rate) arrivals during one service."""
        if k < 0:
            return 0.0
        return float(self._pmf(rate, np.asarray([k], dtype=np.int64))[0])

    def arrival_count_pmf_vector(self, rate: float, n: int) -> npt.NDArray[np.float64]:
        """q_0 .. q_{n-1} as an array."""
        return self._pmf(rate, np.arange(n, dtype=np.int64))

    def __str__(self) -> str:
        return self.spec


def _geometric_pmf(rate: float, mu: float, k: npt.NDArray[np.int64]) -> npt.NDArray[np.float64]:
    # number of failures before the first success, success probability mu / (rate + mu)
    return np.asarray(stats.nbinom.pmf(k, 1, mu / (rate + mu)), dtype=np.float64)


class Exponential(_ServiceLaw):
    kind: Literal["exp"] = "exp"
    mu: PositiveFinite

    def moments(self) -> tuple[float, float]:
        return 1.0 / self.mu, 2.0 / self.mu**2

    def _lst(self, s: float) -> float:
        return self.mu / (self.mu + s)

    def _lst_complement(self, s: float) -> float:
        return s / (self.mu + s)

    def _pdf(self, t: float) -> float:
        return self.mu * math.exp(-self.mu * t)

    def _pmf(self, rate: float, k: npt.NDArray[np.int64]) -> npt.NDArray[np.float64]:
        return _geometric_pmf(rate, self.mu, k)

    def sample(self, rng: np.random.Generator) -> float:
        return float(rng.exponential(1.0 / self.mu))

    def sample_many(self, rng: np.random.Generator, size: int) -> npt.NDArray[np.float64]:
        return rng.exponential(1.0 / self.mu, size)

    @property
    def spec(self) -> str:
        return f"exp:{self.mu!r}"


class Deterministic(_ServiceLaw):
    kind: Literal["det"] = "det"
    d: PositiveFinite

    def moments(self) -> tuple[float, float]:
        return self.d, self.d**2

    def _lst(self, s: float) -> float:
        return math.exp(-s * self.d)

    def _lst_complement(self, s: float) -> float:
        return -math.expm1(-s * self.d)

    def _pdf(self, t: float) -> float:
        raise DistributionError("deterministic service is a point mass and has no density; use its duration `d`")

    def _pmf(self, rate: float, k: npt.NDArray[np.int64]) -> npt.NDArray[np.float64]:
        return np.asarray(stats.poisson.pmf(k, rate * self.d), dtype=np.float64)

    def sample(self, rng: np.random.Generator) -> float:
        return self.d

    def sample_many(self, rng: np.random.Generator, size: int) -> npt.NDArray[np.float64]:
        return np.full(size, self.d, dtype=np.float64)

    @property
    def spec(self) -> str:
        return f"det:{self.d!r}"


class Erlang(_ServiceLaw):
    kind: Literal["erlang"] = "erlang"
    shape: Annotated[int, Field(gt=0)]
    rate: PositiveFinite

    def moments(self) -> tuple[float, float]:
        n, mu = self.shape, self.rate
        return n / mu, n * (n + 1) / mu**2

    def _lst(self, s: float) -> float:
        return math.exp(-self.shape * math.log1p(s / self.rate))

    def _lst_complement(self, s: float) -> float:
        return -math.expm1(-self.shape * math.log1p(s / self.rate))

    def _pdf(self, t: float) -> float:
        return float(stats.erlang.pdf(t, self.shape, scale=1.0 / self.rate))

    def _pmf(self, rate: float, k: npt.NDArray[np.int64]) -> npt.NDArray[np.float64]:
        return np.asarray(stats.nbinom.pmf(k, self.shape, self.rate / (rate + self.rate)), dtype=np.float64)

    def sample(self, rng: np.random.Generator) -> float:
        return float(rng.gamma(self.shape, 1.0 / self.rate))

    def sample_many(self, rng: np.random.Generator, size: int) -> npt.NDArray[np.float64]:
        return rng.gamma(self.shape, 1.0 / self.rate, size)

    @property
    def spec(self) -> str:
        return f"erlang:{self.shape}:{self.rate!r}"


class HyperExp2(_ServiceLaw):
    """Two-phase hyperexponential: Exp(mu1) with probability p, Exp(mu2) otherwise."""

    kind: Literal["hyper2"] = "hyper2"
    p: Probability
    mu1: PositiveFinite
    mu2: PositiveFinite

    def moments(self) -> tuple[float, float]:
        p, q = self.p, 1.0 - self.p
        return p / self.mu1 + q / self.mu2, 2.0 * p / self.mu1**2 + 2.0 * q / self.mu2**2

    def _lst(self, s: float) -> float:
        return self.p * self.mu1 / (self.mu1 + s) + (1.0 - self.p) * self.mu2 / (self.mu2 + s)

    def _lst_complement(self, s: float) -> float:
        return self.p * s / (self.mu1 + s) + (1.0 - self.p) * s / (self.mu2 + s)

    def _pdf(self, t: float) -> float:
        return self.p * self.mu1 * math.exp(-self.mu1 * t) + (1.0 - self.p) * self.mu2 * math.exp(-self.mu2 * t)

    def _pmf(self, rate: float, k: npt.NDArray[np.int64]) -> npt.NDArray[np.float64]:
        return self.p * _geometric_pmf(rate, self.mu1, k) + (1.0 - self.p) * _geometric_pmf(rate, self.mu2, k)

    def sample(self, rng: np.random.Generator) -> float:
        mu = self.mu1 if rng.random() < self.p else self.mu2
        return float(rng.exponential(1.0 / mu))

    def sample_many(self, rng: np.random.Generator, size: int) -> npt.NDArray[np.float64]:
        first = rng.random(size) < self.p
        return rng.exponential(np.where(first, 1.0 / self.mu1, 1.0 / self.mu2))

    @property
    def spec(self) -> str:
        return f"hyper2:{self.p!r}:{self.mu1!r}:{self.mu2!r}"


ServiceDistribution = Annotated[
    Union[Exponential, Deterministic, Erlang, HyperExp2],
    Field(discriminator="kind"),
]

_service_adapter: TypeAdapter[Union[Exponential, Deterministic, Erlang, HyperExp2]] = TypeAdapter(
    ServiceDistribution
)

_GRAMMAR: dict[str, tuple[str, ...]] = {
    "exp": ("mu",),
    "det": ("d",),
    "erlang": ("shape", "rate"),
    "hyper2": ("p", "mu1", "mu2"),
}


def parse_service(text: str) -> Union[Exponential, Deterministic, Erlang, HyperExp2]:
    """Parse `exp:1.0`, `det:1`, `erlang:2:2`, `hyper2:0.5:0.5:2.0` into a service law."""
    kind, *raw = text.strip().split(":")
    names = _GRAMMAR.get(kind)
    if names is None:
        raise DistributionError(f"unknown service law '{kind}' in '{text}', expected one of {', '.join(_GRAMMAR)}")
    if len(raw) != len(names):
        raise DistributionError(f"'{kind}' takes {len(names)} parameter(s) ({':'.join(names)}), got '{text}'")

    values: dict[str, object] = {"kind": kind}
    for name, token in zip(names, raw):
        try:
            values[name] = int(token) if name == "shape" else float(token)
        except ValueError:
            raise DistributionError(f"parameter '{name}' of '{text}' is not a number: '{token}'") from None

    try:
        return _service_adapter.validate_python(values)
    except ValidationError as e:
        problems = "; ".join(f"{'.'.join(str(p) for p in err['loc'][1:])}: {err['msg']}" for err in e.errors())
        raise DistributionError(f"invalid parameters in '{text}': {problems}") from e
