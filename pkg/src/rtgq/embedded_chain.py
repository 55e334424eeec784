"""
Orbit size at loading completions, solved numerically.

From orbit size k the next truck loaded is a primary arrival with probability
lam / (lam + k theta), leaving the orbit unchanged, or a retrying truck with
probability k theta / (lam + k theta), shrinking it by one; A arrivals during the
loading then join the orbit. Hence

    P[k, j] = q_{j-k} lam / (lam + k theta) + q_{j-k+1} k theta / (lam + k theta),

zero for j < k - 1. The kernel is two upper Toeplitz matrices of q mixed row by row.
"""

import csv
import logging
from typing import Union, Literal
from pathlib import Path
from functools import cached_property

import numpy as np
import numpy.typing as npt
from scipy import linalg, signal
from pydantic import BaseModel, ConfigDict

from .types import Scenario, StationaryDistribution
from .config import get_settings
from .errors import ConvergenceError, TruncationBudgetError
from .analytics import require_stable

logger = logging.getLogger(__name__)

__all__ = [
    "TransitionMatrix",
    "transition_prob",
    "build_matrix",
    "stationary",
    "solve",
    "chain_mean",
    "write_pi_csv",
    "AUTO_START",
    "ARRIVAL_TAIL_LIMIT",
    "PI_TAIL_LIMIT",
    "RESIDUAL_LIMIT",
]

AUTO_START = 64
ARRIVAL_TAIL_LIMIT = 1e-12
PI_TAIL_LIMIT = 1e-10
RESIDUAL_LIMIT = 1e-12

Truncation = Union[int, Literal["auto"]]


class TransitionMatrix(BaseModel):
    """
    Truncated kernel over orbit sizes 0..K with renormalized rows.

    Stored in factored form; `rows` materializes the dense (K+1) x (K+1) matrix on first use.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True, ignored_types=(cached_property,))

    K: int
    q: npt.NDArray[np.float64]  # q_0 .. q_{K+1}
    orbit_weight: npt.NDArray[np.float64]  # k theta / (lam + k theta), k = 0..K
    row_sums: npt.NDArray[np.float64]  # before renormalization
    tail_mass: float  # discarded mass of row 0, P(more than K arrivals during one loading)

    @property
    def size(self) -> int:
        return self.K + 1

    @property
    def row_deficits(self) -> npt.NDArray[np.float64]:
        return 1.0 - self.row_sums

    @cached_property
    def rows(self) -> npt.NDArray[np.float64]:
        n = self.size
        zeros = np.zeros(n)
        # primary[k, j] = q_{j-k}; retrial[k, j] = q_{j-k+1}
        primary = linalg.toeplitz(np.concatenate(([self.q[0]], zeros[1:])), self.q[:n])
        retrial = linalg.toeplitz(np.concatenate((self.q[1::-1], zeros[2:])), self.q[1 : n + 1])
        w = self.orbit_weight[:, None]
        dense = (1.0 - w) * primary + w * retrial
        return dense / self.row_sums[:, None]

    def left_multiply(self, pi: npt.NDArray[np.float64]) -> npt.NDArray[np.float64]:
        """pi @ rows without forming the dense matrix (FFT convolution)."""
        n = self.size
        scaled = pi / self.row_sums
        primary = signal.fftconvolve(scaled * (1.0 - self.orbit_weight), self.q[:n])[:n]
        retrial = signal.fftconvolve(scaled * self.orbit_weight, self.q[: n + 1])[1 : n + 1]
        return np.asarray(primary + retrial, dtype=np.float64)


def transition_prob(sc: Scenario, k: int, j: int) -> float:
    """One-step probability P(N_{i+1} = j | N_i = k) of the untruncated chain."""
    if k < 0 or j < 0 or j < k - 1:
        return 0.0
    q = sc.service.arrival_count_pmf
    orbit_weight = k * sc.theta / (sc.lam + k * sc.theta)
    return q(sc.lam, j - k) * (1.0 - orbit_weight) + q(sc.lam, j - k + 1) * orbit_weight


def _build(sc: Scenario, K: int) -> TransitionMatrix:
    settings = get_settings()
    if K > settings.MAX_TRUNCATION:
        raise TruncationBudgetError(f"truncation K={K} exceeds the budget {settings.MAX_TRUNCATION}")
    if K < 1:
        raise TruncationBudgetError(f"truncation must be at least 1, got {K}")

    q = sc.service.arrival_count_pmf_vector(sc.lam, K + 2)
    k = np.arange(K + 1, dtype=np.float64)
    orbit_weight = k * sc.theta / (sc.lam + k * sc.theta)

    # row k keeps arrival counts up to K - k (primary) and K - k + 1 (retrial)
    cumulative = np.cumsum(q)
    primary_kept = cumulative[K - np.arange(K + 1)]
    retrial_kept = cumulative[K + 1 - np.arange(K + 1)]
    row_sums = (1.0 - orbit_weight) * primary_kept + orbit_weight * retrial_kept
    tail_mass = max(0.0, 1.0 - float(cumulative[K]))

    return TransitionMatrix(K=K, q=q, orbit_weight=orbit_weight, row_sums=row_sums, tail_mass=tail_mass)


def _solve_direct(matrix: TransitionMatrix) -> npt.NDArray[np.float64]:
    n = matrix.size
    system = matrix.rows.T - np.eye(n)
    # the balance equations are rank n - 1; the last one is replaced by sum(pi) = 1
    system[-1, :] = 1.0
    rhs = np.zeros(n)
    rhs[-1] = 1.0
    pi = linalg.solve(system, rhs)
    return np.asarray(pi, dtype=np.float64)


def _solve_power(matrix: TransitionMatrix, start: npt.NDArray[np.float64] | None = None) -> npt.NDArray[np.float64]:
    budget = get_settings().POWER_ITERATION_BUDGET
    pi = np.full(matrix.size, 1.0 / matrix.size) if start is None else start
    for sweep in range(budget):
        pi_new = matrix.left_multiply(pi)
        pi_new /= pi_new.sum()
        # checking every sweep doubles the cost; every tenth is enough
        if sweep % 10 == 0 and np.max(np.abs(pi_new - pi)) < RESIDUAL_LIMIT / 10:
            logger.debug(f"power iteration converged after {sweep + 1} sweeps (K={matrix.K})")
            return pi_new
        pi = pi_new
    raise ConvergenceError(f"power iteration did not converge in {budget} sweeps (K={matrix.K})")


def _residual(matrix: TransitionMatrix, pi: npt.NDArray[np.float64], dense: bool) -> float:
    image = pi @ matrix.rows if dense else matrix.left_multiply(pi)
    return float(np.max(np.abs(image - pi)))


def stationary(matrix: TransitionMatrix) -> StationaryDistribution:
    """Normalized left fixed vector of the truncated kernel."""
    dense = matrix.size <= get_settings().DIRECT_SOLVE_LIMIT
    method = "direct" if dense else "power"
    pi = _solve_direct(matrix) if dense else _solve_power(matrix)
    pi = np.clip(pi, 0.0, None)
    pi /= pi.sum()

    residual = _residual(matrix, pi, dense)
    if residual > RESIDUAL_LIMIT:
        logger.debug(f"{method} solve residual {residual:.2e} too large, refining by power iteration")
        pi = _solve_power(matrix, start=pi)
        method = f"{method}+power"
        residual = _residual(matrix, pi, dense)
        if residual > RESIDUAL_LIMIT:
            raise ConvergenceError(f"stationary residual {residual:.2e} above {RESIDUAL_LIMIT:g} (K={matrix.K})")

    logger.debug(f"stationary solve K={matrix.K} method={method} residual={residual:.2e} pi_K={pi[-1]:.2e}")
    return StationaryDistribution(pi=pi, K=matrix.K, residual=residual, method=method)


def _solve_auto(sc: Scenario) -> tuple[TransitionMatrix, StationaryDistribution]:
    budget = get_settings().MAX_TRUNCATION
    K = AUTO_START
    while K <= budget:
        matrix = _build(sc, K)
        if matrix.tail_mass < ARRIVAL_TAIL_LIMIT:
            dist = stationary(matrix)
            if dist.tail < PI_TAIL_LIMIT:
                logger.info(f"auto truncation chose K={K} for {sc.describe()} (pi_K={dist.tail:.2e})")
                return matrix, dist
        K *= 2
    raise TruncationBudgetError(f"no truncation up to {budget} meets the tail criteria for {sc.describe()}")


def build_matrix(sc: Scenario, K: Truncation = "auto") -> TransitionMatrix:
    """
    Kernel truncated at K. With "auto", K doubles from 64 until the arrival tail beyond K
    is below 1e-12 and the solved pi_K is below 1e-10.
    """
    require_stable(sc)
    if K == "auto":
        return _solve_auto(sc)[0]
    return _build(sc, K)


def solve(sc: Scenario, K: Truncation = "auto") -> tuple[TransitionMatrix, StationaryDistribution]:
    require_stable(sc)
    if K == "auto":
        return _solve_auto(sc)
    matrix = _build(sc, K)
    return matrix, stationary(matrix)


def chain_mean(dist: StationaryDistribution) -> float:
    """Sum of k pi_k; logs a warning when pi_K suggests the truncation is too short."""
    if dist.truncation_suspect:
        logger.warning(f"pi_K={dist.tail:.2e} at K={dist.K}: truncation suspect, mean is biased low")
    return float(np.arange(dist.pi.size) @ dist.pi)


def write_pi_csv(dist: StationaryDistribution, path: Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["state", "probability"])
        for state, probability in enumerate(dist.pi):
            writer.writerow([state, repr(float(probability))])
