"""Batch-means output analysis."""

import math
from typing import Sequence

import numpy as np
import numpy.typing as npt
from scipy import stats

from ..types import SimulationResult
from ..errors import InsufficientDataError

__all__ = ["estimate_with_ci", "departure_epoch_histogram", "total_variation", "MIN_HISTOGRAM_DEPARTURES"]

MIN_HISTOGRAM_DEPARTURES = 10**4


def estimate_with_ci(batch_values: Sequence[float], confidence: float = 0.95) -> tuple[float, float]:
    """
    Sample mean of the batch values and the Student-t half-width at `confidence`.

    Returns:
        (mean, half_width)
    """
    n = len(batch_values)
    if n < 2:
        raise InsufficientDataError(f"a confidence interval needs at least 2 batches, got {n}")
    values = np.asarray(batch_values, dtype=np.float64)
    mean = float(values.mean())
    s = float(values.std(ddof=1))
    if s == 0.0:
        return mean, 0.0
    critical = float(stats.t.ppf(0.5 + confidence / 2.0, n - 1))
    return mean, critical * s / math.sqrt(n)


def departure_epoch_histogram(result: SimulationResult) -> npt.NDArray[np.float64]:
    """Empirical orbit-size law just after a loading, as a probability vector."""
    if result.departures < MIN_HISTOGRAM_DEPARTURES:
        raise InsufficientDataError(
            f"histogram needs at least {MIN_HISTOGRAM_DEPARTURES} departures, run has {result.departures}"
        )
    counts = np.asarray(result.departure_orbit_histogram, dtype=np.float64)
    return counts / counts.sum()


def total_variation(p: npt.ArrayLike, q: npt.ArrayLike) -> float:
    """Total-variation distance between two probability vectors, zero-padded to a common length."""
    a = np.asarray(p, dtype=np.float64)
    b = np.asarray(q, dtype=np.float64)
    n = max(a.size, b.size)
    a = np.pad(a, (0, n - a.size))
    b = np.pad(b, (0, n - b.size))
    return 0.5 * float(np.abs(a - b).sum())
