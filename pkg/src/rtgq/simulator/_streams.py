from typing import Callable

import numpy as np
import numpy.typing as npt

from ..distributions import ServiceDistribution

__all__ = ["RandomStreams", "derive_seed", "STREAM_NAMES"]

# one independent PCG64 stream per purpose, spawned from the run seed in this order
STREAM_NAMES = ("arrivals", "services", "retrials", "tie_breaks")

BLOCK = 4096


class _Buffered:
    """Hands out draws one at a time from blocks of `BLOCK` vectorized draws."""

    __slots__ = ("_draw", "_buffer", "_position")

    def __init__(self, draw: Callable[[int], npt.NDArray[np.float64]]):
        self._draw = draw
        self._buffer: list[float] = []
        self._position = 0

    def __call__(self) -> float:
        if self._position == len(self._buffer):
            self._buffer = self._draw(BLOCK).tolist()
            self._position = 0
        value = self._buffer[self._position]
        self._position += 1
        return value


class RandomStreams:
    """
    Named random streams of one simulation run.

    Every purpose owns its generator, so adding draws to one purpose never shifts
    the sequence seen by another.
    """

    def __init__(self, seed: int, service: ServiceDistribution):
        children = np.random.SeedSequence(seed).spawn(len(STREAM_NAMES))
        generators = {name: np.random.Generator(np.random.PCG64(child)) for name, child in zip(STREAM_NAMES, children)}
        self.generators = generators
        # unit-rate exponentials, scaled by the caller
        self.arrival = _Buffered(generators["arrivals"].standard_exponential)
        self.retrial = _Buffered(generators["retrials"].standard_exponential)
        self.service = _Buffered(lambda size: service.sample_many(generators["services"], size))
        self.uniform = _Buffered(generators["tie_breaks"].random)


def derive_seed(master_seed: int, index: int) -> int:
    """Seed of replication or sweep point `index`, a 64-bit hash of (master_seed, index)."""
    state = np.random.SeedSequence([master_seed, index]).generate_state(1, np.uint64)
    return int(state[0])
