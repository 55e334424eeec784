import logging
import multiprocessing
from typing import Optional
from concurrent.futures import ProcessPoolExecutor

from ..types import Scenario, SimulationConfig, SimulationResult
from ._engine import simulate
from ..config import get_settings
from ._streams import STREAM_NAMES, RandomStreams, derive_seed
from .output_analysis import total_variation, estimate_with_ci, departure_epoch_histogram

logger = logging.getLogger(__name__)

__all__ = [
    "run",
    "run_replications",
    "simulate",
    "estimate_with_ci",
    "departure_epoch_histogram",
    "total_variation",
    "derive_seed",
    "RandomStreams",
    "STREAM_NAMES",
]


def run(sc: Scenario, cfg: SimulationConfig) -> SimulationResult:
    """Simulate one replication of `sc`; identical (sc, cfg) give identical results."""
    return simulate(sc, cfg, confidence=get_settings().CONFIDENCE)[0]


def _run_payload(payload: tuple[str, str]) -> str:
    # JSON in and out keeps the worker arguments picklable under the spawn start method
    sc = Scenario.model_validate_json(payload[0])
    cfg = SimulationConfig.model_validate_json(payload[1])
    return run(sc, cfg).model_dump_json()


def run_replications(
    sc: Scenario, cfg: SimulationConfig, count: int, max_workers: Optional[int] = None
) -> list[SimulationResult]:
    """
    Independent replications; replication i runs with seed derive_seed(cfg.seed, i).

    Results come back in replication order whatever the completion order.
    """
    configs = [cfg.model_copy(update={"seed": derive_seed(cfg.seed, i)}) for i in range(count)]
    workers = max_workers if max_workers is not None else get_settings().MAX_WORKERS
    if workers == 1 or count == 1:
        return [run(sc, c) for c in configs]

    payloads = [(sc.model_dump_json(by_alias=True), c.model_dump_json()) for c in configs]
    logger.debug(f"running {count} replications of {sc.describe()} on up to {workers or 'default'} workers")
    with ProcessPoolExecutor(max_workers=workers, mp_context=multiprocessing.get_context("spawn")) as executor:
        return [SimulationResult.model_validate_json(r) for r in executor.map(_run_payload, payloads)]
