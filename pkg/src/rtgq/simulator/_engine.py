"""
Event loops of the RTG zone.

Trucks arrive at rate lam. One that finds the RTG free is loaded at once; otherwise it
parks in the orbit. While the RTG is idle with k parked trucks, the next loading goes to
whichever comes first: a primary arrival (rate lam) or a retrial (rate k theta), the
retried truck being picked uniformly. The `individual` mode keeps one Exp(theta) clock
per parked truck instead and reschedules the clocks that fire while the RTG is busy.
"""

import math
import heapq
import logging

from ..types import Scenario, SimState, SimulationConfig, SimulationResult
from ._streams import RandomStreams
from ..errors import SimulationOverflowError
from .output_analysis import estimate_with_ci

logger = logging.getLogger(__name__)

__all__ = ["simulate", "EVENT_BUDGET"]

EVENT_BUDGET = 2**40
INF = math.inf


class _Window:
    """Warm-up cut, time-average integrals, batch means and the departure-epoch histogram."""

    __slots__ = (
        "warmup",
        "batch_size",
        "target",
        "seen",
        "measured",
        "measuring",
        "t_last",
        "t_start",
        "batch_start",
        "batch_area",
        "batch_sojourn",
        "batch_count",
        "busy_time",
        "area",
        "sojourn_total",
        "n_batches",
        "w_batches",
        "histogram",
    )

    def __init__(self, cfg: SimulationConfig):
        self.warmup = cfg.effective_warmup
        self.batch_size = cfg.batch_size
        self.target = cfg.measured_departures
        self.seen = 0
        self.measured = 0
        self.measuring = self.warmup == 0
        self.t_last = 0.0
        self.t_start = 0.0
        self.batch_start = 0.0
        self.batch_area = 0.0
        self.batch_sojourn = 0.0
        self.batch_count = 0
        self.busy_time = 0.0
        self.area = 0.0
        self.sojourn_total = 0.0
        self.n_batches: list[float] = []
        self.w_batches: list[float] = []
        self.histogram: list[int] = []

    def advance(self, t: float, in_zone: int, busy: int) -> None:
        if self.measuring:
            dt = t - self.t_last
            self.batch_area += in_zone * dt
            self.area += in_zone * dt
            self.busy_time += busy * dt
        self.t_last = t

    def departure(self, t: float, sojourn: float, orbit_after: int) -> bool:
        """Record a completed loading; True once the measured window is full."""
        self.seen += 1
        if not self.measuring:
            if self.seen >= self.warmup:
                self.measuring = True
                self.t_start = self.batch_start = t
            return False

        self.measured += 1
        self.batch_sojourn += sojourn
        self.sojourn_total += sojourn
        self.batch_count += 1
        if orbit_after >= len(self.histogram):
            self.histogram.extend([0] * (orbit_after + 1 - len(self.histogram)))
        self.histogram[orbit_after] += 1

        if self.batch_count == self.batch_size:
            self.n_batches.append(self.batch_area / (t - self.batch_start))
            self.w_batches.append(self.batch_sojourn / self.batch_count)
            self.batch_start = t
            self.batch_area = 0.0
            self.batch_sojourn = 0.0
            self.batch_count = 0
        return self.measured >= self.target


def _result(sc: Scenario, cfg: SimulationConfig, window: _Window, events: int, confidence: float) -> SimulationResult:
    # point estimates over the whole window; batches only size the intervals
    _, n_half = estimate_with_ci(window.n_batches, confidence)
    _, w_half = estimate_with_ci(window.w_batches, confidence)
    sim_time = window.t_last - window.t_start
    return SimulationResult(
        n_mean=window.area / sim_time if sim_time > 0 else 0.0,
        n_ci_half=n_half,
        w_mean=window.sojourn_total / window.measured if window.measured else 0.0,
        w_ci_half=w_half,
        utilization=window.busy_time / sim_time if sim_time > 0 else 0.0,
        departure_orbit_histogram=window.histogram,
        departures=window.measured,
        sim_time=sim_time,
        events=events,
        seed=cfg.seed,
        retrial_mode=cfg.retrial_mode,
        non_stationary=sc.rho >= 1.0,
    )


def _run_aggregate(
    sc: Scenario, cfg: SimulationConfig, window: _Window, streams: RandomStreams
) -> tuple[int, SimState]:
    lam, theta = sc.lam, sc.theta
    arrival, retrial, service, uniform = streams.arrival, streams.retrial, streams.service, streams.uniform

    orbit: list[float] = []  # arrival epochs of parked trucks
    busy = 0
    entry = 0.0  # arrival epoch of the truck being loaded
    next_arrival = arrival() / lam
    service_end = INF
    next_retrial = INF
    events = 0
    t = 0.0

    while True:
        events += 1
        if events > EVENT_BUDGET:
            raise SimulationOverflowError(f"event budget {EVENT_BUDGET} exhausted at t={t:g}")

        if service_end <= next_arrival:
            t = service_end
            window.advance(t, len(orbit) + 1, 1)
            busy = 0
            service_end = INF
            k = len(orbit)
            next_retrial = t + retrial() / (k * theta) if k else INF
            if window.departure(t, t - entry, k):
                break
        elif next_arrival <= next_retrial:
            t = next_arrival
            window.advance(t, len(orbit) + busy, busy)
            if busy:
                orbit.append(t)
            else:
                busy = 1
                entry = t
                service_end = t + service()
                next_retrial = INF
            next_arrival = t + arrival() / lam
        else:
            t = next_retrial
            window.advance(t, len(orbit), 0)
            k = len(orbit)
            pick = int(uniform() * k)
            entry = orbit[pick]
            orbit[pick] = orbit[-1]
            orbit.pop()
            busy = 1
            service_end = t + service()
            next_retrial = INF

    state = SimState(
        clock=t,
        server_busy=busy,
        orbit_size=len(orbit),
        next_arrival=next_arrival,
        next_retrial=None if next_retrial == INF else next_retrial,
        service_end=None if service_end == INF else service_end,
        in_service_entry_time=entry if busy else None,
    )
    return events, state


def _run_individual(
    sc: Scenario, cfg: SimulationConfig, window: _Window, streams: RandomStreams
) -> tuple[int, SimState]:
    lam, theta = sc.lam, sc.theta
    arrival, retrial, service = streams.arrival, streams.retrial, streams.service

    clocks: list[tuple[float, int, float]] = []  # (retrial epoch, truck id, arrival epoch)
    busy = 0
    entry = 0.0
    next_arrival = arrival() / lam
    service_end = INF
    truck_id = 0
    events = 0
    t = 0.0

    while True:
        events += 1
        if events > EVENT_BUDGET:
            raise SimulationOverflowError(f"event budget {EVENT_BUDGET} exhausted at t={t:g}")

        next_retrial = clocks[0][0] if clocks else INF
        if service_end <= next_arrival and service_end <= next_retrial:
            t = service_end
            window.advance(t, len(clocks) + 1, 1)
            busy = 0
            service_end = INF
            if window.departure(t, t - entry, len(clocks)):
                break
        elif next_arrival <= next_retrial:
            t = next_arrival
            window.advance(t, len(clocks) + busy, busy)
            if busy:
                truck_id += 1
                heapq.heappush(clocks, (t + retrial() / theta, truck_id, t))
            else:
                busy = 1
                entry = t
                service_end = t + service()
            next_arrival = t + arrival() / lam
        else:
            t = next_retrial
            window.advance(t, len(clocks) + busy, busy)
            if busy:
                # RTG occupied: the truck stays parked and draws a fresh clock
                _, tid, arrived = clocks[0]
                heapq.heapreplace(clocks, (t + retrial() / theta, tid, arrived))
            else:
                _, _, entry = heapq.heappop(clocks)
                busy = 1
                service_end = t + service()

    state = SimState(
        clock=t,
        server_busy=busy,
        orbit_size=len(clocks),
        next_arrival=next_arrival,
        next_retrial=clocks[0][0] if clocks and not busy else None,
        service_end=None if service_end == INF else service_end,
        in_service_entry_time=entry if busy else None,
    )
    return events, state


def simulate(sc: Scenario, cfg: SimulationConfig, confidence: float = 0.95) -> tuple[SimulationResult, SimState]:
    """Run one replication; returns the result and the state at the last measured departure."""
    if sc.rho >= 1.0:
        logger.warning(f"simulating unstable scenario {sc.describe()} (rho={sc.rho:.4g}); result is non-stationary")
    logger.debug(
        f"simulate {sc.describe()} seed={cfg.seed} warmup={cfg.effective_warmup} "
        f"measured={cfg.measured_departures} batches={cfg.batches} mode={cfg.retrial_mode}"
    )

    window = _Window(cfg)
    streams = RandomStreams(cfg.seed, sc.service)
    loop = _run_aggregate if cfg.retrial_mode == "aggregate" else _run_individual
    events, state = loop(sc, cfg, window, streams)

    result = _result(sc, cfg, window, events, confidence)
    logger.debug(
        f"simulated {result.departures} departures over {result.sim_time:.6g} time units "
        f"({events} events), n_mean={result.n_mean:.6g}±{result.n_ci_half:.2g}"
    )
    return result, state
