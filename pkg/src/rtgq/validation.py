"""
Three-way check of one scenario: closed form, embedded-chain solve and simulation.
"""

import logging
from typing import Optional

from .types import Scenario, Tolerances, PointRecord, SimulationConfig, ValidationReport
from .errors import RtgqError
from .analytics import mean_wait, mean_trucks, evaluate_pgf, require_stable
from .simulator import run as simulate
from .embedded_chain import solve, chain_mean

logger = logging.getLogger(__name__)

__all__ = ["validate_point", "validate"]

PGF_UNIT_TOLERANCE = 1e-10


def validate_point(sc: Scenario, cfg: SimulationConfig, tolerances: Optional[Tolerances] = None) -> PointRecord:
    tol = tolerances or Tolerances()
    values: dict[str, object] = {"rho": sc.rho}
    errors: list[str] = []

    try:
        require_stable(sc)
        n = mean_trucks(sc)
        values.update(n_mean_analytic=n, w_mean_analytic=mean_wait(sc))
    except RtgqError as e:
        logger.info(f"validation of {sc.describe()} stopped: {e.message}")
        return PointRecord(**values, errors=[f"{e.code}: {e.message}"])  # type: ignore[arg-type]

    pi0: Optional[float] = None
    try:
        _, dist = solve(sc, "auto")
        n_chain = chain_mean(dist)
        pi0 = dist.pi0
        values.update(
            n_mean_chain=n_chain, chain_K=dist.K, chain_pass=abs(n_chain - n) <= tol.chain_rel * (1.0 + n)
        )
    except RtgqError as e:
        errors.append(f"{e.code}: chain: {e.message}")

    try:
        unit_ok = abs(evaluate_pgf(sc, 1.0) - 1.0) <= PGF_UNIT_TOLERANCE
        origin_ok = pi0 is not None and abs(evaluate_pgf(sc, 0.0) - pi0) <= tol.pgf_abs
        values["pgf_pass"] = unit_ok and origin_ok
    except RtgqError as e:
        errors.append(f"{e.code}: pgf: {e.message}")

    try:
        result = simulate(sc, cfg)
        gap = abs(result.n_mean - n)
        values.update(
            n_mean_sim=result.n_mean,
            n_ci_half=result.n_ci_half,
            w_mean_sim=result.w_mean,
            w_ci_half=result.w_ci_half,
            sim_gap_pass=gap <= tol.sim_rel * n,
            sim_ci_pass=gap <= result.n_ci_half or not tol.require_ci_cover,
        )
    except RtgqError as e:
        errors.append(f"{e.code}: simulation: {e.message}")

    record = PointRecord(**values, errors=errors)  # type: ignore[arg-type]
    logger.debug(f"validation {sc.describe()}: {record.model_dump_json()}")
    return record


def validate(sc: Scenario, cfg: SimulationConfig, tolerances: Optional[Tolerances] = None) -> ValidationReport:
    """Passes iff chain, PGF and simulation checks all hold; any component failure fails it."""
    point = validate_point(sc, cfg, tolerances)
    return ValidationReport(points=[point], verdict="pass" if point.passed else "fail")
