"""
Stationary results for the M/G/1 queue with linear retrial rate.

With A(z) = B(lam (1 - z)) the generating function of arrivals during one loading, the
orbit size just after a loading has generating function

    f(z) = (1 - rho) A(z) (1 - z) / (A(z) - z) * exp((lam / theta) * int_1^z G(u) du),
    G(u) = (1 - A(u)) / (A(u) - u),

which factors into the classic M/G/1 generating function and that of the orbit size
seen while the RTG is idle. Differentiating at z = 1 gives the mean number of trucks

    N = rho + lam rho / (theta (1 - rho)) + lam^2 beta2 / (2 (1 - rho)),

and the mean time in the zone follows from Little's law, W = N / lam.
"""

import math
import logging

from scipy import integrate

from .types import Scenario, AnalyticReport
from .config import get_settings
from .errors import RtgqError, UnstableError, QuadratureError, DistributionError

logger = logging.getLogger(__name__)

__all__ = [
    "traffic_intensity",
    "check_stability",
    "require_stable",
    "arrivals_per_service_pmf",
    "arrivals_pgf",
    "orbit_integrand",
    "orbit_exponent",
    "classic_pgf",
    "idle_orbit_pgf",
    "evaluate_pgf",
    "mean_trucks",
    "mean_wait",
    "pk_limit_mean",
    "derivative_crosscheck",
    "analyze",
]

# below this distance from u = 1 the integrand is replaced by its first-order expansion
SERIES_RADIUS = 1e-7


def traffic_intensity(sc: Scenario) -> float:
    return sc.lam * sc.beta1


def check_stability(sc: Scenario) -> UnstableError | None:
    """None when rho < 1, otherwise the UnstableError describing the scenario."""
    rho = traffic_intensity(sc)
    if rho < 1.0:
        return None
    return UnstableError(rho, f"rho={rho:.6g} >= 1 for {sc.describe()}, no stationary regime")


def require_stable(sc: Scenario) -> float:
    """rho of a stable scenario; raises UnstableError otherwise."""
    unstable = check_stability(sc)
    if unstable is not None:
        raise unstable
    return traffic_intensity(sc)


def arrivals_per_service_pmf(sc: Scenario, k: int) -> float:
    """q_k, the probability of k truck arrivals during one loading."""
    return sc.service.arrival_count_pmf(sc.lam, k)


def _check_unit(z: float) -> None:
    if not 0.0 <= z <= 1.0:
        raise DistributionError(f"generating functions are evaluated on [0, 1], got z={z}")


def arrivals_pgf(sc: Scenario, z: float) -> float:
    _check_unit(z)
    return sc.service.lst(sc.lam * (1.0 - z))


def _integrand(sc: Scenario, rho: float, u: float) -> float:
    x = 1.0 - u
    if x < SERIES_RADIUS:
        limit = rho / (1.0 - rho)
        return limit - sc.lam**2 * sc.beta2 * x / (2.0 * (1.0 - rho) ** 2)
    # 1 - A(u) and A(u) - u written through 1 - B to avoid cancellation near u = 1
    c = sc.service.lst_complement(sc.lam * x)
    return c / (x - c)


def orbit_integrand(sc: Scenario, u: float) -> float:
    """G(u) = (1 - A(u)) / (A(u) - u); equals rho / (1 - rho) at u = 1."""
    rho = require_stable(sc)
    _check_unit(u)
    return _integrand(sc, rho, u)


def orbit_exponent(sc: Scenario, z: float) -> float:
    """(lam / theta) * integral from 1 to z of G(u) du."""
    rho = require_stable(sc)
    _check_unit(z)
    if z == 1.0:
        return 0.0

    settings = get_settings()
    result = integrate.quad(
        lambda u: _integrand(sc, rho, u),
        z,
        1.0,
        epsabs=settings.QUAD_TOLERANCE,
        epsrel=settings.QUAD_TOLERANCE,
        limit=settings.QUAD_LIMIT,
        full_output=1,
    )
    if len(result) > 3:
        raise QuadratureError(f"integral of G over [{z}, 1] did not reach {settings.QUAD_TOLERANCE:g}: {result[3]}")
    value, abserr = result[0], result[1]
    logger.debug(f"orbit integral over [{z:.6g}, 1] = {value:.12g} (abserr {abserr:.2e})")
    return -(sc.lam / sc.theta) * value


def classic_pgf(sc: Scenario, z: float) -> float:
    """(1 - rho) (1 - z) A(z) / (A(z) - z): number of trucks in the retrial-free M/G/1 zone."""
    rho = require_stable(sc)
    _check_unit(z)
    if z == 1.0:
        return 1.0
    x = 1.0 - z
    c = sc.service.lst_complement(sc.lam * x)
    if x < SERIES_RADIUS:
        # (1 - z) / (A(z) - z) -> 1 / (1 - rho)
        return (1.0 - rho) * (1.0 - c) / (1.0 - rho + sc.lam**2 * sc.beta2 * x / 2.0)
    return (1.0 - rho) * (1.0 - c) * x / (x - c)


def idle_orbit_pgf(sc: Scenario, z: float) -> float:
    """Generating function of the orbit size while the RTG is idle."""
    return math.exp(orbit_exponent(sc, z))


def evaluate_pgf(sc: Scenario, z: float) -> float:
    """f(z), generating function of the orbit size just after a loading."""
    if z == 1.0:
        require_stable(sc)
        return 1.0
    return classic_pgf(sc, z) * idle_orbit_pgf(sc, z)


def _congestion(sc: Scenario) -> float:
    # N / lam, shared by mean_trucks and mean_wait so Little's identity is exact
    rho = require_stable(sc)
    return sc.beta1 + sc.lam * sc.beta2 / (2.0 * (1.0 - rho)) + rho / (sc.theta * (1.0 - rho))


def mean_wait(sc: Scenario) -> float:
    return _congestion(sc)


def mean_trucks(sc: Scenario) -> float:
    return sc.lam * _congestion(sc)


def pk_limit_mean(sc: Scenario) -> float:
    """Mean number in the retrial-free M/G/1 system, the theta -> infinity limit of mean_trucks."""
    rho = require_stable(sc)
    return rho + sc.lam**2 * sc.beta2 / (2.0 * (1.0 - rho))


def derivative_crosscheck(sc: Scenario, h: float = 1e-3) -> tuple[float, float, float]:
    """
    Numerical f'(1) against the closed-form mean.

    Uses backward differences D(h) = (f(1) - f(1 - h)) / h, which never leave [0, 1],
    combined by Richardson extrapolation 2 D(h/2) - D(h) to cancel the O(h) term.

    Returns:
        (numeric, closed_form, abs_gap)
    """
    closed_form = mean_trucks(sc)
    f1 = evaluate_pgf(sc, 1.0)

    def backward(step: float) -> float:
        return (f1 - evaluate_pgf(sc, 1.0 - step)) / step

    numeric = 2.0 * backward(h / 2.0) - backward(h)
    gap = abs(numeric - closed_form)
    logger.debug(f"f'(1) numeric={numeric:.10g} closed={closed_form:.10g} gap={gap:.3e} for {sc.describe()}")
    return numeric, closed_form, gap


def analyze(sc: Scenario) -> AnalyticReport:
    """All closed-form measures of one scenario; unstable scenarios report rho only."""
    rho = traffic_intensity(sc)
    if check_stability(sc) is not None:
        logger.info(f"unstable scenario {sc.describe()} (rho={rho:.6g})")
        return AnalyticReport(rho=rho, stable=False)

    n_mean = mean_trucks(sc)
    w_mean = mean_wait(sc)
    try:
        pi0: float | None = evaluate_pgf(sc, 0.0)
    except RtgqError as e:
        logger.warning(f"f(0) unavailable for {sc.describe()}: {e.message}")
        pi0 = None
    return AnalyticReport(
        rho=rho,
        stable=True,
        n_mean=n_mean,
        w_mean=w_mean,
        pi0=pi0,
        pk_n_mean=pk_limit_mean(sc),
        orbit_mean=n_mean - rho,
        orbit_wait=w_mean - sc.beta1,
        idle_orbit_mean=sc.lam * rho / (sc.theta * (1.0 - rho)),
    )
