"""
End-to-end checks at full simulation length: 10^6 measured departures, seed 42, 32 batches.

Run with `pytest -m integration`; each simulated point takes several seconds.
"""

import logging

import numpy as np
import pytest
from typer.testing import CliRunner

from rtgq import Scenario, SweepSpec, run_sweep
from rtgq.cli import app
from rtgq.types import SimulationConfig
from rtgq.analytics import mean_trucks, evaluate_pgf, pk_limit_mean, derivative_crosscheck
from rtgq.simulator import run as simulate
from rtgq.simulator.output_analysis import total_variation, departure_epoch_histogram
from rtgq.embedded_chain import solve, chain_mean, build_matrix, transition_prob

logger = logging.getLogger(__name__)

FULL = SimulationConfig(seed=42, measured_departures=10**6, batches=32)
GRID = (0.1, 0.3, 0.5, 0.7, 0.9)


def zone(lam: float, service: str = "exp:1.0", theta: float = 1.4) -> Scenario:
    return Scenario.model_validate({"lambda": lam, "theta": theta, "service": service})


@pytest.mark.integration
class TestThreeWayAgreement:
    def test_exponential_grid(self):
        covered = 0
        for rho in GRID:
            sc = zone(rho)
            n = mean_trucks(sc)
            _, dist = solve(sc, "auto")
            assert abs(chain_mean(dist) - n) <= 1e-6 * (1.0 + n)

            result = simulate(sc, FULL)
            gap = abs(result.n_mean - n)
            logger.info(f"rho={rho}: analytic {n:.6f} simulated {result.n_mean:.6f} +- {result.n_ci_half:.6f}")
            assert gap <= 0.02 * n
            covered += gap <= result.n_ci_half
        # a 95% interval misses now and then; two misses in five would be a real bias
        assert covered >= 4

    def test_reference_means(self):
        assert mean_trucks(zone(0.5)) == pytest.approx(1.357143, abs=1e-6)
        assert mean_trucks(zone(0.9)) == pytest.approx(14.785714, abs=1e-6)


@pytest.mark.integration
class TestSimulatedBalance:
    @pytest.mark.parametrize("rho", [0.3, 0.5, 0.7])
    def test_utilization_and_little(self, rho):
        result = simulate(zone(rho), FULL)
        assert abs(result.utilization - rho) <= 0.005
        little = result.lambda_effective * result.w_mean
        assert abs(result.n_mean - little) / result.n_mean <= 0.01

    def test_retrial_modes_agree(self):
        sc = zone(0.5)
        aggregate = simulate(sc, FULL)
        individual = simulate(sc, FULL.model_copy(update={"retrial_mode": "individual"}))
        assert abs(aggregate.n_mean - individual.n_mean) <= aggregate.n_ci_half + individual.n_ci_half
        assert abs(aggregate.utilization - individual.utilization) <= 0.005


@pytest.mark.integration
def test_loading_time_variability_is_visible():
    deterministic, exponential = zone(0.5, "det:1.0"), zone(0.5, "exp:1.0")
    assert mean_trucks(deterministic) == pytest.approx(1.107143, abs=1e-6)
    assert mean_trucks(exponential) == pytest.approx(1.357143, abs=1e-6)

    det_run, exp_run = simulate(deterministic, FULL), simulate(exponential, FULL)
    assert det_run.n_mean + det_run.n_ci_half < exp_run.n_mean - exp_run.n_ci_half


@pytest.mark.integration
class TestGeneratingFunction:
    @staticmethod
    def random_zones(count: int) -> list[Scenario]:
        rng = np.random.default_rng(20240501)
        hyper_ranges = ((0.1, 0.9), (0.5, 2.0), (2.0, 5.0))
        laws = [
            lambda: f"exp:{float(rng.uniform(0.5, 2.0))!r}",
            lambda: f"det:{float(rng.uniform(0.5, 2.0))!r}",
            lambda: f"erlang:{int(rng.integers(1, 5))}:{float(rng.uniform(1.0, 4.0))!r}",
            lambda: "hyper2:" + ":".join(repr(float(rng.uniform(a, b))) for a, b in hyper_ranges),
        ]
        zones = []
        for i in range(count):
            service = laws[i % len(laws)]()
            beta1 = Scenario.model_validate({"lambda": 1.0, "theta": 1.0, "service": service}).beta1
            rho = float(rng.uniform(0.05, 0.85))
            zones.append(zone(rho / beta1, service, theta=float(rng.uniform(0.2, 5.0))))
        return zones

    def test_random_zones(self):
        for sc in self.random_zones(20):
            assert abs(evaluate_pgf(sc, 1.0) - 1.0) <= 1e-10, sc.describe()
            _, dist = solve(sc, "auto")
            assert evaluate_pgf(sc, 0.0) == pytest.approx(dist.pi0, abs=1e-6), sc.describe()

    def test_exponential_origin(self):
        assert evaluate_pgf(zone(0.5), 0.0) == pytest.approx(0.5 * np.exp(-(0.5 / 1.4) * np.log(2.0)), abs=1e-9)
        assert evaluate_pgf(zone(0.5), 0.0) == pytest.approx(0.390356, abs=1e-6)


@pytest.mark.integration
@pytest.mark.parametrize(
    "lam, service",
    [(0.7, "exp:1.0"), (0.7, "det:1.0"), (0.7, "erlang:2:2"), (0.56, "hyper2:0.5:0.5:2.0"), (0.3, "exp:1.0")],
)
def test_slope_at_one_matches_closed_form(lam, service):
    numeric, closed, gap = derivative_crosscheck(zone(lam, service))
    assert gap <= 1e-4 * abs(closed)


@pytest.mark.integration
def test_fast_retrials_recover_classic_queue():
    sc = zone(0.5, theta=1e6)
    assert mean_trucks(sc) == pytest.approx(pk_limit_mean(sc), rel=1e-4)
    assert mean_trucks(sc) == pytest.approx(1.0, rel=1e-4)
    assert simulate(sc, FULL).n_mean == pytest.approx(mean_trucks(sc), rel=0.02)


@pytest.mark.integration
def test_traffic_sweep_trend():
    spec = SweepSpec(rho_min=0.05, rho_max=0.95, steps=19, theta=1.4, service="exp:1.0")  # type: ignore[arg-type]
    rows = run_sweep(spec, max_workers=1)
    n = [row.n_mean_analytic for row in rows]
    w = [row.w_mean_analytic for row in rows]
    assert all(a < b for a, b in zip(n, n[1:]))
    assert all(a < b for a, b in zip(w, w[1:]))

    by_rho = {round(row.rho, 2): row for row in rows}
    ratio = by_rho[0.9].n_mean_analytic / by_rho[0.6].n_mean_analytic
    assert ratio >= 4
    assert ratio == pytest.approx(6.90, abs=0.01)
    for row in rows:
        assert row.w_mean_analytic == pytest.approx(row.n_mean_analytic / row.lam, rel=1e-15)


@pytest.mark.integration
class TestDeterminism:
    runner = CliRunner()

    def invoke(self, *args: str) -> str:
        result = self.runner.invoke(app, list(args))
        assert result.exit_code in (0, 1), result.output
        return result.stdout

    def test_validate_is_repeatable(self):
        args = ("validate", "--lambda", "0.5", "--service", "exp:1.0", "--seed", "42", "--departures", "1000000")
        assert self.invoke(*args) == self.invoke(*args)

    def test_sweep_is_repeatable_and_seeded(self, tmp_path):
        base = ["sweep", "--rho-min", "0.3", "--rho-max", "0.7", "--steps", "3", "--simulate"]
        base += ["--departures", "200000", "--workers", "1", "-q"]
        paths = [tmp_path / name for name in ("a.csv", "b.csv", "c.csv")]
        self.invoke(*base, "--seed", "42", "--out", str(paths[0]))
        self.invoke(*base, "--seed", "42", "--out", str(paths[1]))
        self.invoke(*base, "--seed", "43", "--out", str(paths[2]))
        assert paths[0].read_bytes() == paths[1].read_bytes()

        same = [line.split(",") for line in paths[0].read_text().splitlines()[1:]]
        other = [line.split(",") for line in paths[2].read_text().splitlines()[1:]]
        for a, b in zip(same, other):
            assert a[:5] == b[:5]  # rho, lambda, analytic and chain columns
            assert a[5] != b[5]


@pytest.mark.integration
class TestKernelSanity:
    def test_rows_sum_to_one(self):
        sc = zone(0.5)
        for k in range(21):
            assert sum(transition_prob(sc, k, j) for j in range(k + 80)) == pytest.approx(1.0, abs=1e-12)

    def test_empty_orbit_row(self):
        sc = zone(0.5, "erlang:2:2")
        matrix = build_matrix(sc, 64)
        for j in range(10):
            assert transition_prob(sc, 0, j) == sc.service.arrival_count_pmf(sc.lam, j)
            assert matrix.rows[0, j] * matrix.row_sums[0] == pytest.approx(matrix.q[j], abs=1e-16)

    def test_simulated_departure_law_matches_chain(self):
        sc = zone(0.5)
        _, dist = solve(sc, "auto")
        result = simulate(sc, FULL)
        assert total_variation(departure_epoch_histogram(result), dist.pi) < 0.01
