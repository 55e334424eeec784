"""
Traffic-rate sweeps: analytic, chain and simulated means over a grid of rho.
"""

import csv
import logging
import multiprocessing
from typing import Optional, Sequence
from pathlib import Path
from concurrent.futures import ProcessPoolExecutor

from tqdm import tqdm

from .types import SWEEP_COLUMNS, Scenario, SweepRow, SweepSpec
from .config import get_settings
from .analytics import mean_wait, mean_trucks
from .simulator import run as simulate, derive_seed
from .embedded_chain import solve, chain_mean

logger = logging.getLogger(__name__)

__all__ = ["sweep_point", "run_sweep", "write_sweep_csv", "gnuplot_script"]


def sweep_point(spec: SweepSpec, index: int) -> SweepRow:
    rho = spec.grid()[index]
    lam = rho / spec.service.mean
    sc = Scenario(lam=lam, theta=spec.theta, service=spec.service)

    n_chain = None
    if spec.chain:
        _, dist = solve(sc, "auto")
        n_chain = chain_mean(dist)

    n_sim = n_half = w_sim = w_half = None
    if spec.sim is not None:
        cfg = spec.sim.model_copy(update={"seed": derive_seed(spec.sim.seed, index)})
        result = simulate(sc, cfg)
        n_sim, n_half, w_sim, w_half = result.n_mean, result.n_ci_half, result.w_mean, result.w_ci_half

    return SweepRow(
        rho=rho,
        lam=lam,
        n_mean_analytic=mean_trucks(sc),
        w_mean_analytic=mean_wait(sc),
        n_mean_chain=n_chain,
        n_mean_sim=n_sim,
        n_ci_half=n_half,
        w_mean_sim=w_sim,
        w_ci_half=w_half,
    )


def _sweep_payload(payload: tuple[str, int]) -> str:
    spec = SweepSpec.model_validate_json(payload[0])
    return sweep_point(spec, payload[1]).model_dump_json()


def run_sweep(spec: SweepSpec, progress: bool = False, max_workers: Optional[int] = None) -> list[SweepRow]:
    """
    One row per grid point, in ascending rho. Points run concurrently when more than
    one worker is allowed; each simulated point seeds itself from (sim.seed, index).
    """
    n = spec.steps
    workers = max_workers if max_workers is not None else get_settings().MAX_WORKERS
    logger.info(f"sweep rho in [{spec.rho_min:g}, {spec.rho_max:g}] ({n} points), theta={spec.theta:g}, {spec.service}")

    if workers == 1:
        return [sweep_point(spec, i) for i in tqdm(range(n), disable=not progress, desc="sweep")]

    payload = spec.model_dump_json()
    with ProcessPoolExecutor(max_workers=workers, mp_context=multiprocessing.get_context("spawn")) as executor:
        rows = executor.map(_sweep_payload, [(payload, i) for i in range(n)])
        return [SweepRow.model_validate_json(r) for r in tqdm(rows, total=n, disable=not progress, desc="sweep")]


def _cell(value: Optional[float]) -> str:
    # repr is locale-independent and round-trips exactly
    return "" if value is None else repr(float(value))


def write_sweep_csv(rows: Sequence[SweepRow], path: Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(SWEEP_COLUMNS)
        for row in rows:
            writer.writerow([_cell(v) for v in row.csv_values()])
    logger.info(f"wrote {len(rows)} sweep rows to {path}")


def gnuplot_script(csv_path: Path, simulated: bool, title: str = "") -> str:
    """gnuplot commands drawing the mean number of trucks and the mean time in the zone against rho."""
    stem = csv_path.with_suffix("")
    name = csv_path.name
    lines = [
        f"# generated by rtgq from {name}",
        'set datafile separator ","',
        "set key left top",
        "set grid",
        'set xlabel "traffic rate rho"',
        "set terminal pngcairo size 900,600",
        "",
        f'set output "{stem}_trucks.png"',
        f'set title "Mean number of trucks in the zone{": " + title if title else ""}"',
        'set ylabel "trucks"',
    ]
    trucks = f'plot "{name}" using 1:3 with lines lw 2 title "analytic"'
    if simulated:
        trucks += ', "" using 1:6:7 with yerrorbars pt 7 title "simulated (95% CI)"'
    lines.append(trucks)
    lines += [
        "",
        f'set output "{stem}_wait.png"',
        f'set title "Mean time in the zone{": " + title if title else ""}"',
        'set ylabel "time"',
    ]
    wait = f'plot "{name}" using 1:4 with lines lw 2 title "analytic"'
    if simulated:
        wait += ', "" using 1:8:9 with yerrorbars pt 7 title "simulated (95% CI)"'
    lines.append(wait)
    return "\n".join(lines) + "\n"
