"""Runtime scaling benchmark for the sampling pipeline."""

from __future__ import annotations

import statistics
import time
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import _backend, _kernels
from .graph import GnpParams, generate_gnp, short_cycle_threshold
from .pipeline import RunConfig, run, trial_seed


@dataclass(frozen=True)
class BenchRow:
    n: int
    backend: str
    median_ms: float
    runs: int


def _time_runs(g, cfg_base: RunConfig, seeds: Sequence[int]) -> float:
    times = []
    for s in seeds:
        cfg = RunConfig(cfg_base.k, cfg_base.d, cfg_base.cap, s)
        t0 = time.perf_counter()
        run(g, cfg)
        times.append((time.perf_counter() - t0) * 1e3)
    return statistics.median(times)


def run_benchmark(
    n_list: Sequence[int],
    d: float,
    k: int,
    seeds_per_n: int = 5,
    master_seed: int = 1729,
    backends: Optional[Sequence[str]] = None,
) -> list[BenchRow]:
    """Median pipeline wall time per n, optionally for several kernel
    backends.  Each n gets a fresh random graph; timing excludes graph
    generation."""
    if backends is None:
        backends = [_backend.active_backend()]
    rows = []
    for n in n_list:
        g = generate_gnp(GnpParams(n, d, trial_seed(master_seed, n)))
        cap = short_cycle_threshold(n, d)
        cfg = RunConfig(k, d, cap, 0)
        seeds = [trial_seed(master_seed, 10_000 + 100 * n + j) for j in range(seeds_per_n)]
        for backend in backends:
            with _kernels.force_backend(backend):
                run(g, cfg)  # warm-up (jit compilation / caches)
                rows.append(BenchRow(n, backend, _time_runs(g, cfg, seeds), seeds_per_n))
    return rows


def fit_exponent(rows: Sequence[BenchRow], backend: Optional[str] = None) -> Optional[float]:
    """Least-squares slope of log(median_ms) against log(n)."""
    pts = [(r.n, r.median_ms) for r in rows if backend is None or r.backend == backend]
    if len({n for n, _ in pts}) < 2:
        return None
    xs = np.log([n for n, _ in pts])
    ys = np.log([t for _, t in pts])
    return float(np.polyfit(xs, ys, 1)[0])


def to_csv(rows: Sequence[BenchRow]) -> str:
    backends = sorted({r.backend for r in rows})
    lines = ["n,backend,median_ms,fitted_exponent"]
    for b in backends:
        expo = fit_exponent(rows, b)
        expo_str = "" if expo is None else f"{expo:.4f}"
        for r in rows:
            if r.backend == b:
                lines.append(f"{r.n},{r.backend},{r.median_ms:.3f},{expo_str}")
    return "\n".join(lines) + "\n"
