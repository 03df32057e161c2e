"""End-to-end random coloring: structure gate, peel, exact core sample,
then replay the peeled edges with Kempe-chain updates."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import _kernels
from .coloring import Coloring
from .errors import ParameterError
from .graph import CycleThreshold, Graph, check_x_membership
from .cyclesample import sample_simple
from .peel import PeelSequence, peel_from_removable

# Randomness layout per run (sub-seeds derived from cfg.seed by stream index):
# stream 0 -> peel permutation, stream 1 -> core sampling, stream 2 -> the
# per-step alternate-color draws inside the replay kernel.  The membership
# gate consumes no randomness.
_STREAM_PEEL = 0
_STREAM_CORE = 1
_STREAM_UPDATES = 2


@dataclass(frozen=True)
class RunConfig:
    k: int
    d: float
    cap: CycleThreshold
    seed: int
    collect_stats: bool = False

    def __post_init__(self):
        if self.k < 3:
            raise ParameterError("k must be at least 3")


@dataclass
class RunReport:
    coloring: Optional[Coloring]
    aborted: bool
    reason: Optional[str]
    steps: int
    bad_encounters: int
    switch_failures: int
    wall_ms: float
    q_trace: Optional[np.ndarray] = field(default=None, repr=False)

    def to_json(self) -> str:
        return json.dumps(
            {
                "aborted": self.aborted,
                "reason": self.reason,
                "coloring": None
                if self.coloring is None
                else self.coloring.values.tolist(),
                "r": self.steps,
                "bad_encounters": self.bad_encounters,
                "switch_failures": self.switch_failures,
                "wall_ms": self.wall_ms,
            }
        )


def _replay_arrays(g: Graph, base: Graph):
    """CSR of the final graph with only the base edges active."""
    degrees = np.fromiter((len(a) for a in g.adj), dtype=np.int64, count=g.n)
    indptr = np.zeros(g.n + 1, dtype=np.int64)
    np.cumsum(degrees, out=indptr[1:])
    nbr = np.zeros(2 * g.m, dtype=np.int64)
    deg = np.zeros(g.n, dtype=np.int64)
    for v in range(g.n):
        a = base.adj[v]
        if a:
            nbr[indptr[v] : indptr[v] + len(a)] = a
            deg[v] = len(a)
    return indptr, nbr, deg


def run(g: Graph, cfg: RunConfig) -> RunReport:
    """Sample an approximately-uniform proper k-coloring of g.

    Aborts (no coloring) when the structure gate rejects the input.
    Deterministic given (g, cfg.seed) for a fixed kernel backend; both
    backends produce identical output.
    """
    t0 = time.perf_counter()
    memb = check_x_membership(g, cfg.d, cfg.cap)
    if not memb.ok:
        ms = (time.perf_counter() - t0) * 1e3
        return RunReport(None, True, ";".join(memb.reasons), 0, 0, 0, ms)
    seq = peel_from_removable(
        g, list(memb.removable), _kernels.derive_seed(cfg.seed, _STREAM_PEEL)
    )
    core_rng = np.random.default_rng(
        np.random.PCG64(_kernels.derive_seed(cfg.seed, _STREAM_CORE))
    )
    y0 = sample_simple(memb.decomposition, cfg.k, core_rng)
    colors = y0.values.copy()
    r = seq.r
    q_trace = np.empty(r, dtype=np.int64)
    if r:
        indptr, nbr, deg = _replay_arrays(g, seq.base)
        add_u = np.fromiter((e[0] for e in seq.additions), dtype=np.int64, count=r)
        add_v = np.fromiter((e[1] for e in seq.additions), dtype=np.int64, count=r)
        bad, fails = _kernels.replay_updates(
            indptr,
            nbr,
            deg,
            colors,
            add_u,
            add_v,
            cfg.k,
            np.uint64(_kernels.derive_seed(cfg.seed, _STREAM_UPDATES)),
            q_trace,
        )
    else:
        bad = fails = 0
    ms = (time.perf_counter() - t0) * 1e3
    return RunReport(
        Coloring(colors, cfg.k),
        False,
        None,
        r,
        int(bad),
        int(fails),
        ms,
        q_trace if cfg.collect_stats else None,
    )


def trial_seed(master: int, index: int) -> int:
    """Documented splitting rule: master xor a golden-ratio mix of the index."""
    return _kernels.derive_seed(master, index)


def sample_many(g: Graph, cfg: RunConfig, trials: int) -> list[RunReport]:
    """Independent runs with per-trial seeds split off the master seed."""
    if trials < 1:
        raise ParameterError("trials must be >= 1")
    reports = []
    for i in range(trials):
        cfg_i = RunConfig(
            cfg.k, cfg.d, cfg.cap, trial_seed(cfg.seed, i), cfg.collect_stats
        )
        reports.append(run(g, cfg_i))
    return reports


def peel_sequence_for(g: Graph, cfg: RunConfig) -> PeelSequence:
    """The exact peel sequence a run with this config will use; lets exact
    enumeration oracles align with the pipeline's randomness layout."""
    memb = check_x_membership(g, cfg.d, cfg.cap)
    return peel_from_removable(
        g, list(memb.removable), _kernels.derive_seed(cfg.seed, _STREAM_PEEL)
    )
