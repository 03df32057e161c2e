"""Desk-scale ground truth: exhaustive coloring enumeration, exact output
laws by branch enumeration, total-variation distances, pathological-fraction
measurement, bichromatic path counts and a Glauber baseline.

Everything here is deliberately independent of the fast paths it checks:
path existence is a direct DFS rather than a Kempe-chain query, and the
pipeline law is rebuilt step by step from first principles.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

import numpy as np
from scipy import stats

from .coloring import Coloring
from .errors import ContractViolationError, GuardExceededError
from .graph import Graph
from .peel import PeelSequence
from .pipeline import RunConfig, peel_sequence_for

Atom = Tuple[int, ...]
Law = Dict[Atom, Fraction]

ENUM_GUARD = 10**8
BRANCH_GUARD = 10**7


def enumerate_colorings(g: Graph, k: int) -> list[Atom]:
    """All proper k-colorings in lexicographic order, by backtracking."""
    if k**g.n > ENUM_GUARD:
        raise GuardExceededError(f"k^n = {k}^{g.n} exceeds enumeration guard")
    earlier = [[u for u in g.adj[v] if u < v] for v in range(g.n)]
    out: list[Atom] = []
    assign = [0] * g.n

    def rec(v: int) -> None:
        if v == g.n:
            out.append(tuple(assign))
            return
        for c in range(k):
            if all(assign[u] != c for u in earlier[v]):
                assign[v] = c
                rec(v + 1)

    rec(0)
    return out


def uniform_law(atoms: Sequence[Atom]) -> Law:
    p = Fraction(1, len(atoms))
    return {a: p for a in atoms}


def tv_distance(p: Dict[Atom, object], q: Dict[Atom, object]):
    """(1/2) sum |p - q| over the union of supports (absent atoms get 0)."""
    keys = set(p) | set(q)
    total = sum(abs(p.get(a, 0) - q.get(a, 0)) for a in keys)
    return total / 2


@dataclass(frozen=True)
class DistributionReport:
    support_size: int
    tv_distance: float
    chi_square: tuple[float, int, float]  # statistic, dof, p-value
    sample_count: int


def empirical_report(counts: Dict[Atom, int], exact: Law) -> DistributionReport:
    """Compare empirical counts against an exact law."""
    total = sum(counts.values())
    atoms = sorted(exact)
    observed = np.array([counts.get(a, 0) for a in atoms], dtype=float)
    expected = np.array([float(exact[a]) * total for a in atoms])
    stat, pvalue = stats.chisquare(observed, expected)
    emp = {a: Fraction(counts.get(a, 0), total) for a in atoms}
    extra = sum(c for a, c in counts.items() if a not in exact)
    tv = float(tv_distance(emp, exact)) + extra / total / 2
    return DistributionReport(len(atoms), tv, (float(stat), len(atoms) - 1, float(pvalue)), total)


def has_bichromatic_path(
    g: Graph, colors: Sequence[int], src: int, dst: int, c: int, q: int
) -> bool:
    """Is there a path from src to dst through vertices colored c or q only?
    Direct DFS, independent of the Kempe-chain implementation."""
    if colors[src] not in (c, q):
        return False
    seen = {src}
    stack = [src]
    while stack:
        w = stack.pop()
        if w == dst:
            return True
        for x in g.adj[w]:
            if x not in seen and colors[x] in (c, q):
                seen.add(x)
                stack.append(x)
    return False


@dataclass(frozen=True)
class AlphaReport:
    """Pathological-coloring fractions per ordered color pair and their max.

    pair_fractions[(c, q)] = (fraction of v,u-both-c colorings with a {c,q}
    path between v and u; same fraction among v=q,u=c colorings)."""

    pair_fractions: Dict[tuple[int, int], tuple[Fraction, Fraction]]
    alpha: Fraction


def measure_alpha(g: Graph, v: int, u: int, k: int) -> AlphaReport:
    """Exact pathological fractions over all ordered color pairs."""
    if g.has_edge(v, u):
        raise ContractViolationError("endpoints must be non-adjacent")
    if v == u:
        raise ContractViolationError("endpoints must differ")
    buckets: Dict[tuple[int, int], list[Atom]] = defaultdict(list)
    for atom in enumerate_colorings(g, k):
        buckets[(atom[v], atom[u])].append(atom)

    def frac(bucket_key, c, q) -> Fraction:
        atoms = buckets.get(bucket_key, [])
        if not atoms:
            return Fraction(0)
        bad = sum(1 for a in atoms if has_bichromatic_path(g, a, v, u, c, q))
        return Fraction(bad, len(atoms))

    fractions = {}
    alpha = Fraction(0)
    for c in range(k):
        for q in range(k):
            if q == c:
                continue
            f_cc = frac((c, c), c, q)
            f_qc = frac((q, c), c, q)
            fractions[(c, q)] = (f_cc, f_qc)
            alpha = max(alpha, f_cc, f_qc)
    return AlphaReport(fractions, alpha)


def _switch_atom(g: Graph, atom: Atom, v: int, q: int) -> Atom:
    """Kempe switch on a tuple coloring (local re-implementation so the
    oracle does not depend on the module it is used to check)."""
    c = atom[v]
    seen = {v}
    stack = [v]
    while stack:
        w = stack.pop()
        for x in g.adj[w]:
            if x not in seen and atom[x] in (c, q):
                seen.add(x)
                stack.append(x)
    out = list(atom)
    for w in seen:
        out[w] = q if atom[w] == c else c
    return tuple(out)


def update_exact_law(g: Graph, v: int, u: int, k: int, prior: Optional[Law] = None) -> Law:
    """Exact output law of one update step for the pending edge {v,u}, when
    the input coloring follows *prior* (default: uniform over all proper
    colorings of g)."""
    if prior is None:
        prior = uniform_law(enumerate_colorings(g, k))
    out: Law = defaultdict(lambda: Fraction(0))
    share = Fraction(1, k - 1)
    for atom, p in prior.items():
        if atom[v] != atom[u]:
            out[atom] += p
        else:
            for q in range(k):
                if q == atom[v]:
                    continue
                out[_switch_atom(g, atom, v, q)] += p * share
    return dict(out)


def exact_output_law(
    g: Graph,
    cfg: RunConfig,
    order: Optional[PeelSequence] = None,
    guard: int = BRANCH_GUARD,
) -> Law:
    """Exact pipeline output law for a fixed peel order (default: the order
    the pipeline itself would use under cfg.seed), by enumerating every
    core coloring and every in-step color draw."""
    seq = order if order is not None else peel_sequence_for(g, cfg)
    atoms = enumerate_colorings(seq.base, cfg.k)
    law: Law = uniform_law(atoms)
    for i in range(seq.r):
        if len(law) * (cfg.k - 1) > guard:
            raise GuardExceededError("branch count exceeds guard")
        gi = seq.graph_at(i)
        v, u = seq.additions[i]
        law = update_exact_law(gi, v, u, cfg.k, prior=law)
    assert sum(law.values()) == 1
    return law


def count_bichromatic_paths(
    g: Graph,
    sigma: Coloring | Sequence[int],
    c: int,
    q: int,
    max_len: Optional[int] = None,
) -> Dict[int, int]:
    """Counts of simple paths colored only with {c, q}, keyed by length.

    Each undirected path is counted once (canonical orientation: smaller
    endpoint first); multiply by 2 for the directed-path quantity.
    """
    if c == q:
        raise ContractViolationError("colors must differ")
    colors = sigma.values if isinstance(sigma, Coloring) else sigma
    limit = max_len if max_len is not None else g.n - 1
    members = [v for v in range(g.n) if colors[v] in (c, q)]
    sub = {v: [x for x in g.adj[v] if colors[x] in (c, q)] for v in members}
    counts: Dict[int, int] = defaultdict(int)

    def extend(path: list[int], on_path: set[int]) -> None:
        tail = path[-1]
        length = len(path) - 1
        if length >= 1 and tail > path[0]:
            counts[length] += 1
        if length >= limit:
            return
        for x in sub[tail]:
            if x not in on_path:
                path.append(x)
                on_path.add(x)
                extend(path, on_path)
                on_path.remove(x)
                path.pop()

    for s in members:
        extend([s], {s})
    return dict(counts)


def glauber_step(
    g: Graph, sigma: Coloring, k: int, rng, counters: Optional[dict] = None
) -> Coloring:
    """Single-site heat-bath step: uniform vertex, color resampled uniformly
    among colors absent from its neighborhood."""
    v = int(rng.integers(g.n))
    forbidden = {sigma[x] for x in g.adj[v]}
    avail = [c for c in range(k) if c not in forbidden]
    tau = sigma.copy()
    if not avail:
        if counters is not None:
            counters["frozen"] = counters.get("frozen", 0) + 1
        return tau
    tau.values[v] = avail[int(rng.integers(len(avail)))]
    return tau
