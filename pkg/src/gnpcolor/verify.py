"""Exhaustive small-instance verification suites.

These drive the library's correctness claims on every graph up to a size
bound: switch properness, the switching bijection, the single-step accuracy
bound and the end-to-end accuracy bound.  The CLI's `verify` subcommand and
the acceptance tests both run through here.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Optional

from .coloring import Coloring, is_proper
from .graph import CycleThreshold, Graph
from .kempe import switching
from .oracle import (
    enumerate_colorings,
    exact_output_law,
    has_bichromatic_path,
    measure_alpha,
    tv_distance,
    uniform_law,
    update_exact_law,
)
from .peel import peel_from_removable
from .pipeline import RunConfig


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, message: str) -> None:
        self.failures.append(message)

    def summary(self) -> str:
        status = "pass" if self.ok else "FAIL"
        lines = [f"{self.name}: {status} ({self.checked} instances)"]
        lines.extend(f"  counterexample: {f}" for f in self.failures[:10])
        return "\n".join(lines)


def all_graphs(n: int) -> Iterator[Graph]:
    """Every labelled graph on exactly n vertices."""
    pairs = list(itertools.combinations(range(n), 2))
    for bits in range(1 << len(pairs)):
        yield Graph(n, [pairs[i] for i in range(len(pairs)) if bits >> i & 1])


def _is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        w = stack.pop()
        for x in g.adj[w]:
            if x not in seen:
                seen.add(x)
                stack.append(x)
    return len(seen) == g.n


def connected_graphs(n: int) -> Iterator[Graph]:
    return (g for g in all_graphs(n) if _is_connected(g))


def graph_class_reps(n: int) -> list[Graph]:
    """One representative per isomorphism class of graphs on n vertices."""
    pairs = list(itertools.combinations(range(n), 2))
    index = {p: i for i, p in enumerate(pairs)}
    perms = list(itertools.permutations(range(n)))
    seen: set[int] = set()
    reps = []
    for g in all_graphs(n):
        canon = None
        for perm in perms:
            bits = 0
            for u, v in g.edges:
                a, b = perm[u], perm[v]
                bits |= 1 << index[(a, b) if a < b else (b, a)]
            canon = bits if canon is None else min(canon, bits)
        if canon not in seen:
            seen.add(canon)
            reps.append(g)
    return reps


def verify_switching(max_n: int, ks: Iterable[int] = (3, 4)) -> SuiteResult:
    """Properness preservation plus round-trip identity, exhaustively over
    connected graphs, proper colorings, anchors and alternate colors."""
    res = SuiteResult("switching")
    for n in range(1, max_n + 1):
        for g in connected_graphs(n):
            for k in ks:
                for atom in enumerate_colorings(g, k):
                    sigma = Coloring(atom, k)
                    for v in range(n):
                        for q in range(k):
                            if q == atom[v]:
                                continue
                            tau = switching(g, v, sigma, q)
                            res.checked += 1
                            if not is_proper(g, tau):
                                res.fail(f"improper: {g.edges} {atom} v={v} q={q}")
                                return res
                            back = switching(g, v, tau, atom[v])
                            if back != sigma:
                                res.fail(f"round trip: {g.edges} {atom} v={v} q={q}")
                                return res
    return res


def _pathological_split(g: Graph, atoms, v: int, u: int, c: int, q: int):
    safe = [a for a in atoms if not has_bichromatic_path(g, a, v, u, c, q)]
    return len(safe), len(atoms) - len(safe)


def verify_bijection(max_n: int, ks: Iterable[int] = (3, 4)) -> SuiteResult:
    """|S_q(c,c)| = |S_c(q,c)| for every non-adjacent pair and color pair."""
    res = SuiteResult("bijection")
    for n in range(2, max_n + 1):
        for g in connected_graphs(n):
            for k in ks:
                atoms = enumerate_colorings(g, k)
                for v in range(n):
                    for u in range(n):
                        if u == v or g.has_edge(v, u):
                            continue
                        by_pair = defaultdict(list)
                        for a in atoms:
                            by_pair[(a[v], a[u])].append(a)
                        for c in range(k):
                            for q in range(k):
                                if q == c:
                                    continue
                                s_cc, _ = _pathological_split(
                                    g, by_pair.get((c, c), []), v, u, c, q
                                )
                                s_qc, _ = _pathological_split(
                                    g, by_pair.get((q, c), []), v, u, c, q
                                )
                                res.checked += 1
                                if s_cc != s_qc:
                                    res.fail(
                                        f"{g.edges} v={v} u={u} c={c} q={q}: "
                                        f"{s_cc} != {s_qc}"
                                    )
                                    return res
    return res


def _good_law(atoms, v: int, u: int):
    good = [a for a in atoms if a[v] != a[u]]
    # None when the endpoints are forced monochromatic (e.g. K4 minus an
    # edge at k=3): the reference distribution does not exist there.
    return uniform_law(good) if good else None


def verify_update(max_n: int, ks: Iterable[int] = (3, 4)) -> SuiteResult:
    """Single-step accuracy: TV(update law, uniform-over-good) <= alpha.

    Runs over isomorphism class representatives; both sides of the
    inequality are invariant under relabelling, so the classes cover every
    labelled instance.
    """
    res = SuiteResult("update")
    for n in range(2, max_n + 1):
        for g in graph_class_reps(n):
            for k in ks:
                atoms = enumerate_colorings(g, k)
                if not atoms:
                    continue
                for v in range(n):
                    for u in range(n):
                        if u == v or g.has_edge(v, u):
                            continue
                        nu = _good_law(atoms, v, u)
                        if nu is None:
                            continue
                        law = update_exact_law(g, v, u, k)
                        alpha = measure_alpha(g, v, u, k).alpha
                        tv = tv_distance(nu, law)
                        res.checked += 1
                        if tv > alpha:
                            res.fail(
                                f"{g.edges} v={v} u={u} k={k}: tv={tv} > {alpha}"
                            )
                            return res
    return res


def verify_dp(max_m: int, max_k: int) -> SuiteResult:
    """Pinned path counts against exhaustive enumeration."""
    from .cyclesample import path_count

    res = SuiteResult("dp")
    for k in range(1, max_k + 1):
        for m in range(1, max_m + 1):
            eq = neq = 0
            # endpoints pinned at (0,0) for eq and (0,1) for neq
            for interior in itertools.product(range(k), repeat=max(m - 1, 0)):
                seq_eq = (0,) + interior + (0,)
                if all(a != b for a, b in zip(seq_eq, seq_eq[1:])):
                    eq += 1
                if k >= 2:
                    seq_ne = (0,) + interior + (1,)
                    if all(a != b for a, b in zip(seq_ne, seq_ne[1:])):
                        neq += 1
            res.checked += 1
            if path_count(k, m, True) != eq:
                res.fail(f"eq k={k} m={m}: {path_count(k, m, True)} != {eq}")
                return res
            if k >= 2 and path_count(k, m, False) != neq:
                res.fail(f"neq k={k} m={m}: {path_count(k, m, False)} != {neq}")
                return res
    return res


def default_pipeline_instances() -> list[tuple[Graph, CycleThreshold]]:
    """Small graphs with at least one peelable edge, mixing empty and
    cycle-containing cores."""
    path4 = Graph(4, [(0, 1), (1, 2), (2, 3)])
    path5 = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    star5 = Graph(5, [(0, 1), (0, 2), (0, 3), (0, 4)])
    c4_tail = Graph(6, [(0, 1), (1, 2), (2, 3), (0, 3), (3, 4), (4, 5)])
    c3_tail = Graph(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)])
    c5_chord = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (0, 2)])
    two_parts = Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5)])
    tree6 = Graph(6, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5)])
    return [
        (path4, CycleThreshold(0)),
        (path5, CycleThreshold(0)),
        (star5, CycleThreshold(0)),
        (c4_tail, CycleThreshold(5)),
        (c3_tail, CycleThreshold(4)),
        (c5_chord, CycleThreshold(4)),
        (two_parts, CycleThreshold(4)),
        (tree6, CycleThreshold(0)),
    ]


def verify_pipeline(
    instances: Optional[list[tuple[Graph, CycleThreshold]]] = None,
    ks: Iterable[int] = (3, 4),
    orders_per_instance: int = 4,
    seed: int = 1729,
) -> SuiteResult:
    """End-to-end accuracy: TV(uniform, exact output law) <= sum of the
    per-step pathological fractions, for fixed peel orders."""
    from .graph import removable_edges

    res = SuiteResult("pipeline")
    if instances is None:
        instances = default_pipeline_instances()
    for g, cap in instances:
        removable = removable_edges(g, cap)
        for k in ks:
            target = uniform_law(enumerate_colorings(g, k))
            for j in range(orders_per_instance):
                seq = peel_from_removable(g, removable, seed + j)
                cfg = RunConfig(k=k, d=2.0, cap=cap, seed=seed + j)
                law = exact_output_law(g, cfg, order=seq)
                bound = Fraction(0)
                for i in range(seq.r):
                    gi = seq.graph_at(i)
                    v, u = seq.additions[i]
                    bound += measure_alpha(gi, v, u, k).alpha
                tv = tv_distance(target, law)
                res.checked += 1
                if tv > bound:
                    res.fail(
                        f"{g.edges} cap={cap.value} k={k} order_seed={seed + j}: "
                        f"tv={tv} > {bound}"
                    )
                    return res
    return res
