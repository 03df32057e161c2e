"""Undirected simple graphs, seeded sparse random generation and the
structural tests used by the peeling pipeline (short cycles, removable
edges, cycle-decomposition and input-membership checks)."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import _kernels
from .errors import GraphFormatError, InvalidEdgeError, ParameterError

Edge = tuple[int, int]


def _normalize_edge(u: int, v: int) -> Edge:
    if u == v:
        raise GraphFormatError(f"self-loop at vertex {u}")
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable simple graph on vertices 0..n-1 with sorted adjacency lists."""

    __slots__ = ("n", "edges", "adj", "_csr")

    def __init__(self, n: int, edges: Sequence[Edge] = ()):
        if n < 0:
            raise GraphFormatError("vertex count must be non-negative")
        norm = sorted({_normalize_edge(u, v) for u, v in edges})
        if len(norm) != len({frozenset(e) for e in edges}):
            raise GraphFormatError("duplicate edges")
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in norm:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"vertex out of range in edge ({u},{v})")
            adj[u].append(v)
            adj[v].append(u)
        self.n = n
        self.edges: tuple[Edge, ...] = tuple(norm)
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in adj)
        self._csr = None

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        if u == v:
            return False
        a, b = (u, v) if u < v else (v, u)
        return v in self.adj[u]

    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """Adjacency in CSR form (indptr, indices), cached."""
        if self._csr is None:
            indptr = np.zeros(self.n + 1, dtype=np.int64)
            for v in range(self.n):
                indptr[v + 1] = indptr[v] + len(self.adj[v])
            indices = np.fromiter(
                (x for a in self.adj for x in a), dtype=np.int64, count=2 * self.m
            )
            self._csr = (indptr, indices)
        return self._csr

    def without_edges(self, drop: Sequence[Edge]) -> "Graph":
        dropped = {_normalize_edge(*e) for e in drop}
        return Graph(self.n, [e for e in self.edges if e not in dropped])

    def with_edges(self, extra: Sequence[Edge]) -> "Graph":
        return Graph(self.n, list(self.edges) + list(extra))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph) and self.n == other.n and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class GnpParams:
    """Parameters for sparse random graph generation: edge prob d/n."""

    n: int
    d: float
    seed: int

    def __post_init__(self):
        if self.n < 1:
            raise ParameterError("n must be positive")
        if not (0 < self.d < self.n):
            raise ParameterError(f"need 0 < d < n, got d={self.d}, n={self.n}")


@dataclass(frozen=True)
class CycleThreshold:
    """Short-cycle length bound: a cycle is short iff its length < value.

    value 0 means no cycle counts as short (every edge removable).
    """

    value: int

    def __post_init__(self):
        if self.value != 0 and self.value < 3:
            raise ParameterError("threshold must be 0 or >= 3")


def short_cycle_threshold(n: int, d: float) -> CycleThreshold:
    """ceil(log_d(n) / 9); collapsed to 0 when < 3 since no simple cycle is
    shorter than 3 anyway."""
    if n < 2 or d <= 1:
        return CycleThreshold(0)
    t = math.ceil(math.log(n) / math.log(d) / 9)
    return CycleThreshold(t if t >= 3 else 0)


@dataclass(frozen=True)
class SimpleDecomposition:
    """A graph split into isolated vertices plus disjoint chordless cycles."""

    isolated_vertices: tuple[int, ...]
    cycles: tuple[tuple[int, ...], ...]

    def max_cycle_length(self) -> int:
        return max((len(c) for c in self.cycles), default=0)


def generate_gnp(params: GnpParams) -> Graph:
    """Sample G(n, d/n): each vertex pair independently an edge w.p. d/n.

    The pair count follows Binomial(C(n,2), p) and the edge set is a uniform
    subset of that size, which is exactly the product measure.  Pairs are
    drawn by cumulative geometric gaps over the lexicographic pair index.
    """
    n, p = params.n, params.d / params.n
    rng = np.random.default_rng(np.random.PCG64(params.seed))
    total = n * (n - 1) // 2
    if total == 0:
        return Graph(n)
    positions: list[np.ndarray] = []
    last = -1
    expect = int(total * p) + 1
    while last < total - 1:
        batch = max(1024, int(1.1 * (total - 1 - last) * p) + 16)
        gaps = rng.geometric(p, size=batch)
        pos = np.cumsum(gaps) + last
        positions.append(pos)
        last = int(pos[-1])
    pos = np.concatenate(positions)
    pos = pos[pos < total]
    # decode lexicographic pair index t -> (u, v): row u holds n-1-u pairs
    row_starts = np.zeros(n, dtype=np.int64)
    counts = np.arange(n - 1, 0, -1, dtype=np.int64)
    row_starts[1:] = np.cumsum(counts)[: n - 1]
    u = np.searchsorted(row_starts, pos, side="right") - 1
    v = u + 1 + (pos - row_starts[u])
    return Graph(n, list(zip(u.tolist(), v.tolist())))


def shortest_cycle_through_edge(
    g: Graph, e: Edge, cap: CycleThreshold
) -> Optional[int]:
    """Length of the shortest simple cycle containing e, if < cap.value."""
    e = _normalize_edge(*e)
    if e not in set(g.edges):
        raise InvalidEdgeError(f"edge {e} not in graph")
    lengths = _short_cycle_lengths_for(g, [e], cap)
    return None if lengths[0] < 0 else int(lengths[0])


def _short_cycle_lengths_for(
    g: Graph, edges: Sequence[Edge], cap: CycleThreshold
) -> np.ndarray:
    indptr, indices = g.csr()
    eu = np.fromiter((e[0] for e in edges), dtype=np.int64, count=len(edges))
    ev = np.fromiter((e[1] for e in edges), dtype=np.int64, count=len(edges))
    return _kernels.short_cycle_lengths(indptr, indices, eu, ev, cap.value)


def removable_edges(g: Graph, cap: CycleThreshold) -> list[Edge]:
    """Edges not lying on any short cycle, in lexicographic order."""
    if g.m == 0:
        return []
    if cap.value == 0:
        return list(g.edges)
    lengths = _short_cycle_lengths_for(g, g.edges, cap)
    return [e for e, l in zip(g.edges, lengths) if l < 0]


def classify_simple(g: Graph) -> Optional[SimpleDecomposition]:
    """Decompose g into isolated vertices + disjoint chordless cycles, or None.

    Succeeds iff every vertex has degree 0 or 2 and every non-trivial
    component closes into a single cycle (chords are impossible at degree 2).
    """
    isolated = []
    seen = [False] * g.n
    cycles = []
    for v in range(g.n):
        deg = len(g.adj[v])
        if deg == 0:
            isolated.append(v)
            seen[v] = True
        elif deg != 2:
            return None
    for v in range(g.n):
        if seen[v]:
            continue
        cycle = [v]
        seen[v] = True
        prev, cur = v, g.adj[v][0]
        while cur != v:
            if seen[cur]:
                return None  # walk re-entered a finished vertex: not a cycle
            seen[cur] = True
            cycle.append(cur)
            a, b = g.adj[cur]
            prev, cur = cur, (b if a == prev else a)
        if len(cycle) < 3:
            return None
        cycles.append(tuple(cycle))
    return SimpleDecomposition(tuple(isolated), tuple(cycles))


@dataclass(frozen=True)
class MembershipReport:
    """Outcome of the input-structure gate, with reusable intermediates."""

    ok: bool
    reasons: tuple[str, ...]
    removable: tuple[Edge, ...]
    base: Graph
    decomposition: Optional[SimpleDecomposition] = field(compare=False, default=None)


def check_x_membership(g: Graph, d: float, cap: CycleThreshold) -> MembershipReport:
    """Gate for the pipeline: peeling must leave only isolated vertices and
    short chordless cycles, and the edge count must be within
    (1 + n^(-1/3)) * d*n/2."""
    rem = removable_edges(g, cap)
    base = g.without_edges(rem)
    decomp = classify_simple(base)
    reasons = []
    if decomp is None:
        reasons.append("G0_not_simple")
    else:
        too_long = decomp.max_cycle_length() >= cap.value if cap.value else bool(
            decomp.cycles
        )
        if too_long:
            reasons.append("G0_cycle_too_long")
    if g.n > 0 and g.m > (1 + g.n ** (-1 / 3)) * d * g.n / 2:
        reasons.append("edge_bound_exceeded")
    return MembershipReport(not reasons, tuple(reasons), tuple(rem), base, decomp)


def save_graph(g: Graph, path) -> None:
    """Write the text edge-list format: 'n m' header then 'u v' lines, u < v."""
    with open(path, "w") as fh:
        fh.write(f"{g.n} {g.m}\n")
        for u, v in g.edges:
            fh.write(f"{u} {v}\n")


def load_graph(path) -> Graph:
    with open(path) as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise GraphFormatError("expected header 'n m'")
        n, m = int(header[0]), int(header[1])
        edges = []
        for line in fh:
            line = line.strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise GraphFormatError(f"bad edge line: {line!r}")
            u, v = int(parts[0]), int(parts[1])
            if not u < v:
                raise GraphFormatError(f"edge must satisfy u < v: {line!r}")
            edges.append((u, v))
        if len(edges) != m:
            raise GraphFormatError(f"header claims {m} edges, found {len(edges)}")
        seen = set()
        for e in edges:
            if e in seen:
                raise GraphFormatError(f"duplicate edge {e}")
            seen.add(e)
        return Graph(n, edges)
