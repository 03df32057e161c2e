"""Edge peeling: split a graph into a short-cycle core plus an ordered list
of re-additions of the peelable edges."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .graph import CycleThreshold, Edge, Graph, removable_edges


@dataclass(frozen=True)
class PeelSequence:
    """base plus one edge per step: step i runs on base + additions[:i] and
    then inserts additions[i]."""

    base: Graph
    additions: tuple[Edge, ...]
    seed: int

    @property
    def r(self) -> int:
        return len(self.additions)

    def graph_at(self, i: int) -> Graph:
        """The graph on which step i's update runs (base + additions[:i])."""
        if not 0 <= i <= self.r:
            raise IndexError(f"step {i} out of range")
        return self.base.with_edges(self.additions[:i])

    def full_graph(self) -> Graph:
        return self.base.with_edges(self.additions)

    def to_json(self) -> str:
        return json.dumps(
            {
                "seed": self.seed,
                "base_edges": [list(e) for e in self.base.edges],
                "n": self.base.n,
                "additions": [list(e) for e in self.additions],
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "PeelSequence":
        obj = json.loads(text)
        base = Graph(obj["n"], [tuple(e) for e in obj["base_edges"]])
        return cls(base, tuple(tuple(e) for e in obj["additions"]), obj["seed"])


def peel_from_removable(
    g: Graph, removable: Sequence[Edge], seed: int
) -> PeelSequence:
    """Order a known removable-edge set uniformly at random (Fisher-Yates
    under the seeded generator; a uniform permutation read forwards is the
    reverse of a uniform removal order)."""
    rng = np.random.default_rng(np.random.PCG64(seed))
    order = rng.permutation(len(removable))
    additions = tuple(removable[i] for i in order)
    base = g.without_edges(removable)
    return PeelSequence(base, additions, seed)


def build_peel_sequence(g: Graph, cap: CycleThreshold, seed: int) -> PeelSequence:
    """Peel every edge not on a short cycle, in uniformly random order."""
    return peel_from_removable(g, removable_edges(g, cap), seed)


def endpoint_distance_check(seq: PeelSequence, i: int) -> float:
    """Graph distance between the endpoints of additions[i] in the graph the
    step runs on; inf when disconnected.  Diagnostic only."""
    if not 0 <= i < seq.r:
        raise IndexError(f"step {i} out of range")
    g = seq.graph_at(i)
    src, dst = seq.additions[i]
    dist = {src: 0}
    queue = [src]
    head = 0
    while head < len(queue):
        w = queue[head]
        head += 1
        if w == dst:
            return float(dist[w])
        for x in g.adj[w]:
            if x not in dist:
                dist[x] = dist[w] + 1
                queue.append(x)
    return math.inf
