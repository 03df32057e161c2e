"""Kempe chains (disagreement graphs), the color-switching move, and the
single-edge update step."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .coloring import Coloring, is_proper
from .errors import ContractViolationError
from .graph import Graph


@dataclass(frozen=True)
class KempeChain:
    """Maximal connected two-colored vertex set around an anchor vertex."""

    vertices: frozenset[int]
    anchor: int
    colors: tuple[int, int]  # (anchor's color, the alternate color)
    edge_visits: int = 0  # adjacency entries scanned; bounded by 2|E|

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class UpdateInfo:
    """Diagnostics of one update step; collected without extra randomness."""

    was_bad: bool
    q: Optional[int]
    chain_size: int
    still_bad: bool


def _check_inputs(g: Graph, v: int, sigma: Coloring, q: int) -> None:
    if not 0 <= v < g.n:
        raise ContractViolationError(f"vertex {v} out of range")
    if q == sigma[v]:
        raise ContractViolationError("alternate color equals the anchor's color")
    if not 0 <= q < sigma.k:
        raise ContractViolationError(f"color {q} out of range")
    if not is_proper(g, sigma):
        raise ContractViolationError("coloring is not proper")


def kempe_chain(g: Graph, v: int, sigma: Coloring, q: int) -> KempeChain:
    """Vertices reachable from v through colors {sigma(v), q} (BFS)."""
    _check_inputs(g, v, sigma, q)
    c = sigma[v]
    seen = {v}
    queue = [v]
    head = 0
    visits = 0
    while head < len(queue):
        w = queue[head]
        head += 1
        visits += len(g.adj[w])
        for x in g.adj[w]:
            if x not in seen and sigma[x] in (c, q):
                seen.add(x)
                queue.append(x)
    return KempeChain(frozenset(seen), v, (c, q), visits)


def switching(g: Graph, v: int, sigma: Coloring, q: int) -> Coloring:
    """Exchange colors sigma(v) and q on the Kempe chain of v; proper in,
    proper out."""
    chain = kempe_chain(g, v, sigma, q)
    c, q = chain.colors
    tau = sigma.copy()
    for w in chain.vertices:
        tau.values[w] = q if sigma[w] == c else c
    return tau


def update(
    g: Graph,
    v: int,
    u: int,
    sigma: Coloring,
    k: int,
    rng,
    with_info: bool = False,
):
    """One recoloring step for the edge {v,u} about to be added.

    If sigma already separates v and u it is returned unchanged with no
    randomness consumed.  Otherwise a uniform alternate color is drawn and
    the switch applied; the result may still clash (never retried).
    """
    if v == u:
        raise ContractViolationError("endpoints must differ")
    if g.has_edge(v, u):
        raise ContractViolationError("edge {v,u} must not be present yet")
    if sigma[v] != sigma[u]:
        if with_info:
            return sigma, UpdateInfo(False, None, 0, False)
        return sigma
    c = sigma[v]
    j = int(rng.integers(k - 1))
    q = j if j < c else j + 1
    chain = kempe_chain(g, v, sigma, q)
    tau = sigma.copy()
    for w in chain.vertices:
        tau.values[w] = q if sigma[w] == c else c
    if with_info:
        return tau, UpdateInfo(True, q, len(chain), tau[v] == tau[u])
    return tau
