"""Exact uniform k-coloring of graphs made of isolated vertices and
disjoint cycles, via sequential conditional marginals.

After the first cycle vertex is fixed, the remaining structure is a path, so
each conditional marginal reduces to counting proper path colorings with
both endpoint colors pinned.  All counts are exact integers; marginals are
exact rationals.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

from .coloring import Coloring
from .errors import ContractViolationError, InfeasibleError
from .graph import SimpleDecomposition


class PathCountTable:
    """Counts of proper k-colorings of a path with both endpoints pinned.

    eq[m] / neq[m]: interior assignments of a path with m edges whose pinned
    endpoint colors are equal / distinct.  Transfer recurrence:
        eq[m]  = (k-1) * neq[m-1]
        neq[m] = eq[m-1] + (k-2) * neq[m-1]
    """

    def __init__(self, k: int):
        if k < 1:
            raise ValueError("k must be positive")
        self.k = k
        self._eq = [1]
        self._neq = [0]

    def _extend(self, m: int) -> None:
        k = self.k
        while len(self._eq) <= m:
            self._eq.append((k - 1) * self._neq[-1])
            self._neq.append(self._eq[-2] + (k - 2) * self._neq[-1])

    def count(self, m: int, equal: bool) -> int:
        if m < 0:
            raise ValueError("path length must be non-negative")
        self._extend(m)
        return self._eq[m] if equal else self._neq[m]


_tables: dict[int, PathCountTable] = {}


def _table(k: int) -> PathCountTable:
    if k not in _tables:
        _tables[k] = PathCountTable(k)
    return _tables[k]


def path_count(k: int, m: int, equal: bool) -> int:
    """Proper k-colorings of a path with m edges, endpoint colors pinned."""
    return _table(k).count(m, equal)


def cycle_coloring_count(length: int, k: int) -> int:
    """Proper k-colorings of a cycle: (k-1)^L + (k-1)(-1)^L."""
    return (k - 1) ** length + (k - 1) * (-1) ** length


def cycle_vertex_marginal(
    cycle_length: int, k: int, fixed_prefix: Sequence[int]
) -> list[Fraction]:
    """Exact conditional law of the next cycle vertex given the prefix.

    The prefix colors w_0..w_{i-1} along the cycle w_0..w_{L-1}; the weight
    of color c != color(w_{i-1}) is the pinned path count over the remaining
    arc w_i .. w_{L-1}, w_0.
    """
    L = cycle_length
    i = len(fixed_prefix)
    if not 1 <= i <= L - 1:
        raise ContractViolationError(f"prefix length {i} out of range for L={L}")
    for a, b in zip(fixed_prefix, fixed_prefix[1:]):
        if a == b:
            raise ContractViolationError("prefix is not proper along the path")
    if any(not 0 <= c < k for c in fixed_prefix):
        raise ContractViolationError("prefix color out of range")
    first, prev = fixed_prefix[0], fixed_prefix[-1]
    m = L - i  # edges on the arc from w_i back to w_0
    weights = [
        0 if c == prev else path_count(k, m, c == first) for c in range(k)
    ]
    total = sum(weights)
    if total == 0:
        raise InfeasibleError(f"no proper extension of prefix on C_{L} with k={k}")
    return [Fraction(w, total) for w in weights]


def _pick_weighted(weights: Sequence[int], total: int, rng) -> int:
    # one 64-bit draw, scaled into [0, total) without rejection
    r = int(rng.integers(0, 2**64, dtype=np.uint64))
    x = (r * total) >> 64
    acc = 0
    for c, w in enumerate(weights):
        acc += w
        if x < acc:
            return c
    raise AssertionError("unreachable: weights exhausted")


def sample_cycle(length: int, k: int, rng) -> list[int]:
    """Exactly uniform proper k-coloring of a cycle of the given length."""
    if k < 3 and length % 2 == 1:
        raise InfeasibleError(f"odd cycle needs k >= 3, got k={k}")
    if k < 2:
        raise InfeasibleError("cycles need k >= 2")
    colors = [int(rng.integers(k))]
    for i in range(1, length):
        first, prev = colors[0], colors[-1]
        m = length - i
        weights = [
            0 if c == prev else path_count(k, m, c == first) for c in range(k)
        ]
        colors.append(_pick_weighted(weights, sum(weights), rng))
    return colors


def sample_simple(decomp: SimpleDecomposition, k: int, rng) -> Coloring:
    """Exactly uniform proper k-coloring of an isolated-vertices + disjoint
    cycles graph.

    Randomness layout (fixed for reproducibility): one batched uniform draw
    for all isolated vertices in index order, then each cycle in listed
    order, one draw per vertex.
    """
    n = len(decomp.isolated_vertices) + sum(len(c) for c in decomp.cycles)
    values = np.zeros(n, dtype=np.int64)
    iso = list(decomp.isolated_vertices)
    if iso:
        values[iso] = rng.integers(k, size=len(iso))
    for cycle in decomp.cycles:
        for v, c in zip(cycle, sample_cycle(len(cycle), k, rng)):
            values[v] = c
    return Coloring(values, k)
