"""Color assignments and properness checks."""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .graph import Graph


class Coloring:
    """Total assignment of one of k colors to every vertex.

    Properness is not an invariant; intermediate pipeline states may violate
    it and are checked explicitly via :func:`is_proper`.
    """

    __slots__ = ("values", "k")

    def __init__(self, values: Iterable[int] | np.ndarray, k: int):
        arr = np.asarray(values, dtype=np.int64)
        if arr.ndim != 1:
            raise ValueError("coloring must be one-dimensional")
        if k < 1:
            raise ValueError("k must be positive")
        if arr.size and (arr.min() < 0 or arr.max() >= k):
            raise ValueError("color out of range")
        self.values = arr
        self.k = k

    def __getitem__(self, v: int) -> int:
        return int(self.values[v])

    def __len__(self) -> int:
        return self.values.size

    def copy(self) -> "Coloring":
        return Coloring(self.values.copy(), self.k)

    def as_tuple(self) -> tuple[int, ...]:
        return tuple(self.values.tolist())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Coloring)
            and self.k == other.k
            and np.array_equal(self.values, other.values)
        )

    def __repr__(self) -> str:
        return f"Coloring({self.values.tolist()}, k={self.k})"


def is_proper(g: Graph, coloring: Coloring | Sequence[int]) -> bool:
    values = coloring.values if isinstance(coloring, Coloring) else coloring
    return all(values[u] != values[v] for u, v in g.edges)
