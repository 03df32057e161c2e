"""Hot inner loops, compiled with numba or run as plain Python.

Both variants are built from the same source functions so their outputs are
bit-identical; see :mod:`gnpcolor._backend` for the selection rules.  The
kernels use a splitmix64 stream for the in-loop color draws so that the two
backends consume randomness identically.
"""

from __future__ import annotations

from contextlib import contextmanager

import numpy as np

from . import _backend

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def mix64(x: int) -> int:
    """Finalizer of splitmix64 on a plain Python integer."""
    x &= _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def derive_seed(master: int, stream: int) -> int:
    """Per-stream seed: golden-ratio mix of the stream index xor'd in."""
    return mix64((master + _GOLDEN * (stream + 1)) & _MASK64) ^ (master & _MASK64)


def _short_cycle_lengths(indptr, indices, eu, ev, cap):
    """Length of the shortest simple cycle through each edge, if < cap.

    BFS from eu[i] towards ev[i] skipping the edge itself, truncated so that
    only cycles of length < cap are reported; -1 where none exists.
    """
    n = indptr.shape[0] - 1
    m = eu.shape[0]
    out = np.full(m, -1, dtype=np.int64)
    max_depth = cap - 2  # a u-v path of length L closes a cycle of length L+1
    if max_depth < 1:
        return out
    stamp = np.zeros(n, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    for i in range(m):
        u = eu[i]
        v = ev[i]
        token = i + 1
        stamp[u] = token
        queue[0] = u
        head = 0
        tail = 1
        depth = 0
        found = -1
        while head < tail and depth < max_depth and found < 0:
            next_tail = tail
            for idx in range(head, tail):
                w = queue[idx]
                for jj in range(indptr[w], indptr[w + 1]):
                    x = indices[jj]
                    if depth == 0 and w == u and x == v:
                        continue  # the removed edge itself
                    if x == v:
                        found = depth + 1
                        break
                    if stamp[x] != token:
                        stamp[x] = token
                        queue[next_tail] = x
                        next_tail += 1
                if found >= 0:
                    break
            head = tail
            tail = next_tail
            depth += 1
        if found >= 0:
            out[i] = found + 1
    return out


def _replay_updates(indptr, nbr, deg, colors, add_u, add_v, k, seed, q_trace):
    """Replay the edge additions, recoloring via Kempe-chain switches.

    ``nbr`` holds the adjacency of the *final* graph with per-vertex capacity
    ``indptr[v+1]-indptr[v]``; only the first ``deg[v]`` slots are active.
    Each step first updates the coloring on the current graph, then activates
    the added edge.  ``q_trace[i]`` records the drawn color on a bad step and
    -1 on a good one.  Returns (bad_encounters, switch_failures).
    """
    n = deg.shape[0]
    r = add_u.shape[0]
    stamp = np.zeros(n, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    token = 0
    bad = 0
    fails = 0
    state = np.uint64(seed)
    for i in range(r):
        a = add_u[i]
        b = add_v[i]
        if colors[a] == colors[b]:
            bad += 1
            c = colors[a]
            state = state + np.uint64(0x9E3779B97F4A7C15)
            z = state
            z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
            z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
            z = z ^ (z >> np.uint64(31))
            j = np.int64(z % np.uint64(k - 1))
            q = j if j < c else j + 1
            q_trace[i] = q
            token += 1
            stamp[a] = token
            queue[0] = a
            head = 0
            tail = 1
            while head < tail:
                w = queue[head]
                head += 1
                for jj in range(indptr[w], indptr[w] + deg[w]):
                    x = nbr[jj]
                    if stamp[x] != token and (colors[x] == c or colors[x] == q):
                        stamp[x] = token
                        queue[tail] = x
                        tail += 1
            for idx in range(tail):
                w = queue[idx]
                colors[w] = q if colors[w] == c else c
            if colors[a] == colors[b]:
                fails += 1
        else:
            q_trace[i] = -1
        nbr[indptr[a] + deg[a]] = b
        deg[a] += 1
        nbr[indptr[b] + deg[b]] = a
        deg[b] += 1
    return bad, fails


short_cycle_lengths_py = _backend.plain_kernel(_short_cycle_lengths)
replay_updates_py = _backend.plain_kernel(_replay_updates)

if _backend.numba_available():
    short_cycle_lengths_nb = _backend.njit_kernel(_short_cycle_lengths)
    replay_updates_nb = _backend.njit_kernel(_replay_updates)
else:  # pragma: no cover - exercised only without numba
    short_cycle_lengths_nb = None
    replay_updates_nb = None

if _backend.use_numba():
    short_cycle_lengths = short_cycle_lengths_nb
    replay_updates = replay_updates_nb
else:
    short_cycle_lengths = short_cycle_lengths_py
    replay_updates = replay_updates_py


@contextmanager
def force_backend(name: str):
    """Temporarily bind the kernels to one backend (for benchmarks/tests)."""
    global short_cycle_lengths, replay_updates
    if name == "numba":
        if short_cycle_lengths_nb is None:
            raise RuntimeError("numba backend unavailable")
        pair = (short_cycle_lengths_nb, replay_updates_nb)
    elif name == "numpy":
        pair = (short_cycle_lengths_py, replay_updates_py)
    else:
        raise ValueError(f"unknown backend {name!r}")
    saved = (short_cycle_lengths, replay_updates)
    short_cycle_lengths, replay_updates = pair
    try:
        yield
    finally:
        short_cycle_lengths, replay_updates = saved
