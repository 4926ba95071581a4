"""Batched connected-component counting over edge subsets.

Every cell count of a spanning c-subgraph is the number of components (or
of components touching an active terminal) of a small node/link system in
which each link and terminal is switched on by the edge-subset bitmask.

Two backends compute the same arrays: a numba kernel parallel over masks,
and a vectorised numpy label-propagation fallback. ``STRANDPOLY_BACKEND``
selects one (``numba`` or ``numpy``); ``STRANDPOLY_THREADS`` caps workers.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

try:
    import numba
    from numba import njit, prange

    HAVE_NUMBA = True
    if "NUMBA_THREADING_LAYER" not in os.environ:
        # OpenMP first: it tolerates calls from several Python threads at once
        numba.config.THREADING_LAYER_PRIORITY = ["omp", "tbb", "workqueue"]
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

ALWAYS, PRESENT, ABSENT = 0, 1, 2


@dataclass(frozen=True)
class LinkSystem:
    """Nodes ``0..n-1``; link ``j`` joins ``a[j]``-``b[j]`` when its condition holds.

    The condition of link ``j`` is ``mode[j]`` applied to edge bit ``edge[j]``:
    ``ALWAYS``, ``PRESENT`` (edge in the subset) or ``ABSENT``. Terminals use
    the same encoding.
    """

    n: int
    a: np.ndarray
    b: np.ndarray
    edge: np.ndarray
    mode: np.ndarray
    term_node: np.ndarray
    term_edge: np.ndarray
    term_mode: np.ndarray

    @classmethod
    def build(cls, n: int, links: list[tuple[int, int, int, int]], terminals: list[tuple[int, int, int]]):
        la = np.array([l[0] for l in links], dtype=np.int64)
        lb = np.array([l[1] for l in links], dtype=np.int64)
        le = np.array([l[2] for l in links], dtype=np.int64)
        lm = np.array([l[3] for l in links], dtype=np.int64)
        tn = np.array([t[0] for t in terminals], dtype=np.int64)
        te = np.array([t[1] for t in terminals], dtype=np.int64)
        tm = np.array([t[2] for t in terminals], dtype=np.int64)
        return cls(n, la, lb, le, lm, tn, te, tm)


def backend() -> str:
    name = os.environ.get("STRANDPOLY_BACKEND", "numba" if HAVE_NUMBA else "numpy").lower()
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown STRANDPOLY_BACKEND {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        return "numpy"
    return name


def default_workers() -> int:
    cap = os.environ.get("STRANDPOLY_THREADS")
    n = os.cpu_count() or 1
    if cap:
        n = min(n, max(1, int(cap)))
    return n


if HAVE_NUMBA:

    @njit(cache=True, inline="always")
    def _active(mask, edge, mode):
        if mode == 0:
            return True
        bit = (mask >> edge) & 1
        if mode == 1:
            return bit == 1
        return bit == 0

    @njit(cache=True)
    def _find(parent, x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    @njit(cache=True)
    def _count_one(mask, n, la, lb, le, lm, tn, te, tm, parent, mark):
        for i in range(n):
            parent[i] = i
            mark[i] = False
        comps = n
        for j in range(la.shape[0]):
            if _active(mask, le[j], lm[j]):
                ra = _find(parent, la[j])
                rb = _find(parent, lb[j])
                if ra != rb:
                    parent[rb] = ra
                    comps -= 1
        opened = 0
        for j in range(tn.shape[0]):
            if _active(mask, te[j], tm[j]):
                r = _find(parent, tn[j])
                if not mark[r]:
                    mark[r] = True
                    opened += 1
        return comps, opened

    @njit(cache=True, parallel=True)
    def _count_numba_parallel(masks, n, la, lb, le, lm, tn, te, tm, total, opened):
        for i in prange(masks.shape[0]):
            parent = np.empty(n, dtype=np.int64)
            mark = np.empty(n, dtype=np.bool_)
            c, o = _count_one(masks[i], n, la, lb, le, lm, tn, te, tm, parent, mark)
            total[i] = c
            opened[i] = o

    @njit(cache=True)
    def _count_numba_serial(masks, n, la, lb, le, lm, tn, te, tm, total, opened):
        parent = np.empty(n, dtype=np.int64)
        mark = np.empty(n, dtype=np.bool_)
        for i in range(masks.shape[0]):
            c, o = _count_one(masks[i], n, la, lb, le, lm, tn, te, tm, parent, mark)
            total[i] = c
            opened[i] = o


def _count_numba(masks: np.ndarray, sys: LinkSystem, workers: int) -> tuple[np.ndarray, np.ndarray]:
    total = np.zeros(masks.shape[0], dtype=np.int64)
    opened = np.zeros(masks.shape[0], dtype=np.int64)
    args = (masks, sys.n, sys.a, sys.b, sys.edge, sys.mode, sys.term_node, sys.term_edge, sys.term_mode, total, opened)
    if workers <= 1:
        _count_numba_serial(*args)
    else:
        numba.set_num_threads(min(workers, numba.config.NUMBA_NUM_THREADS))
        _count_numba_parallel(*args)
    return total, opened


def _active_np(masks: np.ndarray, edge: np.ndarray, mode: np.ndarray) -> np.ndarray:
    bits = (masks[:, None] >> np.maximum(edge, 0)[None, :]) & 1
    out = np.where(mode[None, :] == PRESENT, bits == 1, bits == 0)
    return np.where(mode[None, :] == ALWAYS, True, out)


def _count_numpy_chunk(masks: np.ndarray, sys: LinkSystem) -> tuple[np.ndarray, np.ndarray]:
    m, n = masks.shape[0], sys.n
    if n == 0:
        return np.zeros(m, np.int64), np.zeros(m, np.int64)
    # padded neighbour table, one row per node
    deg = np.zeros(n, dtype=np.int64)
    np.add.at(deg, sys.a, 1)
    np.add.at(deg, sys.b, 1)
    width = max(int(deg.max()) if deg.size else 0, 1)
    nbr = np.tile(np.arange(n)[:, None], (1, width))
    nlink = np.full((n, width), -1, dtype=np.int64)
    fill = np.zeros(n, dtype=np.int64)
    for j, (u, v) in enumerate(zip(sys.a.tolist(), sys.b.tolist())):
        nbr[u, fill[u]], nlink[u, fill[u]] = v, j
        fill[u] += 1
        nbr[v, fill[v]], nlink[v, fill[v]] = u, j
        fill[v] += 1
    link_on = _active_np(masks, sys.edge, sys.mode) if sys.a.size else np.zeros((m, 0), bool)
    padded = np.concatenate([link_on, np.zeros((m, 1), bool)], axis=1)
    on = padded[:, nlink]  # (m, n, width); index -1 hits the padding column
    labels = np.broadcast_to(np.arange(n), (m, n)).copy()
    big = np.iinfo(np.int64).max
    while True:
        cand = np.where(on, labels[:, nbr], big).min(axis=2)
        new = np.minimum(labels, cand)
        new = np.take_along_axis(new, new, axis=1)
        if np.array_equal(new, labels):
            break
        labels = new
    total = (labels == np.arange(n)[None, :]).sum(axis=1)
    opened = np.zeros(m, dtype=np.int64)
    if sys.term_node.size:
        t_on = _active_np(masks, sys.term_edge, sys.term_mode)
        roots = labels[:, sys.term_node]
        rows, cols = np.nonzero(t_on)
        mark = np.zeros((m, n), dtype=bool)
        mark[rows, roots[rows, cols]] = True
        opened = mark.sum(axis=1)
    return total.astype(np.int64), opened


def _count_numpy(masks: np.ndarray, sys: LinkSystem, workers: int) -> tuple[np.ndarray, np.ndarray]:
    chunk = 512
    pieces = [masks[i : i + chunk] for i in range(0, masks.shape[0], chunk)] or [masks]
    if workers <= 1 or len(pieces) == 1:
        results = [_count_numpy_chunk(p, sys) for p in pieces]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda p: _count_numpy_chunk(p, sys), pieces))
    return np.concatenate([r[0] for r in results]), np.concatenate([r[1] for r in results])


def count_components(
    masks: np.ndarray,
    sys: LinkSystem,
    workers: int | None = None,
    which: str | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Per mask: (number of components, number of components with an active terminal)."""
    masks = np.ascontiguousarray(masks, dtype=np.int64)
    workers = default_workers() if workers is None else max(1, workers)
    which = which or backend()
    if which == "numba":
        return _count_numba(masks, sys, workers)
    return _count_numpy(masks, sys, workers)
