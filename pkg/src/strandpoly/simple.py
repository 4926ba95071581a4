"""Graphs with flags and their Tutte polynomials.

The flag-Tutte polynomial of a graph ``G`` with additional flags ``f0`` is

    T(G) = sum_A X^(r(G) - r(A)) Y^(n(A)) t^(|f0| + 2 (|E| - |A|))

where ``A`` runs over edge subsets and every edge outside ``A`` is cut into
two flags. ``X = x - 1`` and ``Y = y - 1``.
"""

from __future__ import annotations

import enum
from collections import Counter
from collections.abc import Hashable, Iterable
from dataclasses import dataclass

import networkx as nx

from ._graphutil import DisjointSet, IsoMemo
from .poly import Polynomial

X = Polynomial.var("X")
Y = Polynomial.var("Y")
T = Polynomial.var("t")


class EdgeClass(enum.Enum):
    BRIDGE = "bridge"
    SELF_LOOP = "self_loop"
    REGULAR = "regular"


@dataclass(frozen=True)
class SimpleFlagGraph:
    """Multigraph with flags. Edges are ``(id, u, v)``; flags ``(id, vertex)``."""

    vertices: tuple[Hashable, ...]
    edges: tuple[tuple[Hashable, Hashable, Hashable], ...] = ()
    flags: tuple[tuple[Hashable, Hashable], ...] = ()

    def __post_init__(self) -> None:
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise ValueError("duplicate vertex id")
        ids = [e[0] for e in self.edges]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate edge id")
        for eid, u, v in self.edges:
            if u not in vs or v not in vs:
                raise ValueError(f"edge {eid!r} references a missing vertex")
        fids = [f[0] for f in self.flags]
        if len(set(fids)) != len(fids):
            raise ValueError("duplicate flag id")
        for fid, v in self.flags:
            if v not in vs:
                raise ValueError(f"flag {fid!r} references a missing vertex")

    @classmethod
    def build(
        cls,
        vertices: Iterable[Hashable],
        edges: Iterable[tuple[Hashable, Hashable]] = (),
        flags: Iterable[Hashable] = (),
    ) -> SimpleFlagGraph:
        """Convenience constructor numbering edges and flags from 0."""
        return cls(
            tuple(vertices),
            tuple((i, u, v) for i, (u, v) in enumerate(edges)),
            tuple((i, v) for i, v in enumerate(flags)),
        )

    # basic queries

    @property
    def edge_ids(self) -> tuple[Hashable, ...]:
        return tuple(e[0] for e in self.edges)

    def ends(self, e: Hashable) -> tuple[Hashable, Hashable]:
        for eid, u, v in self.edges:
            if eid == e:
                return u, v
        raise KeyError(f"unknown edge {e!r}")

    def components(self, edge_subset: Iterable[Hashable] | None = None) -> int:
        ds = DisjointSet(self.vertices)
        keep = None if edge_subset is None else set(edge_subset)
        for eid, u, v in self.edges:
            if keep is None or eid in keep:
                ds.union(u, v)
        return ds.count()

    def rank_nullity_components(self) -> tuple[int, int, int]:
        k = self.components()
        return len(self.vertices) - k, len(self.edges) + k - len(self.vertices), k

    def classify_edge(self, e: Hashable) -> EdgeClass:
        u, v = self.ends(e)
        if u == v:
            return EdgeClass.SELF_LOOP
        if self.delete_edge(e).components() > self.components():
            return EdgeClass.BRIDGE
        return EdgeClass.REGULAR

    # edge operations

    def _next_flag_ids(self, n: int) -> list[int]:
        used = [f for f, _ in self.flags if isinstance(f, int)]
        start = max(used, default=-1) + 1
        return list(range(start, start + n))

    def delete_edge(self, e: Hashable) -> SimpleFlagGraph:
        self.ends(e)
        return SimpleFlagGraph(self.vertices, tuple(x for x in self.edges if x[0] != e), self.flags)

    def cut_edge(self, e: Hashable) -> SimpleFlagGraph:
        u, v = self.ends(e)
        a, b = self._next_flag_ids(2)
        return SimpleFlagGraph(
            self.vertices,
            tuple(x for x in self.edges if x[0] != e),
            self.flags + ((a, u), (b, v)),
        )

    def contract_edge(self, e: Hashable) -> SimpleFlagGraph:
        u, v = self.ends(e)
        if u == v:
            return self.delete_edge(e)

        def m(w):
            return u if w == v else w

        return SimpleFlagGraph(
            tuple(w for w in self.vertices if w != v),
            tuple((i, m(a), m(b)) for i, a, b in self.edges if i != e),
            tuple((f, m(w)) for f, w in self.flags),
        )

    # invariants

    def tutte_flags_statesum(self) -> Polynomial:
        return tutte_flags_statesum(self)

    def tutte_flags_recursive(self) -> Polynomial:
        return tutte_flags_recursive(self)

    def tutte_classic(self) -> Polynomial:
        return tutte_classic(self)

    def to_networkx(self) -> nx.MultiGraph:
        g = nx.MultiGraph()
        g.add_nodes_from(self.vertices)
        for eid, u, v in self.edges:
            g.add_edge(u, v, key=eid)
        return g


def _relabel(g: SimpleFlagGraph, prefix: str) -> SimpleFlagGraph:
    return SimpleFlagGraph(
        tuple((prefix, v) for v in g.vertices),
        tuple(((prefix, e), (prefix, u), (prefix, v)) for e, u, v in g.edges),
        tuple(((prefix, f), (prefix, v)) for f, v in g.flags),
    )


def disjoint_union(g1: SimpleFlagGraph, g2: SimpleFlagGraph, relabel: bool = False) -> SimpleFlagGraph:
    """Juxtapose two graphs. Without ``relabel`` their id spaces must be disjoint."""
    if relabel:
        g1, g2 = _relabel(g1, "a"), _relabel(g2, "b")
    if set(g1.vertices) & set(g2.vertices) or set(g1.edge_ids) & set(g2.edge_ids):
        raise ValueError("graphs share ids")
    if {f for f, _ in g1.flags} & {f for f, _ in g2.flags}:
        raise ValueError("graphs share flag ids")
    return SimpleFlagGraph(g1.vertices + g2.vertices, g1.edges + g2.edges, g1.flags + g2.flags)


def dot_product(g1: SimpleFlagGraph, v1: Hashable, g2: SimpleFlagGraph, v2: Hashable) -> SimpleFlagGraph:
    """Merge ``v1`` of ``g1`` and ``v2`` of ``g2`` into a single vertex (named ``v1``)."""
    if v1 not in g1.vertices or v2 not in g2.vertices:
        raise ValueError("unknown vertex")
    union = disjoint_union(g1, g2)
    return SimpleFlagGraph(
        tuple(v for v in union.vertices if v != v2),
        tuple((e, v1 if a == v2 else a, v1 if b == v2 else b) for e, a, b in union.edges),
        tuple((f, v1 if w == v2 else w) for f, w in union.flags),
    )


def _subset_components(g: SimpleFlagGraph) -> list[tuple[int, int]]:
    """(|A|, k(A)) for every edge subset, indexed by bitmask."""
    index = {v: i for i, v in enumerate(g.vertices)}
    ends = [(index[u], index[v]) for _, u, v in g.edges]
    n = len(g.vertices)
    out = []
    for mask in range(1 << len(ends)):
        parent = list(range(n))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        k = n
        size = 0
        for j, (a, b) in enumerate(ends):
            if mask >> j & 1:
                size += 1
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[rb] = ra
                    k -= 1
        out.append((size, k))
    return out


def tutte_flags_statesum(g: SimpleFlagGraph) -> Polynomial:
    """Flag-Tutte polynomial by enumeration of all spanning c-subgraphs."""
    nv, ne, q = len(g.vertices), len(g.edges), len(g.flags)
    k_full = g.components()
    tally: Counter = Counter()
    for size, k in _subset_components(g):
        tally[(k - k_full, size - nv + k, q + 2 * (ne - size))] += 1
    return Polynomial({(("X", a), ("Y", b), ("t", c)): m for (a, b, c), m in tally.items()})


def _isolated_free(g: SimpleFlagGraph) -> nx.MultiGraph:
    h = g.to_networkx()
    h.remove_nodes_from([v for v in list(h.nodes) if h.degree(v) == 0])
    return nx.convert_node_labels_to_integers(h)


def _pick_regular(g: SimpleFlagGraph) -> Hashable | None:
    for eid in sorted(g.edge_ids, key=repr):
        if g.classify_edge(eid) is EdgeClass.REGULAR:
            return eid
    return None


def tutte_flags_recursive(g: SimpleFlagGraph, memo: IsoMemo | None = None) -> Polynomial:
    """Flag-Tutte polynomial by cut/contraction on regular edges."""
    memo = IsoMemo() if memo is None else memo
    return _tf_rec(g, memo)


def _tf_rec(g: SimpleFlagGraph, memo: IsoMemo) -> Polynomial:
    key = _isolated_free(g)
    hit = memo.get(key, len(g.flags))
    if hit is not None:
        return hit
    e = _pick_regular(g)
    if e is None:
        m = sum(1 for eid in g.edge_ids if g.classify_edge(eid) is EdgeClass.BRIDGE)
        n = len(g.edges) - m
        value = (1 + X * T**2) ** m * (Y + T**2) ** n * T ** len(g.flags)
    else:
        value = _tf_rec(g.cut_edge(e), memo) + _tf_rec(g.contract_edge(e), memo)
    memo.put(key, value, len(g.flags))
    return value


_x = Polynomial.var("x")
_y = Polynomial.var("y")


def tutte_classic(g: SimpleFlagGraph, memo: IsoMemo | None = None) -> Polynomial:
    """Classic Tutte polynomial in the standard basis (flags ignored)."""
    memo = IsoMemo() if memo is None else memo
    h = nx.MultiGraph()
    h.add_nodes_from(g.vertices)
    for _, u, v in g.edges:
        h.add_edge(u, v)
    return _tutte_rec(h, memo)


def _tutte_rec(h: nx.MultiGraph, memo: IsoMemo) -> Polynomial:
    h = h.copy()
    h.remove_nodes_from([v for v in list(h.nodes) if h.degree(v) == 0])
    if h.number_of_edges() == 0:
        return Polynomial.const(1)
    h = nx.convert_node_labels_to_integers(h)
    hit = memo.get(h)
    if hit is not None:
        return hit
    loops = list(nx.selfloop_edges(h, keys=True))
    if loops:
        u, v, key = loops[0]
        d = h.copy()
        d.remove_edge(u, v, key)
        value = _y * _tutte_rec(d, memo)
    else:
        u, v, key = next(iter(h.edges(keys=True)))
        d = h.copy()
        d.remove_edge(u, v, key)
        c = nx.contracted_nodes(d, u, v, self_loops=True, copy=True)
        if nx.has_path(d, u, v):
            value = _tutte_rec(d, memo) + _tutte_rec(c, memo)
        else:
            value = _x * _tutte_rec(c, memo)
    memo.put(h, value)
    return value


def edgeless(n_vertices: int, n_flags: int = 0) -> SimpleFlagGraph:
    return SimpleFlagGraph.build(range(n_vertices), (), [0] * n_flags if n_vertices else ())


def flag_tutte_identity_rhs(g: SimpleFlagGraph) -> Polynomial:
    """``t^|f0| t^(2 n(G)) T_G(x, y)`` with ``x -> X t^2 + 1``, ``y -> (Y + t^2)/t^2``."""
    _, n, _ = g.rank_nullity_components()
    classic = tutte_classic(g)
    tinv2 = T ** -2
    sub = classic.substitute({"x": X * T**2 + 1, "y": (Y + T**2) * tinv2})
    return sub * T ** (len(g.flags) + 2 * n)


__all__ = [
    "EdgeClass",
    "SimpleFlagGraph",
    "disjoint_union",
    "dot_product",
    "edgeless",
    "flag_tutte_identity_rhs",
    "tutte_classic",
    "tutte_flags_recursive",
    "tutte_flags_statesum",
]
