"""Small graph helpers shared by the simple and ribbon modules."""

from __future__ import annotations

from collections.abc import Hashable, Iterable

import networkx as nx


class DisjointSet:
    def __init__(self, items: Iterable[Hashable] = ()):
        self.parent: dict[Hashable, Hashable] = {}
        for it in items:
            self.parent[it] = it

    def add(self, item: Hashable) -> None:
        self.parent.setdefault(item, item)

    def find(self, item: Hashable) -> Hashable:
        parent = self.parent
        root = item
        while parent[root] != root:
            root = parent[root]
        while parent[item] != root:
            parent[item], item = root, parent[item]
        return root

    def union(self, a: Hashable, b: Hashable) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True

    def count(self) -> int:
        return sum(1 for k in self.parent if self.find(k) == k)

    def groups(self) -> list[list[Hashable]]:
        out: dict[Hashable, list[Hashable]] = {}
        for k in self.parent:
            out.setdefault(self.find(k), []).append(k)
        return list(out.values())


def count_components(nodes: Iterable[Hashable], links: Iterable[tuple[Hashable, Hashable]]) -> int:
    ds = DisjointSet(nodes)
    for a, b in links:
        ds.union(a, b)
    return ds.count()


class IsoMemo:
    """Memo table keyed by multigraph isomorphism class plus an extra tag.

    Buckets are addressed by a Weisfeiler-Lehman hash; collisions inside a
    bucket are settled by an exact isomorphism test.
    """

    def __init__(self) -> None:
        self._table: dict[tuple, list[tuple[nx.MultiGraph, object]]] = {}
        self.hits = 0

    @staticmethod
    def _bucket(g: nx.MultiGraph, tag: Hashable) -> tuple:
        simple = nx.Graph()
        simple.add_nodes_from(g.nodes)
        for u, v in g.edges():
            m = g.number_of_edges(u, v)
            simple.add_edge(u, v, m=str(m))
        degs = tuple(sorted(d for _, d in g.degree()))
        return (tag, degs, nx.weisfeiler_lehman_graph_hash(simple, edge_attr="m"))

    def get(self, g: nx.MultiGraph, tag: Hashable = None):
        for other, value in self._table.get(self._bucket(g, tag), ()):
            if nx.is_isomorphic(g, other):
                self.hits += 1
                return value
        return None

    def put(self, g: nx.MultiGraph, value: object, tag: Hashable = None) -> None:
        self._table.setdefault(self._bucket(g, tag), []).append((g, value))
