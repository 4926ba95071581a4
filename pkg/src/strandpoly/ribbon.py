"""Ribbon graphs with flags encoded as rotation systems.

Every vertex carries a cyclic sequence of slots. A slot hosts one edge end or
one flag. Each slot has a left and a right side; the boundary walk turns
from the right side of a slot to the left side of the next slot around the
vertex, and crosses an edge from the left side of one end to the right side
of the other (left to left when the edge is twisted). A flag's two sides end
at its external points, unless the flag is pinched, in which case they are
joined.
"""

from __future__ import annotations

import itertools
from collections import Counter
from collections.abc import Hashable, Iterable, Mapping
from dataclasses import dataclass, field

from ._graphutil import DisjointSet
from .poly import Polynomial
from .simple import EdgeClass, SimpleFlagGraph

L, R = 0, 1
Node = tuple[int, int]


@dataclass(frozen=True)
class FaceSet:
    closed: tuple[tuple, ...]
    open: tuple[tuple, ...]

    @property
    def n_closed(self) -> int:
        return len(self.closed)

    @property
    def n_open(self) -> int:
        return len(self.open)


@dataclass(frozen=True)
class RibbonCells:
    k: int
    V: int
    E: int
    F_int: int
    F_ext: int
    C_bd: int
    f: int

    @property
    def nullity(self) -> int:
        return self.E - self.V + self.k


@dataclass(frozen=True)
class RibbonFlagGraph:
    """Rotation system with twisted edges and (possibly pinched) flags.

    ``rotation`` maps each vertex to its cyclic slot sequence, ``edges`` maps
    an edge id to ``(slot_a, slot_b, twist)`` and ``flags`` maps a flag id to
    its slot.
    """

    rotation: tuple[tuple[Hashable, tuple[int, ...]], ...]
    edges: tuple[tuple[Hashable, int, int, bool], ...] = ()
    flags: tuple[tuple[Hashable, int], ...] = ()
    pinched: frozenset = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        seen: Counter = Counter()
        for _, slots in self.rotation:
            seen.update(slots)
        if any(c > 1 for c in seen.values()):
            raise ValueError("slot listed twice in the rotation")
        used: Counter = Counter()
        for _, a, b, _ in self.edges:
            used.update((a, b))
        for _, s in self.flags:
            used[s] += 1
        if used != seen or any(c != 1 for c in used.values()):
            raise ValueError("every slot must host exactly one edge end or flag")
        if not self.pinched <= {f for f, _ in self.flags}:
            raise ValueError("pinched set names unknown flags")

    @classmethod
    def from_rotation(
        cls,
        rotation: Mapping[Hashable, Iterable[Hashable]],
        twisted: Iterable[Hashable] = (),
    ) -> RibbonFlagGraph:
        """Build from labelled rotations: labels seen twice are edges, once are flags."""
        twisted = set(twisted)
        counts: Counter = Counter(lab for labels in rotation.values() for lab in labels)
        slot = itertools.count()
        rot, ends, flags = [], {}, []
        for v, labels in rotation.items():
            slots = []
            for lab in labels:
                s = next(slot)
                slots.append(s)
                if counts[lab] == 2:
                    ends.setdefault(lab, []).append(s)
                elif counts[lab] == 1:
                    flags.append((lab, s))
                else:
                    raise ValueError(f"label {lab!r} used {counts[lab]} times")
            rot.append((v, tuple(slots)))
        edges = tuple((e, a, b, e in twisted) for e, (a, b) in ends.items())
        return cls(tuple(rot), edges, tuple(flags))

    # lookups

    @property
    def vertices(self) -> tuple[Hashable, ...]:
        return tuple(v for v, _ in self.rotation)

    @property
    def edge_ids(self) -> tuple[Hashable, ...]:
        return tuple(e[0] for e in self.edges)

    def edge(self, e: Hashable) -> tuple[int, int, bool]:
        for eid, a, b, tw in self.edges:
            if eid == e:
                return a, b, tw
        raise KeyError(f"unknown edge {e!r}")

    def vertex_of_slot(self) -> dict[int, Hashable]:
        return {s: v for v, slots in self.rotation for s in slots}

    def is_closed(self) -> bool:
        return all(f in self.pinched for f, _ in self.flags)

    def _new_slots(self, n: int) -> list[int]:
        top = max((s for _, slots in self.rotation for s in slots), default=-1)
        return list(range(top + 1, top + 1 + n))

    def _new_flag_ids(self, n: int) -> list:
        used = [f for f, _ in self.flags if isinstance(f, int)]
        top = max(used, default=-1)
        return list(range(top + 1, top + 1 + n))

    # classification

    def to_simple(self) -> SimpleFlagGraph:
        owner = self.vertex_of_slot()
        return SimpleFlagGraph(
            self.vertices,
            tuple((e, owner[a], owner[b]) for e, a, b, _ in self.edges),
            tuple((f, owner[s]) for f, s in self.flags),
        )

    def classify_edge(self, e: Hashable) -> EdgeClass:
        return self.to_simple().classify_edge(e)

    def is_trivial_loop(self, e: Hashable) -> bool:
        """A self-loop whose two ends are consecutive in the cyclic order.

        One of the two arcs cut out by the loop is then empty, so no cycle,
        edge end or flag can interlace it in any spanning c-subgraph.
        """
        a, b, _ = self.edge(e)
        owner = self.vertex_of_slot()
        if owner[a] != owner[b]:
            return False
        slots = dict(self.rotation)[owner[a]]
        i, j = slots.index(a), slots.index(b)
        n = len(slots)
        return (i + 1) % n == j or (j + 1) % n == i

    # edge operations

    def delete_edge(self, e: Hashable) -> RibbonFlagGraph:
        a, b, _ = self.edge(e)
        rot = tuple((v, tuple(s for s in slots if s not in (a, b))) for v, slots in self.rotation)
        return RibbonFlagGraph(rot, tuple(x for x in self.edges if x[0] != e), self.flags, self.pinched)

    def cut_edge(self, e: Hashable) -> RibbonFlagGraph:
        a, b, _ = self.edge(e)
        fa, fb = self._new_flag_ids(2)
        return RibbonFlagGraph(
            self.rotation,
            tuple(x for x in self.edges if x[0] != e),
            self.flags + ((fa, a), (fb, b)),
            self.pinched,
        )

    def contract_edge(self, e: Hashable) -> RibbonFlagGraph:
        """Contract ``e``; self-loops must be trivial."""
        a, b, twist = self.edge(e)
        owner = self.vertex_of_slot()
        u, v = owner[a], owner[b]
        rot = dict(self.rotation)
        if u == v:
            if not self.is_trivial_loop(e):
                raise ValueError(f"contraction of the non-trivial self-loop {e!r} is not supported")
            g = self.delete_edge(e)
            if twist:
                return g
            return g.add_vertex(_fresh_vertex(self.vertices))
        su, sv = list(rot[u]), list(rot[v])
        iu, iv = su.index(a), sv.index(b)
        tail_u = su[iu + 1 :] + su[:iu]
        tail_v = sv[iv + 1 :] + sv[:iv]
        edges = [x for x in self.edges if x[0] != e]
        if twist:
            tail_v = tail_v[::-1]
            vs = set(tail_v)
            edges = [(i, p, q, tw ^ ((p in vs) != (q in vs))) for i, p, q, tw in edges]
        merged = tuple(tail_u + tail_v)
        new_rot = tuple((w, merged if w == u else slots) for w, slots in self.rotation if w != v)
        return RibbonFlagGraph(new_rot, tuple(edges), self.flags, self.pinched)

    def add_vertex(self, v: Hashable) -> RibbonFlagGraph:
        if v in self.vertices:
            raise ValueError("vertex id in use")
        return RibbonFlagGraph(self.rotation + ((v, ()),), self.edges, self.flags, self.pinched)

    def remove_flags(self) -> RibbonFlagGraph:
        drop = {s for _, s in self.flags}
        rot = tuple((v, tuple(s for s in slots if s not in drop)) for v, slots in self.rotation)
        return RibbonFlagGraph(rot, self.edges, (), frozenset())

    def spanning(self, subset: Iterable[Hashable], mode: str = "cut") -> RibbonFlagGraph:
        """Spanning subgraph on ``subset``; other edges are cut or deleted."""
        keep = set(subset)
        g = self
        for e in self.edge_ids:
            if e not in keep:
                g = g.cut_edge(e) if mode == "cut" else g.delete_edge(e)
        return g


def _fresh_vertex(existing: Iterable[Hashable]):
    ints = [v for v in existing if isinstance(v, int)]
    return max(ints, default=-1) + 1


def _links(g: RibbonFlagGraph) -> tuple[dict[Node, Node], dict[Node, Node], set[Node]]:
    corner: dict[Node, Node] = {}
    for _, slots in g.rotation:
        n = len(slots)
        for i, s in enumerate(slots):
            t = slots[(i + 1) % n]
            corner[(s, R)] = (t, L)
            corner[(t, L)] = (s, R)
    strand: dict[Node, Node] = {}
    for _, a, b, tw in g.edges:
        pairs = (((a, L), (b, L)), ((a, R), (b, R))) if tw else (((a, L), (b, R)), ((a, R), (b, L)))
        for p, q in pairs:
            strand[p] = q
            strand[q] = p
    terminals: set[Node] = set()
    for fid, s in g.flags:
        if fid in g.pinched:
            strand[(s, L)] = (s, R)
            strand[(s, R)] = (s, L)
        else:
            terminals.update(((s, L), (s, R)))
    return corner, strand, terminals


def faces(g: RibbonFlagGraph) -> FaceSet:
    """Partition all slot sides into closed and open boundary walks."""
    corner, strand, terminals = _links(g)
    seen: set[Node] = set()
    open_walks = []
    for start in sorted(terminals):
        if start in seen:
            continue
        walk = [start]
        seen.add(start)
        node = corner[start]
        while True:
            walk.append(node)
            seen.add(node)
            if node in terminals:
                break
            node = strand[node]
            walk.append(node)
            seen.add(node)
            node = corner[node]
        open_walks.append(tuple(walk))
    closed_walks = [(("vertex", v),) for v, slots in g.rotation if not slots]
    for start in sorted(corner):
        if start in seen:
            continue
        walk = []
        node = start
        while node not in seen:
            walk.append(node)
            seen.add(node)
            nxt = corner[node]
            walk.append(nxt)
            seen.add(nxt)
            node = strand[nxt]
        closed_walks.append(tuple(walk))
    return FaceSet(tuple(closed_walks), tuple(open_walks))


def pinch(g: RibbonFlagGraph) -> RibbonFlagGraph:
    """Identify the external points of every flag."""
    return RibbonFlagGraph(g.rotation, g.edges, g.flags, frozenset(f for f, _ in g.flags))


def boundary_graph(g: RibbonFlagGraph) -> SimpleFlagGraph:
    """One vertex per (unpinched) flag and one edge per open face."""
    slot_flag = {s: f for f, s in g.flags if f not in g.pinched}
    fs = faces(g)
    edges = tuple((i, slot_flag[w[0][0]], slot_flag[w[-1][0]]) for i, w in enumerate(fs.open))
    return SimpleFlagGraph(tuple(sorted(slot_flag.values(), key=repr)), edges)


def cell_counts(g: RibbonFlagGraph) -> RibbonCells:
    fs = faces(g)
    simple = g.to_simple()
    bd = boundary_graph(g)
    return RibbonCells(
        k=simple.components(),
        V=len(g.rotation),
        E=len(g.edges),
        F_int=fs.n_closed,
        F_ext=fs.n_open,
        C_bd=bd.components() if bd.vertices else 0,
        f=len(g.flags),
    )


def _subsets(ids: tuple) -> Iterable[tuple]:
    for mask in range(1 << len(ids)):
        yield tuple(e for j, e in enumerate(ids) if mask >> j & 1)


def br_classic(g: RibbonFlagGraph) -> Polynomial:
    """Bollobas-Riordan polynomial in (X, Y, z) of a closed ribbon graph."""
    if not g.is_closed():
        raise ValueError("br_classic needs a closed ribbon graph; pinch it first")
    k_full = g.to_simple().components()
    tally: Counter = Counter()
    for subset in _subsets(g.edge_ids):
        c = cell_counts(g.spanning(subset, mode="delete"))
        tally[(c.k - k_full, c.nullity, c.k - c.F_int + c.nullity)] += 1
    return Polynomial({(("X", a), ("Y", b), ("z", e)): m for (a, b, e), m in tally.items()})


def br_flags(g: RibbonFlagGraph) -> Polynomial:
    """Extended polynomial in (X, Y, z, s, t) over spanning c-subgraphs."""
    k_full = g.to_simple().components()
    tally: Counter = Counter()
    for subset in _subsets(g.edge_ids):
        c = cell_counts(g.spanning(subset, mode="cut"))
        key = (c.k - k_full, c.nullity, c.k - c.F_int + c.nullity, c.C_bd, c.f)
        tally[key] += 1
    names = ("X", "Y", "z", "s", "t")
    return Polynomial({tuple(zip(names, key)): m for key, m in tally.items()})


def br_flags_prime(g: RibbonFlagGraph) -> Polynomial:
    """``br_flags`` with ``s -> 1/z``."""
    return br_flags(g).substitute({"s": Polynomial.var("z", -1)})


def _relabel(g: RibbonFlagGraph, tag: str, slot_offset: int) -> RibbonFlagGraph:
    return RibbonFlagGraph(
        tuple(((tag, v), tuple(s + slot_offset for s in slots)) for v, slots in g.rotation),
        tuple(((tag, e), a + slot_offset, b + slot_offset, tw) for e, a, b, tw in g.edges),
        tuple(((tag, f), s + slot_offset) for f, s in g.flags),
        frozenset((tag, f) for f in g.pinched),
    )


def disjoint_union(g1: RibbonFlagGraph, g2: RibbonFlagGraph) -> RibbonFlagGraph:
    """Juxtaposition; ids are relabelled to ``("a", id)`` and ``("b", id)``."""
    top = max((s for _, slots in g1.rotation for s in slots), default=-1) + 1
    a, b = _relabel(g1, "a", 0), _relabel(g2, "b", top)
    return RibbonFlagGraph(a.rotation + b.rotation, a.edges + b.edges, a.flags + b.flags, a.pinched | b.pinched)


def dot_product(
    g1: RibbonFlagGraph,
    v1: Hashable,
    g2: RibbonFlagGraph,
    v2: Hashable,
    splice: tuple[int, int] = (0, 0),
) -> RibbonFlagGraph:
    """Merge ``v1`` and ``v2``; their cyclic orders are cut at ``splice`` and concatenated."""
    u = disjoint_union(g1, g2)
    rot = dict(u.rotation)
    s1, s2 = list(rot[("a", v1)]), list(rot[("b", v2)])
    i = splice[0] % len(s1) if s1 else 0
    j = splice[1] % len(s2) if s2 else 0
    merged = tuple(s1[i:] + s1[:i] + s2[j:] + s2[:j])
    new_rot = tuple(
        (v, merged if v == ("a", v1) else slots) for v, slots in u.rotation if v != ("b", v2)
    )
    return RibbonFlagGraph(new_rot, u.edges, u.flags, u.pinched)


__all__ = [
    "FaceSet",
    "RibbonCells",
    "RibbonFlagGraph",
    "boundary_graph",
    "br_classic",
    "br_flags",
    "br_flags_prime",
    "cell_counts",
    "disjoint_union",
    "dot_product",
    "faces",
    "pinch",
]
