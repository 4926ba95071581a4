"""Rank-D stranded graphs, colored tensor graphs and their contractions.

Encoding
--------
Every strand endpoint is a *point* with a stable integer id. A point lies in
exactly one pre-flag and carries a color pair ``(a, b)`` with ``a < b``; the
pre-flag color is one of the two. Inside a vertex, points are matched by
*bows*. An edge joins two pre-flags and matches their points by *strands*;
a pre-flag that is not an edge end is a flag and its points are external.

Vertices are bow-connected families of pre-flags. Trivial discs (vertices
reduced to one closed strand) are kept as a multiset of color pairs.

For ``D = 3`` the cell counts of the w-colored theory are available, as
are soft and hard edge contraction.
"""

from __future__ import annotations

import enum
import itertools
from collections import Counter
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from ._graphutil import DisjointSet
from .ribbon import RibbonFlagGraph, faces as ribbon_faces
from .simple import SimpleFlagGraph

Pair = tuple[int, int]


class InvariantViolation(RuntimeError):
    """A proven identity or bound failed; this signals a bug."""


class Mode(str, enum.Enum):
    STRANDED = "stranded"
    TENSOR = "tensor"
    COLORED_TENSOR = "colored_tensor"
    W_COLORED = "w_colored"


def _pair(a: int, b: int) -> Pair:
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class PreFlag:
    id: int
    color: int
    points: tuple[int, ...]
    sign: int = 0


@dataclass(frozen=True)
class StrandedEdge:
    id: int
    ends: tuple[int, int]
    strands: tuple[tuple[int, int], ...]
    color: int


@dataclass(frozen=True)
class Face:
    points: tuple[int, ...]
    pair: Pair
    closed: bool
    terminals: tuple[int, ...] = ()


@dataclass(frozen=True)
class Bubble:
    colors: tuple[int, ...]
    points: tuple[int, ...]
    open: bool


@dataclass(frozen=True)
class BoundaryGraph:
    """Rank-2 ve-colored boundary: one vertex per flag, one edge per open face."""

    vertices: tuple[tuple[int, int], ...]  # (flag pre-flag id, color)
    edges: tuple[tuple[int, int, Pair, tuple[int, int]], ...]  # (flag a, flag b, pair, terminal points)
    C_bd: int
    E_bd: int
    F_bd: int
    f: int

    def labeled(self) -> frozenset:
        return frozenset((frozenset(e[3]), e[2]) for e in self.edges)


@dataclass(frozen=True)
class CellCounts:
    k: int
    V: int
    E: int
    F_int: int
    F_ext: int
    B_int: int
    B_ext: int
    C_bd: int
    E_bd: int
    F_bd: int
    f: int

    FIELDS = ("k", "V", "E", "F_int", "F_ext", "B_int", "B_ext", "C_bd", "E_bd", "F_bd", "f")

    @property
    def zeta(self) -> int:
        return 3 * (self.E - self.V) + 2 * (self.B_int + self.B_ext - self.F_int)

    @property
    def zeta_prime(self) -> int:
        return self.zeta - 2 * self.C_bd

    @property
    def zeta_second(self) -> int:
        return self.zeta - 3 * self.C_bd

    @property
    def chi_boundary(self) -> int:
        return self.f - self.E_bd + self.F_bd

    def as_tuple(self) -> tuple[int, ...]:
        return tuple(getattr(self, n) for n in self.FIELDS)


@dataclass(frozen=True)
class EdgeKind:
    """Classification of a stranded edge; ``p`` and ``sectors`` only for self-loops."""

    tag: str  # "bridge" | "regular" | "self_loop"
    p: int = 0
    trivial: bool = False
    sectors: tuple[frozenset, ...] = ()

    def __str__(self) -> str:
        if self.tag != "self_loop":
            return self.tag
        return f"self_loop(p={self.p}, trivial={self.trivial})"


@dataclass(frozen=True, eq=False)
class StrandedGraph:
    D: int
    points: Mapping[int, tuple[int, Pair]]
    preflags: Mapping[int, PreFlag]
    bows: Mapping[int, int]
    vertices: Mapping[int, tuple[int, ...]]
    edges: Mapping[int, StrandedEdge]
    discs: tuple[Pair, ...] = ()
    mode: Mode = Mode.STRANDED
    _cache: dict = field(default_factory=dict, repr=False, compare=False)
    provenance: dict | None = field(default=None, repr=False, compare=False)

    # structure

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StrandedGraph):
            return NotImplemented
        return self.key(strict=True) == other.key(strict=True) and self.D == other.D

    def __hash__(self) -> int:
        return hash(self.key(strict=True))

    @property
    def edge_ids(self) -> tuple[int, ...]:
        return tuple(sorted(self.edges))

    def _edge_of_preflag(self) -> dict[int, int]:
        if "edge_of" not in self._cache:
            self._cache["edge_of"] = {f: e.id for e in self.edges.values() for f in e.ends}
        return self._cache["edge_of"]

    def _vertex_of_preflag(self) -> dict[int, int]:
        if "vertex_of" not in self._cache:
            self._cache["vertex_of"] = {f: v for v, fs in self.vertices.items() for f in fs}
        return self._cache["vertex_of"]

    def vertex_of(self, preflag: int) -> int:
        return self._vertex_of_preflag()[preflag]

    @property
    def flags(self) -> tuple[int, ...]:
        """Pre-flags not attached to an edge, sorted."""
        used = self._edge_of_preflag()
        return tuple(sorted(f for f in self.preflags if f not in used))

    def is_closed(self) -> bool:
        return not self.flags

    def strand_partner(self) -> dict[int, int]:
        if "strand" not in self._cache:
            out = {}
            for e in self.edges.values():
                for p, q in e.strands:
                    out[p] = q
                    out[q] = p
            self._cache["strand"] = out
        return self._cache["strand"]

    def edge_ends(self, e: int) -> tuple[int, int]:
        edge = self._edge(e)
        return self.vertex_of(edge.ends[0]), self.vertex_of(edge.ends[1])

    def _edge(self, e: int) -> StrandedEdge:
        try:
            return self.edges[e]
        except KeyError:
            raise KeyError(f"unknown edge {e!r}") from None

    def key(self, strict: bool = False) -> tuple:
        """Id-based structural key; discs are ignored unless ``strict``."""
        bows = frozenset(frozenset((p, q)) for p, q in self.bows.items())
        edges = frozenset(
            (e.id, frozenset(e.ends), frozenset(frozenset(s) for s in e.strands)) for e in self.edges.values()
        )
        verts = frozenset(frozenset(fs) for fs in self.vertices.values())
        pts = frozenset(self.points.items())
        base = (pts, bows, edges, verts)
        return base + (tuple(sorted(self.discs)),) if strict else base

    # validation

    def validate(self) -> None:
        listed = [f for fs in self.vertices.values() for f in fs]
        if sorted(listed) != sorted(self.preflags):
            raise ValueError("vertices must partition the pre-flags")
        seen: set[int] = set()
        for f in self.preflags.values():
            pairs = [self.points[p][1] for p in f.points]
            if len(set(pairs)) != len(pairs):
                raise ValueError(f"pre-flag {f.id} repeats a color pair")
            if len(f.points) > self.D:
                raise ValueError(f"pre-flag {f.id} has more than D points")
            for p in f.points:
                if self.points[p][0] != f.id:
                    raise ValueError(f"point {p} is not owned by pre-flag {f.id}")
                if p in seen:
                    raise ValueError(f"point {p} listed twice")
                seen.add(p)
                if self.mode is not Mode.STRANDED and f.color not in self.points[p][1]:
                    raise ValueError(f"point {p} pair misses its pre-flag color")
            if self.mode is not Mode.STRANDED and len(f.points) != self.D:
                raise ValueError(f"pre-flag {f.id} must have exactly D points")
        if seen != set(self.points):
            raise ValueError("points not covered by pre-flags")
        for p, q in self.bows.items():
            if self.bows.get(q) != p or p == q:
                raise ValueError(f"bow at {p} is not symmetric")
            if self.points[p][1] != self.points[q][1]:
                raise ValueError(f"bow {p}-{q} joins different color pairs")
            if self.points[p][0] == self.points[q][0]:
                raise ValueError(f"bow {p}-{q} stays inside one pre-flag")
            if self.vertex_of(self.points[p][0]) != self.vertex_of(self.points[q][0]):
                raise ValueError(f"bow {p}-{q} joins two vertices")
        if self.mode is not Mode.STRANDED and set(self.bows) != set(self.points):
            raise ValueError("every point needs exactly one bow")
        for v, fs in self.vertices.items():
            if not fs:
                raise ValueError(f"vertex {v} is empty")
            if len(self._bow_components(fs)) != 1:
                raise ValueError(f"vertex {v} is not bow-connected")
        used: Counter = Counter()
        for e in self.edges.values():
            a, b = e.ends
            if a == b:
                raise ValueError(f"edge {e.id} has identical ends")
            used.update((a, b))
            pa, pb = set(self.preflags[a].points), set(self.preflags[b].points)
            if len(e.strands) != len(pa) or len(pa) != len(pb):
                raise ValueError(f"edge {e.id} strands are not a bijection")
            if {s[0] for s in e.strands} != pa or {s[1] for s in e.strands} != pb:
                raise ValueError(f"edge {e.id} strands do not match its ends")
            if self.mode is not Mode.STRANDED:
                for p, q in e.strands:
                    if self.points[p][1] != self.points[q][1]:
                        raise ValueError(f"edge {e.id} strand {p}-{q} is not parallel")
                if self.preflags[a].color != e.color or self.preflags[b].color != e.color:
                    raise ValueError(f"edge {e.id} color differs from its pre-flags")
            sa, sb = self.preflags[a].sign, self.preflags[b].sign
            if self.mode in (Mode.COLORED_TENSOR, Mode.W_COLORED) and sa and sb and sa == sb:
                raise ValueError(f"edge {e.id} joins two pre-flags of the same sign")
        if any(c > 1 for c in used.values()):
            raise ValueError("pre-flag attached to two edges")
        if self.mode is Mode.COLORED_TENSOR:
            for v, fs in self.vertices.items():
                colors = sorted(self.preflags[f].color for f in fs)
                if colors != list(range(self.D + 1)):
                    raise ValueError(f"vertex {v} does not carry every color once")
            for v, fs in self.vertices.items():
                if len({self.preflags[f].sign for f in fs}) != 1:
                    raise ValueError(f"vertex {v} mixes signs")
            if self.D == 3:
                for fs in self.vertices.values():
                    if len(fs) % 2:
                        raise ValueError("odd number of pre-flags at a vertex")

    def _bow_components(self, preflag_ids: Iterable[int]) -> list[frozenset]:
        fs = list(preflag_ids)
        ds = DisjointSet(fs)
        member = set(fs)
        for f in fs:
            for p in self.preflags[f].points:
                q = self.bows.get(p)
                if q is not None:
                    g = self.points[q][0]
                    if g in member:
                        ds.union(f, g)
        return sorted((frozenset(g) for g in ds.groups()), key=min)

    # derived graphs

    def collapsed(self) -> SimpleFlagGraph:
        """Underlying simple graph with flags; discs are isolated vertices."""
        vs = tuple(sorted(self.vertices)) + tuple(("disc", i) for i in range(len(self.discs)))
        edges = tuple((e.id, self.vertex_of(e.ends[0]), self.vertex_of(e.ends[1])) for _, e in sorted(self.edges.items()))
        flags = tuple((f, self.vertex_of(f)) for f in self.flags)
        return SimpleFlagGraph(vs, edges, flags)

    def n_components(self) -> int:
        return self.collapsed().components()

    # edge operations

    def _replace(self, **kw) -> StrandedGraph:
        base = dict(
            D=self.D,
            points=self.points,
            preflags=self.preflags,
            bows=self.bows,
            vertices=self.vertices,
            edges=self.edges,
            discs=self.discs,
            mode=self.mode,
        )
        base.update(kw)
        if "discs" in kw:
            base["discs"] = tuple(sorted(base["discs"]))
        return StrandedGraph(**base)

    def cut(self, e: int) -> StrandedGraph:
        """Replace ``e`` by two flags."""
        self._edge(e)
        return self._replace(edges={i: x for i, x in self.edges.items() if i != e})

    def delete(self, e: int) -> StrandedGraph:
        """Alias of :meth:`cut`: pre-flags are never removed from vertices."""
        return self.cut(e)

    def _contract_parts(self, e: int):
        edge = self._edge(e)
        f1, f2 = edge.ends
        S = set(self.preflags[f1].points) | set(self.preflags[f2].points)
        through = {}
        for p, q in edge.strands:
            through[p] = q
            through[q] = p
        bows = dict(self.bows)
        new_bows = {p: q for p, q in bows.items() if p not in S and q not in S}
        visited: set[int] = set()
        for o in sorted(p for p, q in bows.items() if p not in S and q in S):
            if o in new_bows:
                continue
            cur = bows[o]
            while True:
                visited.add(cur)
                nxt = through[cur]
                visited.add(nxt)
                out = bows[nxt]
                if out not in S:
                    new_bows[o] = out
                    new_bows[out] = o
                    break
                cur = out
        inner: list[Pair] = []
        left = sorted(S - visited)
        seen: set[int] = set()
        for p in left:
            if p in seen:
                continue
            inner.append(self.points[p][1])
            cur = p
            while cur not in seen:
                seen.add(cur)
                nxt = through[cur]
                seen.add(nxt)
                cur = bows[nxt]
        return edge, new_bows, inner

    def contract(self, e: int, soft: bool = True) -> StrandedGraph:
        """Contract ``e``.

        Outer strands through ``e`` are spliced into new bows; each inner
        face (a strand cycle inside the two end pre-flags) becomes a trivial
        disc under soft contraction and disappears under hard contraction.
        The merged vertex is split into its bow-connected families.
        """
        if self.D not in (2, 3) and self.vertex_of(self._edge(e).ends[0]) == self.vertex_of(self._edge(e).ends[1]):
            raise NotImplementedError("self-loop contraction is defined for D = 2, 3 only")
        edge, new_bows, inner = self._contract_parts(e)
        f1, f2 = edge.ends
        u, v = self.vertex_of(f1), self.vertex_of(f2)
        if u == v:
            order = [f for f in self.vertices[u] if f not in (f1, f2)]
        else:
            fu, fv = list(self.vertices[u]), list(self.vertices[v])
            iu, iv = fu.index(f1), fv.index(f2)
            order = fu[:iu] + fv[iv + 1 :] + fv[:iv] + fu[iu + 1 :]
        S = set(self.preflags[f1].points) | set(self.preflags[f2].points)
        points = {p: x for p, x in self.points.items() if p not in S}
        preflags = {i: f for i, f in self.preflags.items() if i not in (f1, f2)}
        vertices = {w: fs for w, fs in self.vertices.items() if w not in (u, v)}
        tmp = self._replace(points=points, preflags=preflags, bows=new_bows, vertices={}, edges={})
        groups = tmp._bow_components(order)
        next_id = max(self.vertices, default=-1) + 1
        for i, grp in enumerate(sorted(groups, key=lambda g: order.index(min(g, key=order.index)))):
            vid = u if i == 0 else next_id + i - 1
            vertices[vid] = tuple(f for f in order if f in grp)
        if u != v and len(groups) != 1:
            raise InvariantViolation(f"contraction of edge {e} left a disconnected vertex")
        if self.D == 3 and self.mode is not Mode.STRANDED and any(len(grp) % 2 for grp in groups):
            raise InvariantViolation(f"contraction of edge {e} left a vertex with an odd number of pre-flags")
        discs = self.discs + (tuple(inner) if soft else ())
        edges = {i: x for i, x in self.edges.items() if i != e}
        mode = Mode.W_COLORED if self.mode is not Mode.STRANDED else Mode.STRANDED
        return self._replace(
            points=points, preflags=preflags, bows=new_bows, vertices=vertices, edges=edges, discs=discs, mode=mode
        )

    def contract_soft(self, e: int) -> StrandedGraph:
        return self.contract(e, soft=True)

    def contract_hard(self, e: int) -> StrandedGraph:
        return self.contract(e, soft=False)

    def classify_edge(self, e: int) -> EdgeKind:
        u, v = self.edge_ends(e)
        if u != v:
            if self.cut(e).n_components() > self.n_components():
                return EdgeKind("bridge")
            return EdgeKind("regular")
        if self.D != 3:
            return EdgeKind("self_loop")
        _, new_bows, inner = self._contract_parts(e)
        g = self.contract(e)
        sectors = tuple(frozenset(g.vertices[w]) for w in sorted(g.vertices) if w not in self.vertices or w == u)
        trivial = g.n_components() == self.n_components() + 2
        return EdgeKind("self_loop", p=len(inner), trivial=trivial, sectors=sectors)

    def spanning(self, subset: Iterable[int]) -> StrandedGraph:
        """Spanning c-subgraph keeping ``subset``; the other edges are cut."""
        keep = set(subset)
        return self._replace(edges={i: x for i, x in self.edges.items() if i in keep})

    def full_contract(self, order: Sequence[int] | None = None, soft: bool = True) -> StrandedGraph:
        """Contract every edge, in ``order`` or by increasing id."""
        g = self
        for e in order if order is not None else self.edge_ids:
            g = g.contract(e, soft=soft)
        return g

    def relabel_edges(self, mapping: Mapping[int, int]) -> StrandedGraph:
        """Rename edge ids; ids missing from ``mapping`` are kept."""
        edges = {}
        for i, x in self.edges.items():
            j = mapping.get(i, i)
            if j in edges:
                raise ValueError(f"edge id {j} used twice")
            edges[j] = StrandedEdge(j, x.ends, x.strands, x.color)
        return self._replace(edges=edges)

    # discs

    def remove_discs(self) -> StrandedGraph:
        return self._replace(discs=())

    def add_discs(self, pairs: Iterable[Pair]) -> StrandedGraph:
        return self._replace(discs=self.discs + tuple(_pair(*p) for p in pairs))

    # cells of the whole graph

    def faces(self) -> list[Face]:
        """Closed and open faces; trivial discs come last as closed faces."""
        ds = DisjointSet(self.points)
        for p, q in self.bows.items():
            ds.union(p, q)
        for p, q in self.strand_partner().items():
            ds.union(p, q)
        ext = {p for f in self.flags for p in self.preflags[f].points}
        out = []
        for grp in sorted(ds.groups(), key=min):
            term = tuple(sorted(p for p in grp if p in ext))
            out.append(Face(tuple(sorted(grp)), self.points[grp[0]][1], not term, term))
        out.extend(Face((), pr, True) for pr in self.discs)
        return out

    def bubbles(self, colors: Iterable[int] | None = None) -> list[Bubble]:
        """3-bubbles for one color triple, or for all of them."""
        if self.D != 3:
            raise NotImplementedError("bubbles are defined here for D = 3")
        triples = [tuple(sorted(colors))] if colors is not None else list(itertools.combinations(range(4), 3))
        ext = {p for f in self.flags for p in self.preflags[f].points}
        strands = self.strand_partner()
        out = []
        for T in triples:
            Ts = set(T)
            nodes = [p for p, (_, pr) in self.points.items() if set(pr) <= Ts]
            ds = DisjointSet(nodes)
            for p in nodes:
                ds.union(p, self.bows[p])
                if p in strands:
                    ds.union(p, strands[p])
            for f in self.preflags.values():
                inside = [p for p in f.points if set(self.points[p][1]) <= Ts]
                for a, b in zip(inside, inside[1:]):
                    ds.union(a, b)
            for grp in sorted(ds.groups(), key=min):
                out.append(Bubble(T, tuple(sorted(grp)), any(p in ext for p in grp)))
        return out

    def boundary(self, check: bool = True) -> BoundaryGraph:
        flags = self.flags
        color = {f: self.preflags[f].color for f in flags}
        open_faces = [fc for fc in self.faces() if not fc.closed]
        edges = []
        for fc in open_faces:
            a, b = fc.terminals
            edges.append((self.points[a][0], self.points[b][0], fc.pair, (a, b)))
        ds = DisjointSet(flags)
        for a, b, _, _ in edges:
            ds.union(a, b)
        C = ds.count() if flags else 0
        F = 0
        if self.D == 3:
            for bub in self.bubbles():
                if not bub.open:
                    continue
                F += _bubble_boundary_components(self, bub, flags)
            if check:
                direct = sum(1 for w in ribbon_faces(self.boundary_ribbon()).closed if w and w[0][0] != "vertex")
                if direct != F:
                    raise InvariantViolation(f"boundary face count mismatch: bubbles {F}, ribbon {direct}")
        return BoundaryGraph(
            tuple((f, color[f]) for f in flags),
            tuple(edges),
            C,
            len(open_faces),
            F,
            len(flags),
        )

    def boundary_ribbon(self) -> RibbonFlagGraph:
        """The boundary as a closed ribbon graph (D = 3)."""
        flags = self.flags
        slot_of = {}
        rot = []
        for f in flags:
            pts = self.preflags[f].points
            rot.append((f, tuple(pts)))
            for p in pts:
                slot_of[p] = f
        pairs = {p: set(self.points[p][1]) for p in slot_of}
        order = dict(rot)

        def side_triples(p: int) -> tuple[frozenset, frozenset]:
            slots = order[slot_of[p]]
            i = slots.index(p)
            prev, nxt = slots[i - 1], slots[(i + 1) % len(slots)]
            return frozenset(pairs[p] | pairs[prev]), frozenset(pairs[p] | pairs[nxt])

        edges = []
        for i, fc in enumerate(fc for fc in self.faces() if not fc.closed):
            a, b = fc.terminals
            la, ra = side_triples(a)
            lb, rb = side_triples(b)
            if la == rb and ra == lb:
                twist = False
            elif la == lb and ra == rb:
                twist = True
            else:
                raise InvariantViolation("boundary edge sides do not match")
            edges.append((i, a, b, twist))
        return RibbonFlagGraph(tuple(rot), tuple(edges), ())

    def cell_counts(self) -> CellCounts:
        """Cell counts of the graph itself, computed object by object."""
        fcs = self.faces()
        bubs = self.bubbles()
        bd = self.boundary()
        nd = len(self.discs)
        return CellCounts(
            k=self.n_components(),
            V=len(self.vertices) + nd,
            E=len(self.edges),
            F_int=sum(1 for f in fcs if f.closed),
            F_ext=sum(1 for f in fcs if not f.closed),
            B_int=sum(1 for b in bubs if not b.open),
            B_ext=sum(1 for b in bubs if b.open),
            C_bd=bd.C_bd,
            E_bd=bd.E_bd,
            F_bd=bd.F_bd,
            f=bd.f,
        )

    def zetas(self) -> tuple[int, int, int]:
        """(zeta, zeta', zeta'') of the disc-free representative, checked non-negative."""
        c = self.remove_discs().cell_counts()
        out = (c.zeta, c.zeta_prime, c.zeta_second)
        if min(out) < 0:
            raise InvariantViolation(f"negative zeta {out} for counts {c}")
        return out

    def zeta(self) -> int:
        return self.zetas()[0]

    def zeta_prime(self) -> int:
        return self.zetas()[1]

    def zeta_second(self) -> int:
        return self.zetas()[2]

    # batched cell counts

    def subset_counts(self, masks: np.ndarray | None = None, workers: int | None = None, backend: str | None = None) -> np.ndarray:
        """Cell counts for every edge subset, one row per mask.

        Bit ``j`` of a mask selects ``self.edge_ids[j]``. Columns follow
        :attr:`CellCounts.FIELDS`.
        """
        if self.D != 3:
            raise NotImplementedError("cell counts are defined for D = 3")
        n_e = len(self.edges)
        if masks is None:
            masks = np.arange(1 << n_e, dtype=np.int64)
        systems = _link_systems(self)
        comp = {name: _kernels.count_components(masks, sys, workers, backend) for name, sys in systems.items()}
        nd = len(self.discs)
        size = np.array([bin(int(m)).count("1") for m in masks], dtype=np.int64)
        k = comp["vertex"][0] + nd
        V = np.full_like(k, len(self.vertices) + nd)
        faces_total, faces_open = comp["face"]
        F_int = faces_total - faces_open + nd
        F_ext = faces_open
        bub_total, bub_open = comp["bubble"]
        C_bd = comp["boundary"][1]
        F_bd = comp["bface"][1]
        n_flags = len(self.flags)
        f = n_flags + 2 * (n_e - size)
        return np.stack([k, V, size, F_int, F_ext, bub_total - bub_open, bub_open, C_bd, F_ext, F_bd, f], axis=1)


def _bubble_boundary_components(g: StrandedGraph, bub: Bubble, flags: Sequence[int]) -> int:
    Ts = set(bub.colors)
    pts = set(bub.points)
    nodes = [f for f in flags if g.preflags[f].color in Ts and any(p in pts for p in g.preflags[f].points)]
    if not nodes:
        return 0
    ds = DisjointSet(nodes)
    for fc in g.faces():
        if fc.closed or not set(fc.pair) <= Ts or fc.points[0] not in pts:
            continue
        a, b = fc.terminals
        ds.union(g.points[a][0], g.points[b][0])
    return ds.count()


_TRIPLES = list(itertools.combinations(range(4), 3))


def _link_systems(g: StrandedGraph) -> dict[str, _kernels.LinkSystem]:
    """Node/link encodings of the five component problems behind the cell counts."""
    if "systems" in g._cache:
        return g._cache["systems"]
    A, P, N = _kernels.ALWAYS, _kernels.PRESENT, _kernels.ABSENT
    edge_bit = {e: j for j, e in enumerate(g.edge_ids)}
    pidx = {p: i for i, p in enumerate(sorted(g.points))}
    flags = set(g.flags)
    pf_edge = {f: edge_bit[e] for f, e in g._edge_of_preflag().items()}

    def term_cond(f: int) -> tuple[int, int] | None:
        if f in flags:
            return (-1, A)
        return (pf_edge[f], N)

    bow_links = [(pidx[p], pidx[q], -1, A) for p, q in g.bows.items() if p < q]
    strand_links = []
    for e in g.edges.values():
        for p, q in e.strands:
            strand_links.append((pidx[p], pidx[q], edge_bit[e.id], P))
    terminals = []
    for f in g.preflags.values():
        te, tm = term_cond(f.id)
        for p in f.points:
            terminals.append((pidx[p], te, tm))
    same_pf = []
    for f in g.preflags.values():
        pts = [pidx[p] for p in f.points]
        for a, b in zip(pts, pts[1:]):
            same_pf.append((a, b, -1, A))
    n = len(pidx)
    systems = {}
    systems["vertex"] = _kernels.LinkSystem.build(n, bow_links + same_pf + strand_links, [])
    systems["face"] = _kernels.LinkSystem.build(n, bow_links + strand_links, terminals)
    bd_links = []
    for f in g.preflags.values():
        te, tm = term_cond(f.id)
        pts = [pidx[p] for p in f.points]
        for a, b in zip(pts, pts[1:]):
            bd_links.append((a, b, te, tm))
    systems["boundary"] = _kernels.LinkSystem.build(n, bow_links + strand_links + bd_links, terminals)
    # one copy of each point per color triple containing its pair
    copy = {}
    for p, (_, pr) in g.points.items():
        for t, T in enumerate(_TRIPLES):
            if set(pr) <= set(T):
                copy[(p, t)] = len(copy)
    bub_links, bface_links, bterms = [], [], []
    for (p, t), i in copy.items():
        q = g.bows[p]
        if p < q:
            bub_links.append((i, copy[(q, t)], -1, A))
        te, tm = term_cond(g.points[p][0])
        bterms.append((i, te, tm))
    for e in g.edges.values():
        for p, q in e.strands:
            for t in range(len(_TRIPLES)):
                if (p, t) in copy:
                    bub_links.append((copy[(p, t)], copy[(q, t)], edge_bit[e.id], P))
    face_part = list(bub_links)
    for f in g.preflags.values():
        te, tm = term_cond(f.id)
        for t in range(len(_TRIPLES)):
            inside = [copy[(p, t)] for p in f.points if (p, t) in copy]
            for a, b in zip(inside, inside[1:]):
                bub_links.append((a, b, -1, A))
                bface_links.append((a, b, te, tm))
    systems["bubble"] = _kernels.LinkSystem.build(len(copy), bub_links, bterms)
    systems["bface"] = _kernels.LinkSystem.build(len(copy), face_part + bface_links, bterms)
    g._cache["systems"] = systems
    return systems


# builders


def build_colored_tensor(
    signs: Sequence[int],
    edges: Sequence[tuple[int, int, int]],
    flags: Sequence[tuple[int, int]] | None = None,
    D: int = 3,
) -> StrandedGraph:
    """Expand a compact colored graph into its stranded form.

    ``edges`` lists ``(color, u, v)``; ``flags`` lists ``(color, vertex)``.
    When ``flags`` is None every unused color at a vertex becomes a flag.
    Each vertex gets the complete-graph bow pattern on ``D + 1`` pre-flags.
    """
    n = len(signs)
    if any(s not in (1, -1) for s in signs):
        raise ValueError("vertex signs must be +1 or -1")
    used: dict[tuple[int, int], str] = {}
    for c, u, v in edges:
        if not (0 <= c <= D):
            raise ValueError(f"edge color {c} outside 0..{D}")
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError("edge endpoint out of range")
        if u == v:
            raise ValueError("colored tensor graphs have no self-loops")
        if signs[u] == signs[v]:
            raise ValueError(f"edge ({u},{v}) is not bipartite")
        for w in (u, v):
            if (w, c) in used:
                raise ValueError(f"color clash: color {c} twice at vertex {w}")
            used[(w, c)] = "edge"
    if flags is None:
        flags = [(c, w) for w in range(n) for c in range(D + 1) if (w, c) not in used]
    for c, w in flags:
        if not (0 <= w < n):
            raise ValueError("flag vertex out of range")
        if (w, c) in used:
            raise ValueError(f"color clash: color {c} twice at vertex {w}")
        used[(w, c)] = "flag"
    for w in range(n):
        for c in range(D + 1):
            if (w, c) not in used:
                raise ValueError(f"missing pre-flag of color {c} at vertex {w}")
    points: dict[int, tuple[int, Pair]] = {}
    preflags: dict[int, PreFlag] = {}
    point_at: dict[tuple[int, int, int], int] = {}
    vertices: dict[int, tuple[int, ...]] = {}
    for w in range(n):
        fids = []
        for c in range(D + 1):
            fid = w * (D + 1) + c
            pts = []
            for x in range(D + 1):
                if x == c:
                    continue
                pid = len(points)
                points[pid] = (fid, _pair(c, x))
                point_at[(w, c, x)] = pid
                pts.append(pid)
            preflags[fid] = PreFlag(fid, c, tuple(pts), signs[w])
            fids.append(fid)
        vertices[w] = tuple(fids)
    bows: dict[int, int] = {}
    for w in range(n):
        for c, x in itertools.combinations(range(D + 1), 2):
            p, q = point_at[(w, c, x)], point_at[(w, x, c)]
            bows[p], bows[q] = q, p
    sedges = {}
    for i, (c, u, v) in enumerate(edges):
        strands = tuple((point_at[(u, c, x)], point_at[(v, c, x)]) for x in range(D + 1) if x != c)
        sedges[i] = StrandedEdge(i, (u * (D + 1) + c, v * (D + 1) + c), strands, c)
    g = StrandedGraph(D, points, preflags, bows, vertices, sedges, (), Mode.COLORED_TENSOR)
    g.validate()
    return g


def from_compact(data: Mapping) -> StrandedGraph:
    """Build from ``{"sign": [...], "edges": [{"color", "endpoints"}], "flags": [{"color", "vertex"}]}``."""
    D = int(data.get("rank", 3))
    edges = [(int(e["color"]), int(e["endpoints"][0]), int(e["endpoints"][1])) for e in data.get("edges", [])]
    flags = data.get("flags")
    fl = None if flags is None else [(int(f["color"]), int(f["vertex"])) for f in flags]
    return build_colored_tensor([int(s) for s in data["sign"]], edges, fl, D)


def melon() -> StrandedGraph:
    """Two vertices joined by edges of all four colors."""
    return build_colored_tensor([1, -1], [(c, 0, 1) for c in range(4)])


def from_ribbon(g: RibbonFlagGraph) -> StrandedGraph:
    """Rank-2 stranded graph of a ribbon graph.

    Each slot becomes a pre-flag with a left and a right point, consecutive
    slots are joined by a bow, and edge strands cross unless the edge is
    twisted. Bare vertices become discs. Edge ids must be integers; flags
    must be unpinched and every other vertex needs at least two slots.
    """
    if g.pinched:
        raise ValueError("pinched flags have no rank-2 stranded form")
    pairs = [(0, 1), (0, 2), (1, 2)]
    points: dict[int, tuple[int, Pair]] = {}
    preflags: dict[int, PreFlag] = {}
    bows: dict[int, int] = {}
    vertices: dict[int, tuple[int, ...]] = {}
    side: dict[tuple[int, str], int] = {}
    discs = []
    for vid, (_, slots) in enumerate(g.rotation):
        n = len(slots)
        if n == 0:
            discs.append(pairs[0])
            continue
        if n == 1:
            raise ValueError("a vertex with one slot has no rank-2 stranded form")
        corner = [pairs[j % 2] for j in range(n)]
        if n % 2:
            corner[-1] = pairs[2]
        for j, s in enumerate(slots):
            left, right = 2 * s, 2 * s + 1
            points[left] = (s, corner[j - 1])
            points[right] = (s, corner[j])
            side[(s, "L")], side[(s, "R")] = left, right
            preflags[s] = PreFlag(s, 0, (left, right))
        for j, s in enumerate(slots):
            a, b = side[(s, "R")], side[(slots[(j + 1) % n], "L")]
            bows[a], bows[b] = b, a
        vertices[vid] = tuple(slots)
    edges = {}
    for e, a, b, tw in g.edges:
        if tw:
            strands = ((side[(a, "L")], side[(b, "L")]), (side[(a, "R")], side[(b, "R")]))
        else:
            strands = ((side[(a, "L")], side[(b, "R")]), (side[(a, "R")], side[(b, "L")]))
        edges[int(e)] = StrandedEdge(int(e), (a, b), strands, 0)
    out = StrandedGraph(2, points, preflags, bows, vertices, edges, tuple(sorted(discs)))
    out.validate()
    return out


def disjoint_union(g1: StrandedGraph, g2: StrandedGraph) -> StrandedGraph:
    """Juxtaposition; the ids of ``g2`` are shifted past those of ``g1``."""
    if g1.D != g2.D:
        raise ValueError("ranks differ")
    dp = max(g1.points, default=-1) + 1
    df = max(g1.preflags, default=-1) + 1
    dv = max(g1.vertices, default=-1) + 1
    de = max(g1.edges, default=-1) + 1
    points = dict(g1.points)
    points.update({p + dp: (f + df, pr) for p, (f, pr) in g2.points.items()})
    preflags = dict(g1.preflags)
    for i, f in g2.preflags.items():
        preflags[i + df] = PreFlag(i + df, f.color, tuple(p + dp for p in f.points), f.sign)
    bows = dict(g1.bows)
    bows.update({p + dp: q + dp for p, q in g2.bows.items()})
    vertices = dict(g1.vertices)
    vertices.update({v + dv: tuple(f + df for f in fs) for v, fs in g2.vertices.items()})
    edges = dict(g1.edges)
    for i, e in g2.edges.items():
        edges[i + de] = StrandedEdge(
            i + de, (e.ends[0] + df, e.ends[1] + df), tuple((p + dp, q + dp) for p, q in e.strands), e.color
        )
    mode = g1.mode if g1.mode == g2.mode else Mode.W_COLORED
    return StrandedGraph(g1.D, points, preflags, bows, vertices, edges, tuple(sorted(g1.discs + g2.discs)), mode)


def equivalent_up_to_discs(g1: StrandedGraph, g2: StrandedGraph, strict: bool = False) -> bool:
    """Same graph once trivial discs are removed; ``strict`` also compares disc multisets."""
    return g1.key(strict=strict) == g2.key(strict=strict)


def spanning_counts(g: StrandedGraph, subset: Iterable[int]) -> CellCounts:
    return g.spanning(subset).cell_counts()


__all__ = [
    "BoundaryGraph",
    "Bubble",
    "CellCounts",
    "EdgeKind",
    "Face",
    "InvariantViolation",
    "Mode",
    "PreFlag",
    "StrandedEdge",
    "StrandedGraph",
    "build_colored_tensor",
    "disjoint_union",
    "equivalent_up_to_discs",
    "from_compact",
    "from_ribbon",
    "melon",
    "spanning_counts",
]
