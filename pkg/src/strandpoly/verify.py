"""Random graph generators and property suites with witness shrinking."""

from __future__ import annotations

import json
import time
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Any, Union

import numpy as np

from . import invariant as inv
from . import ribbon as rb
from . import simple as sp
from . import stranded as st
from ._graphutil import DisjointSet
from .graphio import replay, ribbon_to_dict, simple_to_dict, stranded_to_dict
from .poly import Basis, Polynomial, to_basis

FAMILIES = ("simple", "ribbon", "colored_tensor", "w_colored")
Size = Union[int, tuple[int, int]]
Graph = Union[sp.SimpleFlagGraph, rb.RibbonFlagGraph, st.StrandedGraph]

_X, _Y = Polynomial.var("X"), Polynomial.var("Y")
_z, _s, _w, _q, _t = (Polynomial.var(n) for n in "zswqt")


class Skip(Exception):
    """The property does not apply to this case."""


@dataclass(frozen=True)
class GeneratorSpec:
    """Family and size bounds; an int is an exact size, a pair an inclusive range."""

    family: str
    vertices: Size = (2, 4)
    edges: Size = (1, 6)
    flags: Size = (0, 3)
    seed: int = 0
    contractions: Size | None = None
    max_edges: int = 8

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")


def _pick(rng: np.random.Generator, size: Size) -> int:
    if isinstance(size, int):
        return size
    lo, hi = size
    return int(rng.integers(lo, hi + 1))


def _simple(spec: GeneratorSpec, rng: np.random.Generator) -> sp.SimpleFlagGraph:
    n = max(1, _pick(rng, spec.vertices))
    m, q = _pick(rng, spec.edges), _pick(rng, spec.flags)
    edges = [(int(rng.integers(n)), int(rng.integers(n))) for _ in range(m)]
    flags = [int(rng.integers(n)) for _ in range(q)]
    return sp.SimpleFlagGraph.build(range(n), edges, flags)


def _ribbon(spec: GeneratorSpec, rng: np.random.Generator) -> rb.RibbonFlagGraph:
    n = max(1, _pick(rng, spec.vertices))
    m, q = _pick(rng, spec.edges), _pick(rng, spec.flags)
    labels = [("e", i) for i in range(m) for _ in range(2)] + [("f", i) for i in range(q)]
    owner = rng.integers(n, size=len(labels))
    rot: dict[int, list] = {v: [] for v in range(n)}
    for lab, v in zip(labels, owner.tolist()):
        rot[v].append(lab)
    for v in rot:
        rot[v] = [rot[v][i] for i in rng.permutation(len(rot[v]))]
    twisted = [("e", i) for i in range(m) if rng.random() < 0.3]
    g = rb.RibbonFlagGraph.from_rotation(rot, twisted)
    # integer ids keep generated graphs easy to serialize
    emap = {e: i for i, e in enumerate(g.edge_ids)}
    fmap = {f: i for i, (f, _) in enumerate(g.flags)}
    return rb.RibbonFlagGraph(
        g.rotation,
        tuple((emap[e], a, b, tw) for e, a, b, tw in g.edges),
        tuple((fmap[f], s) for f, s in g.flags),
    )


def _compact_colored(spec: GeneratorSpec, rng: np.random.Generator, D: int = 3) -> dict:
    if isinstance(spec.vertices, int):
        n = spec.vertices
    else:
        evens = [x for x in range(spec.vertices[0], spec.vertices[1] + 1) if x > 0 and x % 2 == 0]
        n = int(rng.choice(evens)) if evens else -1
    if n <= 0 or n % 2:
        raise ValueError("bipartite colored tensor graphs need an even vertex count")
    cap = (D + 1) * n // 2
    if isinstance(spec.edges, int):
        m = spec.edges
    else:
        lo, hi = spec.edges[0], min(spec.edges[1], cap)
        m = int(rng.integers(lo, hi + 1)) if lo <= hi else spec.edges[0]
    if m > cap:
        raise ValueError(f"{m} edges do not fit on {n} vertices")
    signs = [1] * (n // 2) + [-1] * (n // 2)
    signs = [signs[i] for i in rng.permutation(n)]
    plus = [v for v in range(n) if signs[v] == 1]
    minus = [v for v in range(n) if signs[v] == -1]
    cands = [(c, u, v) for c in range(D + 1) for u in plus for v in minus]
    for _ in range(200):
        used: set = set()
        chosen = []
        for i in rng.permutation(len(cands)):
            c, u, v = cands[i]
            if (u, c) in used or (v, c) in used:
                continue
            used.update(((u, c), (v, c)))
            chosen.append((c, u, v))
            if len(chosen) == m:
                break
        if len(chosen) == m:
            return {
                "sign": signs,
                "edges": [{"color": c, "endpoints": [u, v]} for c, u, v in chosen],
            }
    raise ValueError(f"could not place {m} colored edges on {n} vertices")


def _w_colored(spec: GeneratorSpec, rng: np.random.Generator) -> st.StrandedGraph:
    seed = _compact_colored(spec, rng)
    g = st.from_compact(seed)
    m = len(g.edges)
    if spec.contractions is not None:
        want = max(_pick(rng, spec.contractions), m - spec.max_edges)
    else:
        # final edge count uniform in 1..max_edges
        want = m - int(rng.integers(1, min(m, spec.max_edges) + 1))
    steps: list[dict] = []
    while len(steps) < want and g.edges:
        e = int(rng.choice(g.edge_ids))
        op = "contract" if rng.random() < 0.85 else "contract_hard"
        g = g.contract(e, soft=op == "contract")
        steps.append({"op": op, "edge": e})
    return g._replace(provenance={"seed": seed, "steps": steps})


def generate(spec: GeneratorSpec) -> Graph:
    """Deterministic random graph of ``spec.family``; w-colored graphs carry their provenance."""
    rng = np.random.default_rng(spec.seed)
    if spec.family == "simple":
        return _simple(spec, rng)
    if spec.family == "ribbon":
        return _ribbon(spec, rng)
    if spec.family == "colored_tensor":
        return st.from_compact(_compact_colored(spec, rng))
    return _w_colored(spec, rng)


def graph_to_dict(g: Graph) -> dict:
    if isinstance(g, sp.SimpleFlagGraph):
        return {"family": "simple", "graph": simple_to_dict(g)}
    if isinstance(g, rb.RibbonFlagGraph):
        return {"family": "ribbon", "graph": ribbon_to_dict(g)}
    out: dict[str, Any] = {"family": "w_colored", "graph": stranded_to_dict(g)}
    if g.provenance is not None:
        out["provenance"] = g.provenance
    return out


def _check(cond: bool, message: str) -> None:
    if not cond:
        raise AssertionError(message)


def _eq(a: Polynomial, b: Polynomial, what: str) -> None:
    if a != b:
        raise AssertionError(f"{what}: {a.to_text()} != {b.to_text()}")


# simple graph suites


def s_tutte_recursive(g: sp.SimpleFlagGraph) -> None:
    _eq(sp.tutte_flags_recursive(g), sp.tutte_flags_statesum(g), "recursive vs state sum")


def s_tutte_identity(g: sp.SimpleFlagGraph) -> None:
    _eq(sp.flag_tutte_identity_rhs(g), sp.tutte_flags_statesum(g), "flag-Tutte identity")


def s_tutte_t1(g: sp.SimpleFlagGraph) -> None:
    lhs = sp.tutte_flags_statesum(g).substitute({"t": 1})
    rhs = to_basis(sp.tutte_classic(g), Basis.STANDARD, Basis.SHIFTED)
    _eq(lhs, rhs, "T(t=1) vs Tutte")


# ribbon suites


def r_recurrence(g: rb.RibbonFlagGraph) -> None:
    R = rb.br_flags(g)
    for e in g.edge_ids:
        cut = g.cut_edge(e)
        kind = g.classify_edge(e)
        _eq(rb.br_flags_prime(cut), _t**2 * rb.br_flags_prime(g.delete_edge(e)), f"R' cut vs delete on {e}")
        if kind is sp.EdgeClass.REGULAR:
            _eq(R, rb.br_flags(cut) + rb.br_flags(g.contract_edge(e)), f"regular edge {e}")
        elif kind is sp.EdgeClass.BRIDGE:
            _eq(R, _X * rb.br_flags(cut) + rb.br_flags(g.contract_edge(e)), f"bridge {e}")
        elif g.is_trivial_loop(e):
            twist = g.edge(e)[2]
            factor = _Y * _z if twist else _Y
            _eq(R, rb.br_flags(cut) + factor * rb.br_flags(g.contract_edge(e)), f"trivial loop {e}")


def r_multiplicative(g: rb.RibbonFlagGraph, h: rb.RibbonFlagGraph, rng: np.random.Generator) -> None:
    _eq(rb.br_flags(rb.disjoint_union(g, h)), rb.br_flags(g) * rb.br_flags(h), "R over disjoint union")
    _eq(rb.br_flags_prime(rb.disjoint_union(g, h)), rb.br_flags_prime(g) * rb.br_flags_prime(h), "R' over union")
    v1 = g.vertices[int(rng.integers(len(g.vertices)))]
    v2 = h.vertices[int(rng.integers(len(h.vertices)))]
    splice = (int(rng.integers(8)), int(rng.integers(8)))
    dot = rb.dot_product(g, v1, h, v2, splice)
    _eq(rb.br_flags_prime(dot), rb.br_flags_prime(g) * rb.br_flags_prime(h), f"R' over dot product {splice}")


def r_reductions(g: rb.RibbonFlagGraph) -> None:
    R = rb.br_flags(g)
    _eq(R.substitute({"z": 1, "s": 1}), sp.tutte_flags_statesum(g.to_simple()), "R(z=1,s=1) vs flag-Tutte")
    Rp = rb.br_flags_prime(g)
    _check(Rp.is_polynomial(), "R' has negative exponents")
    _eq(Rp.substitute({"t": 1}), rb.br_classic(rb.pinch(g)), "R'(t=1) vs R of pinched graph")
    fs = rb.faces(g)
    sides = [n for w in fs.closed + fs.open for n in w if n[0] != "vertex"]
    n_slots = sum(len(s) for _, s in g.rotation)
    _check(len(sides) == len(set(sides)) == 2 * n_slots, "faces do not consume every side exactly once")
    closed = rb.pinch(g)
    for mask in range(1 << len(g.edges)):
        sub = closed.spanning([e for j, e in enumerate(g.edge_ids) if mask >> j & 1], mode="delete")
        c = rb.cell_counts(sub)
        _check(c.k - c.F_int + c.nullity >= 0, f"negative Euler genus term on subset {mask}")


def r_pinch(g: rb.RibbonFlagGraph) -> None:
    c = rb.cell_counts(g)
    p = rb.faces(rb.pinch(g))
    _check(p.n_open == 0, "pinched graph has open faces")
    _check(p.n_closed == c.F_int + c.C_bd, f"pinched faces {p.n_closed} != F_int {c.F_int} + C_bd {c.C_bd}")


def _ribbon_profile(g: rb.RibbonFlagGraph) -> list[tuple]:
    out = []
    ids = g.edge_ids
    for mask in range(1 << len(ids)):
        sub = g.spanning([e for j, e in enumerate(ids) if mask >> j & 1], mode="cut")
        c = rb.cell_counts(sub)
        out.append((mask, c.k, c.V, c.E, c.F_int, c.F_ext))
    return out


def _stranded_profile(g: st.StrandedGraph, ids: tuple) -> list[tuple]:
    out = []
    for mask in range(1 << len(ids)):
        sub = g.spanning([e for j, e in enumerate(ids) if mask >> j & 1])
        fcs = sub.faces()
        closed = sum(1 for f in fcs if f.closed)
        out.append((mask, sub.n_components(), len(sub.vertices) + len(sub.discs), len(sub.edges), closed, len(fcs) - closed))
    return out


def soft_contraction_agrees(g: rb.RibbonFlagGraph, e: int) -> bool | None:
    """Compare ribbon contraction of ``e`` with soft contraction of its rank-2 stranded form.

    Agreement means equal components, vertices, edges and closed/open faces
    on every spanning subgraph. Returns None when the ribbon side is undefined.
    """
    try:
        rib = g.contract_edge(e)
    except (ValueError, NotImplementedError):
        return None
    soft = st.from_ribbon(g).contract(e)
    ids = tuple(x for x in g.edge_ids if x != e)
    return _ribbon_profile(rib) == _stranded_profile(soft, ids)


def _rank2_ready(g: rb.RibbonFlagGraph) -> bool:
    return not g.pinched and all(len(s) != 1 for _, s in g.rotation)


def r_soft_contraction(g: rb.RibbonFlagGraph) -> str | None:
    """Soft stranded contraction of ribbon self-loops: asserted on trivial loops only."""
    loops = [e for e in g.edge_ids if g.classify_edge(e) is sp.EdgeClass.SELF_LOOP]
    if not loops or not _rank2_ready(g):
        raise Skip
    notes = []
    for e in loops:
        if g.is_trivial_loop(e):
            _check(soft_contraction_agrees(g, e) is True, f"soft contraction disagrees on trivial loop {e}")
        else:
            soft = st.from_ribbon(g).contract(e)
            notes.append(f"{e} ({len(soft.discs)} discs)")
    return f"non-trivial loops without ribbon contraction: {', '.join(notes)}" if notes else None


# stranded suites


def _kind_factor(kind: st.EdgeKind) -> Polynomial:
    return _Y * _z ** (4 * kind.p - 7)


def t_recurrence(g: st.StrandedGraph) -> None:
    T = inv.t_frak_statesum(g)
    Tp = inv.reduce(T, "T_prime")
    Ts = inv.reduce(T, "T_second")
    for e in g.edge_ids:
        kind = g.classify_edge(e)
        cut, con = g.cut(e), g.contract(e)
        Tc, Tk = inv.t_frak_statesum(cut), inv.t_frak_statesum(con)
        if kind.tag == "regular":
            _eq(T, Tc + Tk, f"regular edge {e}")
            mv = inv.t_multivariate(g)
            rhs = inv.t_multivariate(cut) + Polynomial.var("x") * Polynomial.var(inv.edge_variable(e)) * inv.t_multivariate(con)
            _eq(mv, rhs, f"multivariate regular edge {e}")
        elif kind.tag == "bridge":
            _eq(Tc, _z**8 * _s * (_w * _q) ** 3 * _t**2 * Tk, f"bridge cut/contract {e}")
            _eq(T, inv.bridge_factor() * Tk, f"bridge {e}")
            _eq(Tp, (_X * _z**6 * (_q * _w) ** 3 * _t**2 + 1) * inv.reduce(Tk, "T_prime"), f"T' bridge {e}")
            _eq(Ts, (_X * _z**6 + 1) * inv.reduce(Tk, "T_second"), f"T'' bridge {e}")
        elif kind.trivial:
            if kind.p == 3:
                _eq(T, inv.three_inner_factor() * Tk, f"3-inner loop {e}")
                continue
            _eq(T, Tc + _kind_factor(kind) * Tk, f"trivial {kind.p}-inner loop {e}")
            p = kind.p
            lhs = Tp.substitute({"w": 1})
            rhs = (_z ** (4 * p - 6) * (_q**3 * _t**2 + _Y * _z**-1) * inv.reduce(Tk, "T_prime")).substitute({"w": 1})
            _eq(lhs, rhs, f"T' trivial loop {e} at w=1")
            _eq(inv.reduce(Tc, "T_second"), _z ** (4 * p - 6) * inv.reduce(Tk, "T_second"), f"T'' cut vs contract {e}")


def t_statesum_vs_recursive(g: st.StrandedGraph) -> None:
    _eq(inv.t_frak_recursive(g), inv.t_frak_statesum(g), "recursive vs state sum")


def t_disjoint_union(g: st.StrandedGraph, h: st.StrandedGraph) -> None:
    _eq(inv.disjoint_union_invariant(g, h), inv.t_frak_statesum(g) * inv.t_frak_statesum(h), "disjoint union")


def t_representative(g: st.StrandedGraph, rng: np.random.Generator) -> None:
    pairs = [tuple(sorted(rng.choice(4, 2, replace=False).tolist())) for _ in range(int(rng.integers(1, 4)))]
    T = inv.t_frak_statesum(g)
    _eq(inv.t_frak_statesum(g.add_discs(pairs)), T, "adding discs")
    _eq(inv.t_frak_statesum(g.remove_discs()), T, "removing discs")
    _check(st.equivalent_up_to_discs(g, g.add_discs(pairs)), "disc-equivalence")


def t_zeta(g: st.StrandedGraph) -> None:
    c = g.subset_counts()
    inv.check_bounds(c, len(g.discs))
    T = inv.t_frak_statesum(g)
    for kind in ("T_prime", "T_second", "T_triple"):
        _check(inv.reduce(T, kind).is_polynomial(), f"{kind} not a polynomial")
    chi = c[:, inv.FL] - c[:, inv.E_BD] + c[:, inv.F_BD]
    s_exp = sorted((2 * c[:, inv.C_BD] - chi).tolist())
    got = sorted(m for mono, k in inv.reduce(T, "T_second").terms() for m in [dict(mono).get("s", 0)] for _ in range(k))
    _check(s_exp == got, "T'' s-exponents differ from 2 C_bd - chi")


def t_tutte_reduction(g: st.StrandedGraph) -> None:
    T = inv.reduce(inv.t_frak_statesum(g), "tutte_reduction")
    _eq(T, sp.tutte_flags_statesum(g.collapsed()), "T(z=s=w=q=1) vs flag-Tutte")


def _reduce_to_terminal(g: st.StrandedGraph, rng: np.random.Generator) -> st.StrandedGraph:
    while True:
        regular = [e for e in g.edge_ids if g.classify_edge(e).tag == "regular"]
        if not regular:
            return g
        e = int(rng.choice(regular))
        g = g.cut(e) if rng.random() < 0.5 else g.contract(e)


def t_terminal(g: st.StrandedGraph, rng: np.random.Generator) -> str | None:
    h = _reduce_to_terminal(g, rng)
    run = inv.terminal_run(h)
    bound = inv.terminal_bound(run)
    if not run["terminal"]:
        if bound < 0:
            return f"non-terminal run: bound {bound} < 0"
        raise Skip
    _check(bound >= 0, f"terminal bound {bound} < 0")
    _eq(inv.terminal_product_second(run), inv.reduce(inv.t_frak_statesum(h), "T_second"), "terminal form under T''")
    return None


def t_boundary(g: st.StrandedGraph) -> None:
    base = g.boundary().labeled()
    for e in g.edge_ids:
        _check(g.contract(e).boundary().labeled() == base, f"boundary changed by contracting {e}")
    if g.edges:
        full = g.full_contract()
        _check(full.boundary().labeled() == base, "boundary changed by full contraction")
        _check(not full.edges, "full contraction left edges")


def t_full_contract_order(g: st.StrandedGraph, rng: np.random.Generator) -> None:
    a = g.full_contract(list(rng.permutation(g.edge_ids).tolist()))
    b = g.full_contract(list(rng.permutation(g.edge_ids).tolist()))
    _check(st.equivalent_up_to_discs(a, b), "full contraction depends on the order")


def t_bridge_faces(g: st.StrandedGraph) -> None:
    bridges = [e for e in g.edge_ids if g.classify_edge(e).tag == "bridge"]
    if not bridges:
        raise Skip
    bd = g.boundary()
    ds = DisjointSet(g.flags)
    for a, b, _, _ in bd.edges:
        ds.union(a, b)
    for e in bridges:
        pts = {p for s in g.edges[e].strands for p in s}
        through = [fc for fc in g.faces() if pts & set(fc.points)]
        _check(len(through) == 3, f"bridge {e} carries {len(through)} faces")
        _check(all(not fc.closed for fc in through), f"closed face through bridge {e}")
        roots = {ds.find(g.points[p][0]) for fc in through for p in fc.terminals}
        _check(len(roots) == 1, f"faces through bridge {e} reach {len(roots)} boundary components")


def _d(a: st.CellCounts, b: st.CellCounts) -> dict[str, int]:
    return {n: getattr(a, n) - getattr(b, n) for n in st.CellCounts.FIELDS}


def _chi_inv(c: st.CellCounts) -> int:
    return 2 * c.C_bd - c.chi_boundary


def t_cut_contract_counts(g: st.StrandedGraph) -> None:
    special = False
    for e in g.edge_ids:
        kind = g.classify_edge(e)
        if kind.tag == "bridge":
            special = True
            cut, con = g.cut(e).cell_counts(), g.contract(e).cell_counts()
            d = _d(cut, con)
            want = {"k": 1, "V": 1, "E": 0, "f": 2, "F_int": 0, "B_int": 0, "C_bd": 1, "E_bd": 3, "F_bd": 3, "B_ext": 3}
            got = {n: d[n] for n in want}
            _check(got == want, f"bridge {e}: cut minus contract {got}")
        elif kind.tag == "self_loop" and kind.trivial and kind.p < 3:
            special = True
            cut, con = g.cut(e).cell_counts(), g.contract(e).cell_counts()
            d = _d(cut, con)
            got = (d["k"], d["V"], d["E"], d["f"], d["F_int"] + d["C_bd"], d["E_bd"], d["B_int"] + d["B_ext"])
            _check(got == (-2, -2, 0, 2, -2, 3, -(3 - 2 * kind.p)), f"trivial {kind.p}-inner loop {e}: {got}")
        else:
            continue
        c0 = g.cell_counts()
        vals = {_chi_inv(c0), _chi_inv(cut), _chi_inv(con)}
        _check(len(vals) == 1, f"2 C_bd - chi not invariant on {e}: {vals}")
    if not special:
        raise Skip


def t_trivial_loop_counts(g: st.StrandedGraph) -> None:
    loops = [(e, g.classify_edge(e)) for e in g.edge_ids]
    loops = [(e, k) for e, k in loops if k.tag == "self_loop" and k.trivial]
    if not loops:
        raise Skip
    c0 = g.cell_counts()
    for e, kind in loops:
        c1 = g.contract(e).cell_counts()
        d = _d(c1, c0)
        common = (d["k"], d["V"], d["E"], d["F_int"], d["C_bd"], d["f"], d["E_bd"], d["F_bd"])
        _check(common == (2, 2, -1, 0, 0, 0, 0, 0), f"{kind} {e}: {common}")
        if kind.p == 3:
            _check((d["B_int"], d["B_ext"]) == (-3, 0), f"3-inner {e}: bubbles {d['B_int']}, {d['B_ext']}")
        elif kind.p == 2:
            _check((d["B_int"], d["B_ext"]) == (-1, 0), f"2-inner {e}: bubbles {d['B_int']}, {d['B_ext']}")
        else:
            _check(d["B_int"] + d["B_ext"] == 3 - 2 * kind.p, f"{kind.p}-inner {e}: bubble shift")


def t_generator_valid(g: st.StrandedGraph) -> None:
    g.validate()
    if g.provenance is not None:
        again = replay(g.provenance["seed"], g.provenance["steps"])
        _check(again.key() == g.key(), "provenance does not replay")


# registry


@dataclass(frozen=True)
class Suite:
    name: str
    family: str
    check: Callable
    arity: str = "one"  # "one", "rng" or "pair"
    doc: str = ""
    report_only: bool = False


_COLORED = GeneratorSpec("colored_tensor", vertices=(2, 4), edges=(1, 6))
_WCOL = GeneratorSpec("w_colored", vertices=(2, 8), edges=(3, 14), max_edges=8)

SUITES: dict[str, Suite] = {
    s.name: s
    for s in [
        Suite("tutte_recursive", "simple", s_tutte_recursive, doc="flag-Tutte recursion equals its state sum"),
        Suite("tutte_identity", "simple", s_tutte_identity, doc="flag-Tutte from the classic Tutte polynomial"),
        Suite("tutte_t1", "simple", s_tutte_t1, doc="flag-Tutte at t=1 is the Tutte polynomial"),
        Suite("br_recurrence", "ribbon", r_recurrence, doc="contraction/cut rules of R and R'"),
        Suite("br_multiplicative", "ribbon", r_multiplicative, "pair", "R, R' over unions and dot products"),
        Suite("br_reductions", "ribbon", r_reductions, doc="R(z=s=1) = flag-Tutte, R'(t=1) = R(pinched)"),
        Suite("pinch_faces", "ribbon", r_pinch, doc="pinching closes one face per boundary component"),
        Suite(
            "ribbon_soft_contraction",
            "ribbon",
            r_soft_contraction,
            doc="soft stranded contraction of ribbon self-loops (asserted on trivial loops only)",
            report_only=True,
        ),
        Suite("t_frak_recurrence", "w_colored", t_recurrence, doc="contraction/cut relations of T and reductions"),
        Suite("statesum_vs_recursive", "w_colored", t_statesum_vs_recursive, doc="both evaluators agree"),
        Suite("disjoint_union", "w_colored", t_disjoint_union, "pair", "T is multiplicative"),
        Suite("representative_invariance", "w_colored", t_representative, "rng", "discs do not change T"),
        Suite("zeta_bounds", "w_colored", t_zeta, doc="zeta, zeta', zeta'' >= 0 on every spanning c-subgraph"),
        Suite("terminal_bound", "w_colored", t_terminal, "rng", "terminal-form exponent bound and product"),
        Suite("tutte_reduction", "w_colored", t_tutte_reduction, doc="T(z=s=w=q=1) is the flag-Tutte polynomial"),
        Suite("boundary_preservation", "colored_tensor", t_boundary, doc="contraction keeps the boundary"),
        Suite("full_contract_order", "w_colored", t_full_contract_order, "rng", "full contraction is order free"),
        Suite("bridge_faces", "w_colored", t_bridge_faces, doc="faces through a bridge are open, one component"),
        Suite("cut_contract_counts", "w_colored", t_cut_contract_counts, doc="cut versus contraction counts, 2 C_bd - chi invariance"),
        Suite("trivial_loop_counts", "w_colored", t_trivial_loop_counts, doc="trivial self-loop contraction counts"),
        Suite("generator_validity", "w_colored", t_generator_valid, doc="generated graphs validate and replay"),
    ]
}

DEFAULT_SPECS = {
    "simple": GeneratorSpec("simple", vertices=(1, 4), edges=(0, 6), flags=(0, 3)),
    "ribbon": GeneratorSpec("ribbon", vertices=(1, 3), edges=(0, 5), flags=(0, 3)),
    "colored_tensor": _COLORED,
    "w_colored": _WCOL,
}


@dataclass
class Failure:
    case: int
    seed: int
    message: str
    witness: dict
    witness_message: str
    shrink_steps: int


@dataclass
class SuiteReport:
    name: str
    cases: int
    passed: int = 0
    skipped: int = 0
    failures: list[Failure] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "suite": self.name,
            "cases": self.cases,
            "passed": self.passed,
            "skipped": self.skipped,
            "failures": [f.__dict__ for f in self.failures],
            "notes": self.notes,
        }
        if timing:
            out["seconds"] = round(self.seconds, 3)
        return out

    def to_text(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        line = f"{status} {self.name}: {self.passed} passed, {self.skipped} skipped, {len(self.failures)} failed"
        lines = [line]
        for f in self.failures:
            lines.append(f"  case {f.case} (seed {f.seed}): {f.message}")
            lines.append(f"    minimized after {f.shrink_steps} steps: {f.witness_message}")
            lines.append("    " + json.dumps(f.witness, sort_keys=True))
        for n in self.notes:
            lines.append(f"  note: {n}")
        return "\n".join(lines)


def case_seed(seed: int, suite: str, case: int) -> int:
    tag = sum(ord(c) * 31**i for i, c in enumerate(suite)) % (1 << 32)
    return int(np.random.SeedSequence([seed, tag, case]).generate_state(1, np.uint64)[0])


def _call(suite: Suite, g: Graph, aux: Any) -> str | None:
    if suite.arity == "pair":
        return suite.check(g, *aux) if isinstance(aux, tuple) else suite.check(g, aux)
    if suite.arity == "rng":
        return suite.check(g, aux)
    return suite.check(g)


def _fails(suite: Suite, g: Graph, aux_factory: Callable[[], Any]) -> str | None:
    try:
        _call(suite, g, aux_factory())
    except Skip:
        return None
    except Exception as exc:  # noqa: BLE001 - any exception is a failed property
        return f"{type(exc).__name__}: {exc}"
    return None


def _shrink_moves(g: Graph) -> list[Graph]:
    moves: list[Graph] = []
    if isinstance(g, st.StrandedGraph):
        moves += [g.cut(e) for e in g.edge_ids]
        if g.discs:
            moves.append(g.remove_discs())
    elif isinstance(g, rb.RibbonFlagGraph):
        moves += [g.delete_edge(e) for e in g.edge_ids]
        moves += [g.cut_edge(e) for e in g.edge_ids]
        if g.flags:
            moves.append(g.remove_flags())
    else:
        moves += [g.delete_edge(e) for e in g.edge_ids]
        if g.flags:
            moves.append(sp.SimpleFlagGraph(g.vertices, g.edges, g.flags[:-1]))
    return moves


def shrink(suite: Suite, g: Graph, aux_factory: Callable[[], Any], limit: int = 200) -> tuple[Graph, str, int]:
    """Greedy minimization by edge removal, disc removal and flag dropping."""
    msg = _fails(suite, g, aux_factory) or ""
    steps = 0
    improved = True
    while improved and steps < limit:
        improved = False
        for h in _shrink_moves(g):
            m = _fails(suite, h, aux_factory)
            if m is not None:
                g, msg, steps, improved = h, m, steps + 1, True
                break
    return g, msg, steps


def _run_case(suite: Suite, spec: GeneratorSpec, seed: int, case: int) -> tuple[str, Any]:
    cs = case_seed(seed, suite.name, case)
    g = generate(replace(spec, seed=cs))

    def aux_factory():
        rng = np.random.default_rng(cs ^ 0x5DEECE66D)
        if suite.arity == "pair":
            h = generate(replace(spec, seed=cs + 1))
            return (h, rng) if suite.family == "ribbon" else h
        return rng

    try:
        note = _call(suite, g, aux_factory())
    except Skip:
        return "skip", None
    except Exception as exc:  # noqa: BLE001
        msg = f"{type(exc).__name__}: {exc}"
        if suite.report_only:
            return "note", f"case {case}: {msg}"
        w, wmsg, steps = shrink(suite, g, aux_factory)
        return "fail", Failure(case, cs, msg, graph_to_dict(w), wmsg, steps)
    return ("note", f"case {case}: {note}") if note else ("pass", None)


def run_suite(
    name: str,
    spec: GeneratorSpec | None = None,
    cases: int = 100,
    seed: int = 0,
    workers: int | None = None,
) -> SuiteReport:
    """Run a registered suite over ``cases`` generated graphs; failures are shrunk."""
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    suite = SUITES[name]
    spec = spec or DEFAULT_SPECS[suite.family]
    if suite.family in ("colored_tensor", "w_colored") and spec.family not in ("colored_tensor", "w_colored"):
        raise ValueError(f"suite {name} needs stranded graphs, got family {spec.family}")
    if suite.family in ("simple", "ribbon") and spec.family != suite.family:
        raise ValueError(f"suite {name} needs {suite.family} graphs, got family {spec.family}")
    t0 = time.perf_counter()
    report = SuiteReport(name, cases)
    if workers is not None and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda i: _run_case(suite, spec, seed, i), range(cases)))
    else:
        results = [_run_case(suite, spec, seed, i) for i in range(cases)]
    for status, payload in results:
        if status == "pass":
            report.passed += 1
        elif status == "skip":
            report.skipped += 1
        elif status == "note":
            report.passed += 1
            report.notes.append(payload)
        else:
            report.failures.append(payload)
    report.seconds = time.perf_counter() - t0
    return report


def run_all(seed: int = 0, cases: int = 100, workers: int | None = None) -> list[SuiteReport]:
    return [run_suite(name, cases=cases, seed=seed, workers=workers) for name in SUITES]


__all__ = [
    "DEFAULT_SPECS",
    "FAMILIES",
    "Failure",
    "GeneratorSpec",
    "SUITES",
    "Skip",
    "Suite",
    "SuiteReport",
    "case_seed",
    "generate",
    "graph_to_dict",
    "run_all",
    "run_suite",
    "shrink",
]
