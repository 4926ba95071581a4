"""The seven-variable invariant of rank-3 w-colored graphs and its reductions.

For a spanning c-subgraph ``A`` the state sum weight is

    X^(k(A) - k(G)) Y^(n(A)) z^(5 k(A) + zeta(A)) s^C_bd w^F_bd q^E_bd t^f

with ``zeta = 3 (E - V) + 2 (B_int + B_ext - F_int)``.
"""

from __future__ import annotations

import enum
from collections.abc import Mapping

import numpy as np

from .poly import Polynomial
from .stranded import CellCounts, InvariantViolation, StrandedGraph, disjoint_union

_X, _Y = Polynomial.var("X"), Polynomial.var("Y")
_z, _s, _w, _q, _t = (Polynomial.var(n) for n in "zswqt")

K, V, E, F_INT, F_EXT, B_INT, B_EXT, C_BD, E_BD, F_BD, FL = range(11)


class InvariantKind(str, enum.Enum):
    T_FRAK = "T_frak"
    T_PRIME = "T_prime"
    T_SECOND = "T_second"
    T_TRIPLE = "T_triple"
    MULTIVARIATE = "multivariate"
    TUTTE_REDUCTION = "tutte_reduction"


REDUCTIONS: dict[InvariantKind, dict[str, Polynomial]] = {
    InvariantKind.T_PRIME: {"s": _z**-2},
    InvariantKind.T_SECOND: {"s": _z**-2 * _s**2, "w": _s**-1, "q": _s, "t": _s**-1},
    InvariantKind.T_TRIPLE: {"s": 1, "w": _z**-1, "q": _z, "t": _z**-1},
    InvariantKind.TUTTE_REDUCTION: {"z": 1, "s": 1, "w": 1, "q": 1},
}


def _from_rows(rows: np.ndarray, names: tuple[str, ...]) -> Polynomial:
    if rows.shape[0] == 0:
        return Polynomial()
    uniq, counts = np.unique(rows, axis=0, return_counts=True)
    return Polynomial({tuple(zip(names, map(int, r))): int(c) for r, c in zip(uniq, counts)})


def check_bounds(counts: np.ndarray, n_discs: int = 0) -> None:
    """Raise when zeta, zeta' or zeta'' of the disc-free representative is negative.

    Every trivial disc lowers zeta by 5 (one vertex, one closed face), so the
    bounds only hold once discs are removed.
    """
    zeta = 3 * (counts[:, E] - counts[:, V]) + 2 * (counts[:, B_INT] + counts[:, B_EXT] - counts[:, F_INT])
    zeta = zeta + 5 * n_discs
    for name, arr in (("zeta", zeta), ("zeta'", zeta - 2 * counts[:, C_BD]), ("zeta''", zeta - 3 * counts[:, C_BD])):
        bad = np.nonzero(arr < 0)[0]
        if bad.size:
            row = counts[bad[0]]
            raise InvariantViolation(f"{name} < 0 on subset {int(bad[0])}: {CellCounts(*map(int, row))}")


def t_frak_statesum(g: StrandedGraph, workers: int | None = None, backend: str | None = None) -> Polynomial:
    """Reference state sum over all ``2^|E|`` spanning c-subgraphs."""
    c = g.subset_counts(workers=workers, backend=backend)
    check_bounds(c, len(g.discs))
    k_full = int(c[-1, K])
    zeta = 3 * (c[:, E] - c[:, V]) + 2 * (c[:, B_INT] + c[:, B_EXT] - c[:, F_INT])
    rows = np.stack(
        [
            c[:, K] - k_full,
            c[:, E] - c[:, V] + c[:, K],
            5 * c[:, K] + zeta,
            c[:, C_BD],
            c[:, F_BD],
            c[:, E_BD],
            c[:, FL],
        ],
        axis=1,
    )
    return _from_rows(rows, ("X", "Y", "z", "s", "w", "q", "t"))


def reduce(p: Polynomial, kind: InvariantKind | str) -> Polynomial:
    """Apply one of the standard substitutions; the result must be a polynomial."""
    kind = InvariantKind(kind)
    if kind in (InvariantKind.T_FRAK, InvariantKind.MULTIVARIATE):
        return p
    out = p.substitute(REDUCTIONS[kind])
    if not out.is_polynomial():
        raise InvariantViolation(f"{kind.value} left negative exponents")
    return out


def t_reductions(g: StrandedGraph, kind: InvariantKind | str) -> Polynomial:
    kind = InvariantKind(kind)
    if kind is InvariantKind.MULTIVARIATE:
        return t_multivariate(g)
    return reduce(t_frak_statesum(g), kind)


def edge_variable(e: int) -> str:
    return f"beta{e}"


def t_multivariate(g: StrandedGraph, edge_vars: Mapping[int, str] | None = None) -> Polynomial:
    """Multivariate form in x, beta_e, z1, z2, z3, s, w, q, t (x is not shifted)."""
    names = {e: (edge_vars or {}).get(e, edge_variable(e)) for e in g.edge_ids}
    c = g.subset_counts()
    check_bounds(c, len(g.discs))
    ids = g.edge_ids
    acc: dict = {}
    for mask in range(c.shape[0]):
        row = c[mask]
        mono = [("x", int(row[V] - row[K]))]
        mono += [(names[e], 1) for j, e in enumerate(ids) if mask >> j & 1]
        mono += [
            ("z1", int(row[F_INT])),
            ("z2", int(row[B_INT])),
            ("z3", int(row[B_EXT])),
            ("s", int(row[C_BD])),
            ("w", int(row[F_BD])),
            ("q", int(row[E_BD])),
            ("t", int(row[FL])),
        ]
        key = tuple(mono)
        acc[key] = acc.get(key, 0) + 1
    return Polynomial(acc)


def gurau_form(g: StrandedGraph) -> Polynomial:
    """Multivariate form with ``z3 -> 1``, written in the colored-graph bubble dictionary.

    Faces are 2-bubbles, closed bubbles 3-bubbles; the boundary contributes
    its 3-, 2-, 1- and 0-bubbles (components, faces, edges, vertices).
    """
    return t_multivariate(g).substitute({"z3": 1})


def disjoint_union_invariant(g1: StrandedGraph, g2: StrandedGraph) -> Polynomial:
    return t_frak_statesum(disjoint_union(g1, g2))


def bridge_factor() -> Polynomial:
    return _X * _z**8 * _s * (_w * _q) ** 3 * _t**2 + 1


def loop_factor(p: int) -> Polynomial:
    """Weight of the contracted term of a trivial p-inner self-loop."""
    return _Y * _z ** (4 * p - 7)


def three_inner_factor() -> Polynomial:
    return _z**5 * (_z**3 * _s * (_w * _q) ** 3 * _t**2 + _Y)


class RecursionStats:
    def __init__(self) -> None:
        self.regular = 0
        self.bridge = 0
        self.loops = {p: 0 for p in range(4)}
        self.statesum = 0
        self.memo_hits = 0


def t_frak_recursive(
    g: StrandedGraph,
    memo: dict | None = None,
    stats: RecursionStats | None = None,
) -> Polynomial:
    """Cut/contraction evaluation.

    Regular edges are split first (lowest id), then bridges and trivial
    self-loops use their closed factors. Graphs left with only non-trivial
    self-loops, or without edges, are summed directly.
    """
    memo = {} if memo is None else memo
    stats = RecursionStats() if stats is None else stats
    return _rec(g, memo, stats)


def _rec(g: StrandedGraph, memo: dict, stats: RecursionStats) -> Polynomial:
    key = g.key()
    if key in memo:
        stats.memo_hits += 1
        return memo[key]
    kinds = {e: g.classify_edge(e) for e in g.edge_ids}
    regular = [e for e, k in kinds.items() if k.tag == "regular"]
    bridges = [e for e, k in kinds.items() if k.tag == "bridge"]
    loops = [e for e, k in kinds.items() if k.tag == "self_loop" and k.trivial]
    if regular:
        e = regular[0]
        stats.regular += 1
        value = _rec(g.cut(e), memo, stats) + _rec(g.contract(e), memo, stats)
    elif bridges:
        e = bridges[0]
        stats.bridge += 1
        value = bridge_factor() * _rec(g.contract(e), memo, stats)
    elif loops:
        e = loops[0]
        p = kinds[e].p
        stats.loops[p] += 1
        if p == 3:
            value = three_inner_factor() * _rec(g.contract(e), memo, stats)
        else:
            value = _rec(g.cut(e), memo, stats) + loop_factor(p) * _rec(g.contract(e), memo, stats)
    else:
        stats.statesum += 1
        value = t_frak_statesum(g)
    memo[key] = value
    return value


def vertex_graph_value(g: StrandedGraph) -> Polynomial:
    """Closed form for an edgeless representative."""
    if g.edges:
        raise ValueError("graph has edges")
    c = g.cell_counts()
    n_discs = len(g.discs)
    return Polynomial.monomial(
        z=2 * (c.k - n_discs + c.B_ext), s=c.k - n_discs, w=c.F_bd, q=c.E_bd, t=c.f
    )


def terminal_run(g: StrandedGraph) -> dict:
    """Contract every edge, bridges and trivial self-loops only when possible.

    Returns the sequence of steps, the final vertex graph and whether the
    run met only bridges and trivial self-loops (a terminal form).
    """
    steps = []
    terminal = True
    cur = g
    while cur.edges:
        kinds = {e: cur.classify_edge(e) for e in cur.edge_ids}
        pick = None
        for e, k in kinds.items():
            if k.tag == "bridge" or (k.tag == "self_loop" and k.trivial):
                pick = e
                break
        if pick is None:
            terminal = False
            pick = next(iter(kinds))
        steps.append((pick, kinds[pick]))
        cur = cur.contract(pick)
    return {"steps": steps, "final": cur, "terminal": terminal}


def terminal_bound(run: dict) -> int:
    """``5 n3 + n2 - 3 n1 - 7 n0 + 2 B_ext(G0)`` for a terminal run."""
    n = {p: 0 for p in range(4)}
    for _, kind in run["steps"]:
        if kind.tag == "self_loop" and kind.trivial:
            n[kind.p] += 1
    b_ext = run["final"].cell_counts().B_ext
    return 5 * n[3] + n[2] - 3 * n[1] - 7 * n[0] + 2 * b_ext


def terminal_product_second(run: dict) -> Polynomial:
    """Product of closed factors of a terminal run under the T'' reduction."""
    if not run["terminal"]:
        raise ValueError("run is not a terminal form")
    out = Polynomial.const(1)
    for _, kind in run["steps"]:
        if kind.tag == "bridge":
            out = out * (_X * _z**6 + 1)
        else:
            out = out * _z ** (4 * kind.p - 6) * (1 + _Y * _z**-1)
    return out * reduce(vertex_graph_value(run["final"]), InvariantKind.T_SECOND)


__all__ = [
    "InvariantKind",
    "RecursionStats",
    "bridge_factor",
    "check_bounds",
    "disjoint_union_invariant",
    "edge_variable",
    "gurau_form",
    "loop_factor",
    "reduce",
    "t_frak_recursive",
    "t_frak_statesum",
    "t_multivariate",
    "t_reductions",
    "terminal_bound",
    "terminal_product_second",
    "terminal_run",
    "three_inner_factor",
    "vertex_graph_value",
]
