import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strandpoly import ribbon as rb
from strandpoly import verify
from strandpoly.poly import Basis, Polynomial, parse, to_basis
from strandpoly.ribbon import RibbonFlagGraph
from strandpoly.simple import EdgeClass, tutte_classic, tutte_flags_statesum

from strategies import applies, ribbon_graphs

X, Y, z, s, t = (Polynomial.var(n) for n in ("X", "Y", "z", "s", "t"))

BARE = RibbonFlagGraph.from_rotation({0: []})
FLAG = RibbonFlagGraph.from_rotation({0: ["f"]})
LOOP = RibbonFlagGraph.from_rotation({0: ["e", "e"]})
TWISTED = RibbonFlagGraph.from_rotation({0: ["e", "e"]}, twisted=["e"])
BRIDGE = RibbonFlagGraph.from_rotation({0: ["e"], 1: ["e"]})


def flip_vertex(g: RibbonFlagGraph, v) -> RibbonFlagGraph:
    """Reverse the cyclic order at ``v`` and toggle the twist of edges with one end there."""
    slots = set(dict(g.rotation)[v])
    rot = tuple((w, tuple(reversed(sl)) if w == v else sl) for w, sl in g.rotation)
    edges = tuple((e, a, b, tw ^ ((a in slots) != (b in slots))) for e, a, b, tw in g.edges)
    return RibbonFlagGraph(rot, edges, g.flags, g.pinched)


def test_faces_examples():
    assert (rb.faces(BARE).n_closed, rb.faces(BARE).n_open) == (1, 0)
    assert (rb.faces(LOOP).n_closed, rb.faces(LOOP).n_open) == (2, 0)
    assert (rb.faces(TWISTED).n_closed, rb.faces(TWISTED).n_open) == (1, 0)
    fs = rb.faces(FLAG)
    assert (fs.n_closed, fs.n_open) == (0, 1)
    (walk,) = fs.open
    slot = FLAG.flags[0][1]
    assert walk[0][0] == slot and walk[-1][0] == slot


def test_pinch():
    closed = rb.pinch(LOOP)
    assert closed == LOOP
    pinched = rb.pinch(FLAG)
    assert pinched.is_closed()
    # the single open face closes into one face; see the decisions ledger
    assert rb.faces(pinched).n_closed == 1


def test_boundary_graph_examples():
    assert rb.cell_counts(LOOP).C_bd == 0
    bd = rb.boundary_graph(FLAG)
    assert len(bd.vertices) == 1 and len(bd.edges) == 1
    assert rb.cell_counts(FLAG).C_bd == 1
    cut = LOOP.cut_edge("e")
    bd = rb.boundary_graph(cut)
    assert len(bd.vertices) == 2 and len(bd.edges) == 2
    assert rb.cell_counts(cut).C_bd == 1


def test_edge_operation_examples():
    c = BRIDGE.contract_edge("e")
    assert len(c.vertices) == 1 and not c.edges
    untw = LOOP.contract_edge("e")
    assert len(untw.vertices) == 2 and all(not sl for _, sl in untw.rotation)
    tw = TWISTED.contract_edge("e")
    assert len(tw.vertices) == 1
    cut = LOOP.cut_edge("e")
    assert len(cut.flags) == 2 and len(cut.vertices) == 1


def test_nontrivial_loop_contraction_refused():
    g = RibbonFlagGraph.from_rotation({0: ["a", "b", "a", "b"]})
    assert not g.is_trivial_loop("a")
    with pytest.raises(ValueError):
        g.contract_edge("a")


def test_invalid_rotation():
    with pytest.raises(ValueError):
        RibbonFlagGraph(((0, (0, 0)),), ((0, 0, 0, False),))
    with pytest.raises(ValueError):
        RibbonFlagGraph(((0, (0,)),), (), ((0, 0),), frozenset({5}))


def test_br_classic_examples():
    assert rb.br_classic(BARE) == Polynomial.const(1)
    assert rb.br_classic(LOOP) == Y + 1
    assert to_basis(rb.br_classic(LOOP), Basis.SHIFTED, Basis.STANDARD) == Polynomial.var("y")
    assert rb.br_classic(TWISTED) == 1 + Y * z
    with pytest.raises(ValueError):
        rb.br_classic(FLAG)


def test_br_flags_examples():
    assert rb.br_flags(FLAG) == z * s * t
    assert rb.br_flags(LOOP) == Y + z * s * t**2
    assert rb.br_flags_prime(FLAG) == t


def _plane_ribbon(h: nx.Graph) -> RibbonFlagGraph:
    ok, emb = nx.check_planarity(h)
    assert ok
    rot = {v: [frozenset((v, w)) for w in emb.neighbors_cw_order(v)] for v in emb.nodes}
    return RibbonFlagGraph.from_rotation(rot)


@settings(max_examples=25)
@given(st.integers(0, 10**6))
def test_plane_graphs_have_no_genus(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 6))
    m = int(rng.integers(1, min(7, n * (n - 1) // 2) + 1))
    h = nx.gnm_random_graph(n, m, seed=int(seed))
    if not nx.check_planarity(h)[0]:
        return
    g = _plane_ribbon(h)
    R = rb.br_classic(g)
    assert "z" not in R.variables()
    assert to_basis(R, Basis.SHIFTED, Basis.STANDARD) == tutte_classic(g.to_simple())


def test_triangle():
    g = _plane_ribbon(nx.cycle_graph(3))
    assert to_basis(rb.br_classic(g), Basis.SHIFTED, Basis.STANDARD) == parse("x^2 + x + y")


@given(ribbon_graphs)
def test_recurrences(g):
    applies(verify.r_recurrence, g)


@given(ribbon_graphs)
def test_reductions(g):
    applies(verify.r_reductions, g)


@given(ribbon_graphs)
def test_pinch_faces(g):
    applies(verify.r_pinch, g)


@given(ribbon_graphs, ribbon_graphs, st.integers(0, 2**32 - 1))
def test_multiplicative(g, h, seed):
    applies(verify.r_multiplicative, g, h, np.random.default_rng(seed))


@given(ribbon_graphs, st.data())
def test_vertex_flip_invariance(g, data):
    v = data.draw(st.sampled_from(g.vertices))
    f = flip_vertex(g, v)
    assert rb.br_flags(f) == rb.br_flags(g)


@given(ribbon_graphs)
def test_reduces_to_flag_tutte(g):
    assert rb.br_flags(g).substitute({"z": 1, "s": 1}) == tutte_flags_statesum(g.to_simple())


@given(ribbon_graphs)
def test_soft_contraction_on_trivial_loops(g):
    if not verify._rank2_ready(g):
        return
    for e in g.edge_ids:
        if g.classify_edge(e) is EdgeClass.SELF_LOOP and g.is_trivial_loop(e):
            assert verify.soft_contraction_agrees(g, e) is True


def test_soft_contraction_on_small_loops():
    g = RibbonFlagGraph.from_rotation({0: ["e", "e", "f"]})
    g = _int_ids(g)
    assert verify.soft_contraction_agrees(g, 0) is True
    tw = _int_ids(RibbonFlagGraph.from_rotation({0: ["e", "e", "f"]}, twisted=["e"]))
    assert verify.soft_contraction_agrees(tw, 0) is True


def _int_ids(g: RibbonFlagGraph) -> RibbonFlagGraph:
    emap = {e: i for i, e in enumerate(g.edge_ids)}
    return RibbonFlagGraph(g.rotation, tuple((emap[e], a, b, tw) for e, a, b, tw in g.edges), g.flags)
