import os

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from strandpoly import invariant as inv
from strandpoly import verify
from strandpoly.invariant import InvariantKind
from strandpoly.poly import Polynomial, parse
from strandpoly.simple import tutte_flags_statesum
from strandpoly.stranded import InvariantViolation, build_colored_tensor, disjoint_union

import golden
from strategies import applies, wcolored_graphs


def multi_to_t(multi: Polynomial, n_vertices: int, k_full: int) -> Polynomial:
    """Rewrite the multivariate form in the seven variables using the cell-count definitions."""
    acc = Polynomial()
    for mono, c in multi.terms():
        e = dict(mono)
        k = n_vertices - e.get("x", 0)
        E = sum(v for name, v in e.items() if name.startswith("beta"))
        zeta = 3 * (E - n_vertices) + 2 * (e.get("z2", 0) + e.get("z3", 0) - e.get("z1", 0))
        acc = acc + c * Polynomial.monomial(
            X=k - k_full,
            Y=E - n_vertices + k,
            z=5 * k + zeta,
            s=e.get("s", 0),
            w=e.get("w", 0),
            q=e.get("q", 0),
            t=e.get("t", 0),
        )
    return acc


def test_melon_multivariate(melon_graph):
    assert inv.t_multivariate(melon_graph) == golden.MELON_MULTI
    assert inv.t_multivariate(melon_graph.cut(0)) == golden.MELON_CUT_MULTI
    assert inv.t_multivariate(melon_graph.contract(0)) == golden.MELON_CONTRACT_MULTI


def test_melon_t_from_multivariate(melon_graph):
    assert multi_to_t(golden.MELON_MULTI, 2, 1) == golden.MELON_T
    assert inv.t_frak_statesum(melon_graph) == golden.MELON_T
    assert inv.t_frak_recursive(melon_graph) == golden.MELON_T


def test_multivariate_recurrence(melon_graph):
    # contraction merges two vertices, so its terms carry one more power of x
    lhs = golden.MELON_MULTI
    rhs = golden.MELON_CUT_MULTI + parse("beta0 x") * golden.MELON_CONTRACT_MULTI
    assert lhs == rhs


def test_planar_golden(planar_graph):
    assert inv.t_frak_statesum(planar_graph) == golden.PLANAR_T
    assert inv.t_frak_recursive(planar_graph) == golden.PLANAR_T


def test_planar_intermediates(planar_graph):
    g = planar_graph
    a = g.cut(2)
    assert a.classify_edge(0).tag == "bridge"
    b = a.contract(0)
    kind = b.classify_edge(1)
    assert (kind.tag, kind.p, kind.trivial) == ("self_loop", 2, True)
    assert inv.t_frak_statesum(b.cut(1)) == golden.PLANAR_CUT2_CON0_CUT1
    assert inv.t_frak_statesum(b.contract(1)) == golden.PLANAR_CUT2_CON0_CON1
    c = g.contract(2)
    assert inv.t_frak_statesum(c.cut(1)) == golden.PLANAR_CON2_CUT1
    assert inv.t_frak_statesum(c.contract(1)) == golden.PLANAR_CON2_CON1
    # the two-step chain through the closed factors
    via_bridge = inv.bridge_factor() * (
        golden.PLANAR_CUT2_CON0_CUT1 + inv.loop_factor(2) * golden.PLANAR_CUT2_CON0_CON1
    )
    via_loop = golden.PLANAR_CON2_CUT1 + inv.loop_factor(2) * golden.PLANAR_CON2_CON1
    assert inv.t_frak_statesum(a) == via_bridge
    assert inv.t_frak_statesum(c) == via_loop
    assert golden.PLANAR_T == via_bridge + via_loop


def test_vertex_graph_value():
    g = build_colored_tensor([1], [])
    assert inv.vertex_graph_value(g) == parse("z^10 s w^4 q^6 t^4")
    assert inv.vertex_graph_value(g) == inv.t_frak_statesum(g)
    with pytest.raises(ValueError):
        inv.vertex_graph_value(build_colored_tensor([1, -1], [(0, 0, 1)]))


def test_reductions_of_melon(melon_graph):
    T = golden.MELON_T
    assert inv.reduce(T, "T_prime") == T.substitute({"s": parse("z^-2")})
    assert inv.reduce(T, "T_triple") == T.substitute({"s": 1, "w": parse("z^-1"), "q": parse("z"), "t": parse("z^-1")})
    flag_tutte = parse("X t^8 + 4 t^6 + 6 Y t^4 + 4 Y^2 t^2 + Y^3")
    assert inv.reduce(T, "tutte_reduction") == flag_tutte
    assert flag_tutte == tutte_flags_statesum(melon_graph.collapsed())
    assert inv.reduce(T, "T_frak") == T
    for kind in InvariantKind:
        assert inv.t_reductions(melon_graph, kind) == (
            golden.MELON_MULTI if kind is InvariantKind.MULTIVARIATE else inv.reduce(T, kind)
        )


def test_negative_exponent_rejected():
    with pytest.raises(InvariantViolation):
        inv.reduce(parse("s"), "T_prime")


def test_gurau_form(melon_graph):
    assert inv.gurau_form(melon_graph) == golden.MELON_MULTI.substitute({"z3": 1})


def test_union_of_melons(melon_graph):
    assert inv.disjoint_union_invariant(melon_graph, melon_graph) == golden.MELON_T**2


def test_order_independence(planar_graph):
    flipped = planar_graph.relabel_edges({0: 2, 2: 0})
    assert inv.t_frak_recursive(flipped) == golden.PLANAR_T


def test_recursion_stats(planar_graph):
    stats = inv.RecursionStats()
    inv.t_frak_recursive(planar_graph, stats=stats)
    assert stats.regular >= 1 and stats.bridge + sum(stats.loops.values()) >= 1


def test_discs_do_not_change_t(melon_graph):
    g = melon_graph.add_discs([(0, 1), (2, 3)])
    assert inv.t_frak_statesum(g) == golden.MELON_T


def test_terminal_product(melon_graph):
    run = inv.terminal_run(melon_graph.contract(0).contract(1))
    assert run["terminal"]
    assert inv.terminal_bound(run) >= 0
    g = melon_graph.contract(0).contract(1)
    assert inv.terminal_product_second(run) == inv.reduce(inv.t_frak_statesum(g), "T_second")


def test_backends_agree(planar_graph, melon_graph):
    for g in (planar_graph, melon_graph, disjoint_union(melon_graph, planar_graph)):
        assert inv.t_frak_statesum(g, backend="numpy") == inv.t_frak_statesum(g, backend="numba")


def test_workers_deterministic(planar_graph):
    g = disjoint_union(planar_graph, planar_graph)
    base = inv.t_frak_statesum(g, workers=1)
    for w in (2, 3):
        assert inv.t_frak_statesum(g, workers=w) == base


def test_backend_env(monkeypatch, melon_graph):
    monkeypatch.setenv("STRANDPOLY_BACKEND", "numpy")
    assert inv.t_frak_statesum(melon_graph) == golden.MELON_T
    monkeypatch.setenv("STRANDPOLY_BACKEND", "fortran")
    with pytest.raises(ValueError):
        inv.t_frak_statesum(melon_graph)


@given(wcolored_graphs)
def test_statesum_vs_recursive(g):
    applies(verify.t_statesum_vs_recursive, g)


@given(wcolored_graphs)
def test_recurrence(g):
    applies(verify.t_recurrence, g)


@given(wcolored_graphs, wcolored_graphs)
def test_multiplicative(g, h):
    applies(verify.t_disjoint_union, g, h)


@given(wcolored_graphs)
def test_tutte_reduction(g):
    applies(verify.t_tutte_reduction, g)


@given(wcolored_graphs, st.integers(0, 2**32 - 1))
def test_terminal_bound(g, seed):
    applies(verify.t_terminal, g, np.random.default_rng(seed))


@given(wcolored_graphs)
def test_multivariate_specialises(g):
    multi = inv.t_multivariate(g.remove_discs())
    V = len(g.remove_discs().vertices)
    k_full = g.remove_discs().n_components()
    assert multi_to_t(multi, V, k_full) == inv.t_frak_statesum(g)
