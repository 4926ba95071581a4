import networkx as nx
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from strandpoly import _kernels as K


def _active(mask, edge, mode):
    if mode == K.ALWAYS:
        return True
    bit = (mask >> edge) & 1
    return bit == 1 if mode == K.PRESENT else bit == 0


def oracle(mask, n, links, terminals):
    h = nx.Graph()
    h.add_nodes_from(range(n))
    h.add_edges_from((a, b) for a, b, e, m in links if _active(mask, e, m))
    comp = {v: i for i, c in enumerate(nx.connected_components(h)) for v in c}
    opened = {comp[v] for v, e, m in terminals if _active(mask, e, m)}
    return nx.number_connected_components(h), len(opened)


@st.composite
def systems(draw):
    n = draw(st.integers(1, 9))
    n_edges = draw(st.integers(0, 5))
    node = st.integers(0, n - 1)
    cond = st.tuples(st.integers(0, max(n_edges - 1, 0)), st.sampled_from([K.ALWAYS, K.PRESENT, K.ABSENT]))
    links = draw(st.lists(st.tuples(node, node, cond), max_size=12))
    terms = draw(st.lists(st.tuples(node, cond), max_size=5))
    links = [(a, b, e, m) for a, b, (e, m) in links]
    terms = [(v, e, m) for v, (e, m) in terms]
    return n, n_edges, links, terms


@given(systems(), st.sampled_from(["numba", "numpy"]), st.integers(1, 3))
def test_counts_match_networkx(system, which, workers):
    n, n_edges, links, terms = system
    masks = np.arange(1 << n_edges, dtype=np.int64)
    sys = K.LinkSystem.build(n, links, terms)
    total, opened = K.count_components(masks, sys, workers=workers, which=which)
    for i, m in enumerate(masks.tolist()):
        assert (total[i], opened[i]) == oracle(m, n, links, terms)


def test_numpy_chunks_agree():
    rng = np.random.default_rng(0)
    links = [(int(a), int(b), int(e), int(m)) for a, b, e, m in rng.integers(0, [20, 20, 11, 3], size=(40, 4))]
    sys = K.LinkSystem.build(20, links, [(3, 0, K.PRESENT), (7, 4, K.ABSENT)])
    masks = np.arange(1 << 11, dtype=np.int64)
    ref = K.count_components(masks, sys, workers=1, which="numba")
    for w in (1, 2, 4):
        got = K.count_components(masks, sys, workers=w, which="numpy")
        assert np.array_equal(got[0], ref[0]) and np.array_equal(got[1], ref[1])


def test_backend_selection(monkeypatch):
    monkeypatch.setenv("STRANDPOLY_BACKEND", "NumPy")
    assert K.backend() == "numpy"
    monkeypatch.setenv("STRANDPOLY_BACKEND", "numba")
    assert K.backend() == ("numba" if K.HAVE_NUMBA else "numpy")
    monkeypatch.setenv("STRANDPOLY_BACKEND", "cuda")
    with pytest.raises(ValueError):
        K.backend()


def test_thread_cap(monkeypatch):
    monkeypatch.setenv("STRANDPOLY_THREADS", "1")
    assert K.default_workers() == 1
    monkeypatch.delenv("STRANDPOLY_THREADS")
    assert K.default_workers() >= 1
