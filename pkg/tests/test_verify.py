import json

import pytest
from hypothesis import given

from strandpoly import verify
from strandpoly.graphio import ribbon_from_dict, stranded_from_dict
from strandpoly.stranded import Mode, melon
from strandpoly.verify import GeneratorSpec, Suite, generate, run_suite

from strategies import colored_graphs, ribbon_graphs, simple_graphs


def test_melon_is_the_only_two_vertex_four_edge_graph():
    g = generate(GeneratorSpec("colored_tensor", vertices=2, edges=4, seed=7))
    ends = {frozenset(g.edge_ends(e)) for e in g.edge_ids}
    assert len(g.vertices) == 2 and len(ends) == 1 and len(next(iter(ends))) == 2
    assert g.cell_counts() == melon().cell_counts()
    assert sorted(e.color for e in g.edges.values()) == [0, 1, 2, 3]


def test_odd_vertex_count_rejected():
    with pytest.raises(ValueError, match="even vertex count"):
        generate(GeneratorSpec("colored_tensor", vertices=3, edges=2, seed=0))


def test_too_many_edges_rejected():
    with pytest.raises(ValueError):
        generate(GeneratorSpec("colored_tensor", vertices=2, edges=5, seed=0))


@pytest.mark.parametrize("family", verify.FAMILIES)
def test_generation_deterministic(family):
    spec = verify.DEFAULT_SPECS[family]
    for seed in range(5):
        a = generate(GeneratorSpec(**{**spec.__dict__, "seed": seed}))
        b = generate(GeneratorSpec(**{**spec.__dict__, "seed": seed}))
        assert json.dumps(verify.graph_to_dict(a), sort_keys=True) == json.dumps(verify.graph_to_dict(b), sort_keys=True)


def test_wcolored_respects_edge_cap():
    for seed in range(30):
        g = generate(GeneratorSpec("w_colored", vertices=(2, 8), edges=(3, 14), max_edges=5, seed=seed))
        assert 1 <= len(g.edges) <= 5
        assert g.mode is Mode.W_COLORED or g.mode is Mode.COLORED_TENSOR
        assert g.provenance is not None


@given(colored_graphs)
def test_colored_generator_valid(g):
    g.validate()
    assert g.mode is Mode.COLORED_TENSOR


@given(simple_graphs)
def test_simple_generator_valid(g):
    assert all(u in g.vertices and v in g.vertices for _, u, v in g.edges)


@given(ribbon_graphs)
def test_ribbon_generator_valid(g):
    assert ribbon_from_dict(verify.graph_to_dict(g)["graph"]) == g


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("no_such_suite")


def test_family_mismatch():
    with pytest.raises(ValueError):
        run_suite("zeta_bounds", GeneratorSpec("simple"))


def _toy_check(g):
    if len(g.edges) >= 2:
        raise AssertionError(f"{len(g.edges)} edges")


def test_shrinking_soundness(monkeypatch):
    suite = Suite("toy", "w_colored", _toy_check, doc="fails from two edges on")
    monkeypatch.setitem(verify.SUITES, "toy", suite)
    report = run_suite("toy", cases=15, seed=3)
    assert report.failures
    for f in report.failures:
        w = stranded_from_dict(f.witness["graph"])
        assert len(w.edges) == 2
        assert verify._fails(suite, w, lambda: None) == f.witness_message
        assert f.witness_message == "AssertionError: 2 edges"


def test_shrinking_ribbon(monkeypatch):
    suite = Suite("toy_ribbon", "ribbon", _toy_check)
    monkeypatch.setitem(verify.SUITES, "toy_ribbon", suite)
    report = run_suite("toy_ribbon", cases=20, seed=1)
    for f in report.failures:
        w = ribbon_from_dict(f.witness["graph"])
        assert len(w.edges) == 2 and not w.flags


def test_report_is_deterministic():
    a = run_suite("zeta_bounds", cases=10, seed=5)
    b = run_suite("zeta_bounds", cases=10, seed=5, workers=3)
    assert json.dumps(a.to_json(), sort_keys=True) == json.dumps(b.to_json(), sort_keys=True)
    assert a.ok and a.passed + a.skipped == 10
    assert a.to_text().startswith("PASS zeta_bounds")
    assert "seconds" in a.to_json(timing=True)


def test_case_seeds_differ():
    seeds = {verify.case_seed(0, "zeta_bounds", i) for i in range(100)}
    assert len(seeds) == 100
    assert verify.case_seed(0, "a", 1) != verify.case_seed(0, "b", 1)


@pytest.mark.parametrize("name", sorted(verify.SUITES))
def test_every_suite_passes_briefly(name):
    report = run_suite(name, cases=8, seed=11)
    assert report.ok, report.to_text()
