import json

import pytest
from hypothesis import given

from strandpoly.graphio import (
    GraphFile,
    GraphFileError,
    dot_boundary,
    dot_collapsed,
    dumps,
    load_graph_file,
    parse_graph_file,
    replay,
)
from strandpoly.simple import SimpleFlagGraph
from strandpoly.stranded import Mode, build_colored_tensor, melon
from strandpoly.verify import graph_to_dict

from strategies import colored_graphs, ribbon_graphs, simple_graphs, wcolored_graphs


def _doc(g, family=None):
    d = graph_to_dict(g)
    d["version"] = 1
    if family:
        d["family"] = family
    return json.loads(json.dumps(d))


def test_compact_and_full_melon_agree(data_dir):
    compact = load_graph_file(data_dir / "melon.json")
    full = load_graph_file(data_dir / "melon_full.json")
    assert compact.fmt == "compact" and full.fmt == "full"
    assert compact.graph == full.graph == melon()
    assert compact.graph.mode is Mode.COLORED_TENSOR


def test_planar_file_replays(data_dir, planar_graph):
    gf = load_graph_file(data_dir / "planar.json")
    assert gf.family == "w_colored"
    assert replay(gf.provenance["seed"], gf.provenance["steps"]).key() == planar_graph.key()
    assert gf.extra["edge_names"] == {"e0": 0, "e1": 1, "e2": 2}


def test_edgeless_file(data_dir):
    gf = load_graph_file(data_dir / "edgeless.json")
    assert isinstance(gf.graph, SimpleFlagGraph)
    assert len(gf.graph.flags) == 3 and not gf.graph.edges


@given(simple_graphs)
def test_simple_round_trip(g):
    assert parse_graph_file(_doc(g)).graph == g


@given(ribbon_graphs)
def test_ribbon_round_trip(g):
    assert parse_graph_file(_doc(g)).graph == g


@given(colored_graphs)
def test_colored_round_trip(g):
    back = parse_graph_file(_doc(g, "colored_tensor")).graph
    assert back == g and back.discs == g.discs


@given(wcolored_graphs)
def test_wcolored_round_trip(g):
    gf = parse_graph_file(_doc(g))
    assert gf.graph.key(strict=True) == g.key(strict=True)
    again = GraphFile(gf.family, gf.graph, gf.provenance).to_dict()
    assert dumps(again) == dumps(parse_graph_file(again).to_dict())


def test_bad_json_location(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{\n  "version": 1,,\n}')
    with pytest.raises(GraphFileError) as exc:
        load_graph_file(p)
    assert f"{p}:2:" in str(exc.value)


def test_schema_error_points_at_field():
    with pytest.raises(GraphFileError) as exc:
        parse_graph_file({"version": 1, "family": "simple", "graph": {"vertices": [0], "edges": [{"id": 0}]}})
    assert exc.value.location == "$['graph']['edges'][0]"


def test_unknown_family():
    with pytest.raises(GraphFileError):
        parse_graph_file({"version": 1, "family": "hypergraph", "graph": {}})


def test_wcolored_needs_provenance(data_dir):
    data = json.loads((data_dir / "planar.json").read_text())
    del data["provenance"]
    with pytest.raises(GraphFileError, match="provenance"):
        parse_graph_file(data)


def test_provenance_must_replay(data_dir):
    data = json.loads((data_dir / "planar.json").read_text())
    data["provenance"]["steps"] = data["provenance"]["steps"][:-2]
    with pytest.raises(GraphFileError, match="replay"):
        parse_graph_file(data)


def test_unknown_step():
    seed = {"sign": [1, -1], "edges": [{"color": 0, "endpoints": [0, 1]}]}
    with pytest.raises(GraphFileError, match="unknown step"):
        replay(seed, [{"op": "twist"}])
    with pytest.raises(GraphFileError):
        replay(seed, [{"op": "cut", "edge": 5}])


def test_compact_only_for_colored():
    data = {"version": 1, "family": "w_colored", "format": "compact", "graph": {"sign": [1, -1]}}
    with pytest.raises(GraphFileError):
        parse_graph_file(data)


def test_compact_parity_error():
    data = {"version": 1, "family": "colored_tensor", "format": "compact",
            "graph": {"sign": [1, 1], "edges": [{"color": 0, "endpoints": [0, 1]}]}}
    with pytest.raises(GraphFileError, match="bipartite"):
        parse_graph_file(data)


def test_dot_export(melon_graph):
    text = dot_collapsed(melon_graph)
    assert text.startswith("graph collapsed {") and text.count(" -- ") == 4
    g = build_colored_tensor([1, -1], [(0, 0, 1)])
    bd = dot_boundary(g)
    assert bd.count(" -- ") == 9 and bd.count("[label=") == 6 + 9


@pytest.mark.parametrize(
    "data",
    [
        {"version": 1, "family": "ribbon", "graph": {"vertices": [{"id": 0, "slots": [0, 0]}], "edges": []}},
        {"version": 1, "family": "simple", "graph": {"vertices": [0], "edges": [{"id": 0, "endpoints": [0, 5]}]}},
    ],
)
def test_structural_errors_are_file_errors(data):
    with pytest.raises(GraphFileError) as exc:
        parse_graph_file(data)
    assert exc.value.location == "$['graph']"
