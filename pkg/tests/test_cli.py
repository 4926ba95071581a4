import json

import pytest
from click.testing import CliRunner

from strandpoly import cli
from strandpoly import invariant as inv
from strandpoly.graphio import GraphFile, dumps, load_graph_file
from strandpoly.poly import Polynomial, parse, to_basis, Basis
from strandpoly.stranded import InvariantViolation, melon

import golden


@pytest.fixture
def runner():
    return CliRunner()


def run(runner, *args):
    return runner.invoke(cli.main, [str(a) for a in args])


def test_compute_melon_multivariate(runner, data_dir):
    res = run(runner, "compute", data_dir / "melon.json", "--invariant", "multivariate")
    assert res.exit_code == 0, res.output
    assert parse(res.output) == golden.MELON_MULTI


def test_compute_planar(runner, data_dir):
    res = run(runner, "compute", data_dir / "planar.json")
    assert res.exit_code == 0
    assert parse(res.output) == golden.PLANAR_T
    std = run(runner, "compute", data_dir / "planar.json", "--basis", "standard")
    assert parse(std.output) == to_basis(golden.PLANAR_T, Basis.SHIFTED, Basis.STANDARD)


def test_compute_json(runner, data_dir):
    res = run(runner, "compute", data_dir / "melon.json", "--format", "json")
    doc = json.loads(res.output)
    assert doc["invariant"] == "T_frak" and doc["family"] == "colored_tensor"
    assert Polynomial.from_json(doc["terms"]) == golden.MELON_T


def test_edgeless_tutte_flags(runner, data_dir):
    res = run(runner, "compute", data_dir / "edgeless.json", "--invariant", "tutte-flags")
    assert res.exit_code == 0
    assert parse(res.output) == parse("t^3")


def test_output_is_byte_identical(runner, data_dir):
    outs = {run(runner, "compute", data_dir / "planar.json", "--format", "json").output for _ in range(3)}
    assert len(outs) == 1


def test_parse_error_exit(runner, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{\n oops")
    res = run(runner, "compute", p)
    assert res.exit_code == cli.EXIT_PARSE
    assert f"{p}:2:" in res.output
    assert run(runner, "compute", tmp_path / "missing.json").exit_code == cli.EXIT_PARSE


def test_mismatch_exit(runner, data_dir):
    assert run(runner, "compute", data_dir / "melon.json", "--invariant", "br").exit_code == cli.EXIT_MISMATCH
    assert run(runner, "compute", data_dir / "edgeless.json").exit_code == cli.EXIT_MISMATCH
    assert run(runner, "expand", data_dir / "planar.json").exit_code == cli.EXIT_MISMATCH
    assert run(runner, "reduce", data_dir / "edgeless.json").exit_code == cli.EXIT_MISMATCH


def test_violation_exit(runner, data_dir, monkeypatch):
    def broken(g, kind):
        raise InvariantViolation("zeta < 0")

    monkeypatch.setattr(inv, "t_reductions", broken)
    res = run(runner, "compute", data_dir / "melon.json")
    assert res.exit_code == cli.EXIT_VIOLATION
    assert "zeta < 0" in res.output


def test_expand_round_trip(runner, data_dir, tmp_path):
    out = tmp_path / "full.json"
    res = run(runner, "expand", data_dir / "melon.json", "-o", out)
    assert res.exit_code == 0
    expanded, hand = json.loads(out.read_text()), json.loads((data_dir / "melon_full.json").read_text())
    assert expanded["format"] == "full" and expanded["graph"] == hand["graph"]
    res = run(runner, "compute", out, "--invariant", "multivariate")
    assert parse(res.output) == golden.MELON_MULTI


def test_reduce_strips_discs(runner, tmp_path):
    g = melon()
    src = tmp_path / "discs.json"
    src.write_text(dumps(GraphFile("colored_tensor", g.add_discs([(0, 1), (0, 2), (1, 3)])).to_dict()))
    out = tmp_path / "reduced.json"
    assert run(runner, "reduce", src, "-o", out).exit_code == 0
    back = load_graph_file(out).graph
    assert back.discs == () and back.key(strict=True) == g.key(strict=True)


def test_export(runner, data_dir):
    res = run(runner, "export", data_dir / "melon.json")
    assert res.exit_code == 0 and res.output.startswith("graph collapsed {")
    res = run(runner, "export", data_dir / "planar.json", "--target", "boundary")
    assert res.exit_code == 0 and res.output.startswith("graph boundary {")
    assert run(runner, "export", data_dir / "edgeless.json", "--target", "boundary").exit_code == cli.EXIT_MISMATCH


def test_verify_command(runner):
    res = run(runner, "verify", "--suite", "zeta_bounds", "--cases", "5", "--seed", "1")
    assert res.exit_code == 0
    assert res.output.startswith("PASS zeta_bounds")
    res = run(runner, "verify", "--suite", "zeta_bounds", "--cases", "3", "--format", "json")
    assert json.loads(res.output)[0]["suite"] == "zeta_bounds"
    assert run(runner, "verify", "--suite", "nope").exit_code == cli.EXIT_PARSE
    listing = run(runner, "verify", "--list").output
    assert "t_frak_recurrence" in listing and "bridge_faces" in listing


def test_verify_failure_exit(runner, monkeypatch):
    from strandpoly import verify

    def always(g):
        raise AssertionError("boom")

    monkeypatch.setitem(verify.SUITES, "boom", verify.Suite("boom", "simple", always))
    res = run(runner, "verify", "--suite", "boom", "--cases", "2")
    assert res.exit_code == cli.EXIT_FAILURES
    assert res.output.startswith("FAIL boom")
