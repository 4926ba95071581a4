"""JSON graph files, provenance replay and DOT export."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cache
from importlib import resources
from pathlib import Path
from typing import Any, Union

import jsonschema

from .ribbon import RibbonFlagGraph
from .simple import SimpleFlagGraph
from .stranded import Mode, PreFlag, StrandedEdge, StrandedGraph, from_compact

FORMAT_VERSION = 1
FAMILIES = ("simple", "ribbon", "colored_tensor", "w_colored")
AnyGraph = Union[SimpleFlagGraph, RibbonFlagGraph, StrandedGraph]


class GraphFileError(ValueError):
    """Malformed or inconsistent graph file; ``location`` points at the culprit."""

    def __init__(self, message: str, location: str = "") -> None:
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location


@cache
def schema(name: str) -> dict:
    text = resources.files("strandpoly.schemas").joinpath(f"{name}.schema.json").read_text()
    return json.loads(text)


def _validate(data: Any, name: str, prefix: str = "$") -> None:
    validator = jsonschema.Draft202012Validator(schema(name))
    errors = sorted(validator.iter_errors(data), key=lambda e: list(e.absolute_path))
    if errors:
        err = errors[0]
        path = prefix + "".join(f"[{p!r}]" if isinstance(p, str) else f"[{p}]" for p in err.absolute_path)
        raise GraphFileError(err.message, path)


# simple


def simple_to_dict(g: SimpleFlagGraph) -> dict:
    return {
        "vertices": list(g.vertices),
        "edges": [{"id": e, "endpoints": [u, v]} for e, u, v in g.edges],
        "flags": [{"id": f, "vertex": v} for f, v in g.flags],
    }


def simple_from_dict(data: dict, prefix: str = "$") -> SimpleFlagGraph:
    _validate(data, "simple", prefix)
    try:
        return SimpleFlagGraph(
            tuple(data["vertices"]),
            tuple((e["id"], e["endpoints"][0], e["endpoints"][1]) for e in data.get("edges", [])),
            tuple((f["id"], f["vertex"]) for f in data.get("flags", [])),
        )
    except ValueError as exc:
        raise GraphFileError(str(exc), prefix) from None


# ribbon


def ribbon_to_dict(g: RibbonFlagGraph) -> dict:
    return {
        "vertices": [{"id": v, "slots": list(slots)} for v, slots in g.rotation],
        "edges": [{"id": e, "slots": [a, b], "twist": tw} for e, a, b, tw in g.edges],
        "flags": [{"id": f, "slot": s} for f, s in g.flags],
        "pinched": sorted(g.pinched, key=repr),
    }


def ribbon_from_dict(data: dict, prefix: str = "$") -> RibbonFlagGraph:
    _validate(data, "ribbon", prefix)
    try:
        return RibbonFlagGraph(
            tuple((v["id"], tuple(v["slots"])) for v in data["vertices"]),
            tuple((e["id"], e["slots"][0], e["slots"][1], bool(e.get("twist", False))) for e in data.get("edges", [])),
            tuple((f["id"], f["slot"]) for f in data.get("flags", [])),
            frozenset(data.get("pinched", [])),
        )
    except ValueError as exc:
        raise GraphFileError(str(exc), prefix) from None


# stranded


def stranded_to_dict(g: StrandedGraph) -> dict:
    vertices = []
    for v in sorted(g.vertices):
        pfs = []
        for fid in g.vertices[v]:
            f = g.preflags[fid]
            pfs.append(
                {
                    "id": f.id,
                    "color": f.color,
                    "sign": f.sign,
                    "points": [{"id": p, "pair": list(g.points[p][1])} for p in f.points],
                }
            )
        vertices.append({"id": v, "preflags": pfs})
    return {
        "rank": g.D,
        "mode": g.mode.value,
        "vertices": vertices,
        "bows": sorted([p, q] for p, q in g.bows.items() if p < q),
        "edges": [
            {"id": e.id, "ends": list(e.ends), "color": e.color, "strands": [list(s) for s in e.strands]}
            for _, e in sorted(g.edges.items())
        ],
        "flags": list(g.flags),
        "discs": [list(d) for d in g.discs],
    }


def stranded_from_dict(data: dict, prefix: str = "$") -> StrandedGraph:
    _validate(data, "stranded", prefix)
    points, preflags, vertices = {}, {}, {}
    for v in data["vertices"]:
        fids = []
        for f in v["preflags"]:
            for pt in f["points"]:
                if pt["id"] in points:
                    raise GraphFileError(f"point {pt['id']} listed twice", prefix + "['vertices']")
                points[pt["id"]] = (f["id"], tuple(sorted(pt["pair"])))
            if f["id"] in preflags:
                raise GraphFileError(f"pre-flag {f['id']} listed twice", prefix + "['vertices']")
            preflags[f["id"]] = PreFlag(f["id"], f["color"], tuple(pt["id"] for pt in f["points"]), f.get("sign", 0))
            fids.append(f["id"])
        vertices[v["id"]] = tuple(fids)
    bows = {}
    for p, q in data.get("bows", []):
        if p in bows or q in bows:
            raise GraphFileError(f"point in two bows ({p}, {q})", prefix + "['bows']")
        bows[p], bows[q] = q, p
    edges = {}
    for e in data.get("edges", []):
        edges[e["id"]] = StrandedEdge(e["id"], tuple(e["ends"]), tuple(tuple(s) for s in e["strands"]), e["color"])
    g = StrandedGraph(
        data.get("rank", 3),
        points,
        preflags,
        bows,
        vertices,
        edges,
        tuple(sorted(tuple(sorted(d)) for d in data.get("discs", []))),
        Mode(data.get("mode", "stranded")),
    )
    try:
        g.validate()
    except ValueError as exc:
        raise GraphFileError(str(exc), prefix) from None
    if "flags" in data and sorted(data["flags"]) != list(g.flags):
        raise GraphFileError("flag list disagrees with unattached pre-flags", prefix + "['flags']")
    return g


# provenance


def replay(seed: dict, steps: list[dict]) -> StrandedGraph:
    """Rebuild a w-colored graph from a compact colored seed and cut/contract steps."""
    g = from_compact(seed)
    for i, step in enumerate(steps):
        op = step["op"]
        try:
            if op == "contract":
                g = g.contract(step["edge"], soft=True)
            elif op == "contract_hard":
                g = g.contract(step["edge"], soft=False)
            elif op == "cut":
                g = g.cut(step["edge"])
            elif op == "relabel":
                g = g.relabel_edges({int(k): v for k, v in step["map"].items()})
            elif op == "remove_discs":
                g = g.remove_discs()
            else:
                raise GraphFileError(f"unknown step {op!r}", f"$['provenance']['steps'][{i}]")
        except KeyError as exc:
            raise GraphFileError(str(exc), f"$['provenance']['steps'][{i}]") from None
    return g


@dataclass
class GraphFile:
    family: str
    graph: AnyGraph
    provenance: dict | None = None
    fmt: str = "full"
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        if isinstance(self.graph, SimpleFlagGraph):
            payload = simple_to_dict(self.graph)
        elif isinstance(self.graph, RibbonFlagGraph):
            payload = ribbon_to_dict(self.graph)
        else:
            payload = stranded_to_dict(self.graph)
        out = {"version": FORMAT_VERSION, "family": self.family, "format": "full", "graph": payload}
        if self.provenance is not None:
            out["provenance"] = self.provenance
        out.update(self.extra)
        return out


def parse_graph_file(data: Any) -> GraphFile:
    _validate(data, "graph_file")
    family, fmt = data["family"], data.get("format", "full")
    extra = {k: v for k, v in data.items() if k not in ("version", "family", "format", "graph", "provenance")}
    prov = data.get("provenance")
    if family == "simple":
        return GraphFile(family, simple_from_dict(data["graph"], "$['graph']"), prov, fmt, extra)
    if family == "ribbon":
        return GraphFile(family, ribbon_from_dict(data["graph"], "$['graph']"), prov, fmt, extra)
    if fmt == "compact":
        if family != "colored_tensor":
            raise GraphFileError("compact format is only for colored_tensor graphs", "$['format']")
        _validate(data["graph"], "compact", "$['graph']")
        try:
            g = from_compact(data["graph"])
        except ValueError as exc:
            raise GraphFileError(str(exc), "$['graph']") from None
        return GraphFile(family, g, prov, fmt, extra)
    g = stranded_from_dict(data["graph"], "$['graph']")
    if family == "colored_tensor" and g.mode is not Mode.COLORED_TENSOR:
        raise GraphFileError("colored_tensor payload must use mode colored_tensor", "$['graph']['mode']")
    if family == "w_colored":
        if prov is None:
            raise GraphFileError("w_colored graphs need a provenance script", "$")
        _validate(prov["seed"], "compact", "$['provenance']['seed']")
        rebuilt = replay(prov["seed"], prov["steps"])
        if rebuilt.key() != g.key():
            raise GraphFileError("provenance script does not replay to the stored graph", "$['provenance']")
    return GraphFile(family, g, prov, fmt, extra)


def load_graph_file(path: str | Path) -> GraphFile:
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFileError(exc.msg, f"{path}:{exc.lineno}:{exc.colno}") from None
    try:
        return parse_graph_file(data)
    except GraphFileError as exc:
        raise GraphFileError(str(exc), str(path)) from None


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


# DOT export


def _q(x: Any) -> str:
    return '"' + str(x).replace('"', r"\"") + '"'


def dot_collapsed(g: StrandedGraph | SimpleFlagGraph) -> str:
    """Underlying multigraph with flags drawn as point nodes."""
    s = g.collapsed() if isinstance(g, StrandedGraph) else g
    color = {e.id: e.color for e in g.edges.values()} if isinstance(g, StrandedGraph) else {}
    lines = ["graph collapsed {"]
    for v in s.vertices:
        lines.append(f"  {_q(v)};")
    for e, u, v in s.edges:
        label = f"e{e}" + (f" c{color[e]}" if e in color else "")
        lines.append(f"  {_q(u)} -- {_q(v)} [label={_q(label)}];")
    for f, v in s.flags:
        lines.append(f"  {_q(f'flag{f}')} [shape=point];")
        lines.append(f"  {_q(v)} -- {_q(f'flag{f}')};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dot_boundary(g: StrandedGraph) -> str:
    """Boundary graph: one node per flag, one edge per open face."""
    bd = g.boundary()
    lines = ["graph boundary {"]
    for f, c in bd.vertices:
        lines.append(f"  {_q(f'f{f}')} [label={_q(f'f{f} c{c}')}];")
    for a, b, pair, _ in bd.edges:
        lines.append(f"  {_q(f'f{a}')} -- {_q(f'f{b}')} [label={_q(f'{pair[0]}{pair[1]}')}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


__all__ = [
    "FAMILIES",
    "FORMAT_VERSION",
    "GraphFile",
    "GraphFileError",
    "dot_boundary",
    "dot_collapsed",
    "dumps",
    "load_graph_file",
    "parse_graph_file",
    "replay",
    "ribbon_from_dict",
    "ribbon_to_dict",
    "schema",
    "simple_from_dict",
    "simple_to_dict",
    "stranded_from_dict",
    "stranded_to_dict",
]
