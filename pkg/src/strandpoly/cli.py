"""Command line: compute invariants, run suites, expand, export and reduce graph files."""

from __future__ import annotations

import json
import sys
from collections.abc import Callable

import click

from . import invariant as inv
from . import ribbon as rb
from . import simple as sp
from . import verify
from .graphio import GraphFile, GraphFileError, dot_boundary, dot_collapsed, dumps, load_graph_file
from .poly import Basis, Polynomial, to_basis
from .stranded import InvariantViolation, StrandedGraph

EXIT_FAILURES, EXIT_PARSE, EXIT_MISMATCH, EXIT_VIOLATION = 1, 2, 3, 4

STRANDED_INVARIANTS = [k.value for k in inv.InvariantKind]
OTHER_INVARIANTS = ["tutte-flags", "tutte", "br", "br-flags", "br-flags-prime"]


class Mismatch(Exception):
    """The invariant does not apply to the graph family."""


def _simple_of(g) -> sp.SimpleFlagGraph:
    if isinstance(g, sp.SimpleFlagGraph):
        return g
    if isinstance(g, rb.RibbonFlagGraph):
        return g.to_simple()
    return g.collapsed()


def _ribbon_only(fn: Callable[[rb.RibbonFlagGraph], Polynomial], name: str):
    def run(g):
        if not isinstance(g, rb.RibbonFlagGraph):
            raise Mismatch(f"{name} needs a ribbon graph")
        return fn(g)

    return run


def _br(g: rb.RibbonFlagGraph) -> Polynomial:
    if not g.is_closed():
        raise Mismatch("br needs a closed ribbon graph (all flags pinched)")
    return rb.br_classic(g)


def _stranded_only(kind: str):
    def run(g):
        if not isinstance(g, StrandedGraph):
            raise Mismatch(f"{kind} needs a stranded graph (colored_tensor or w_colored)")
        if g.D != 3:
            raise Mismatch(f"{kind} is defined for rank 3")
        return inv.t_reductions(g, kind)

    return run


# invariant name -> (evaluator, native basis); None means the basis flag does not apply
EVALUATORS: dict[str, tuple[Callable, Basis | None]] = {
    "tutte-flags": (lambda g: sp.tutte_flags_statesum(_simple_of(g)), Basis.SHIFTED),
    "tutte": (lambda g: sp.tutte_classic(_simple_of(g)), Basis.STANDARD),
    "br": (_ribbon_only(_br, "br"), Basis.SHIFTED),
    "br-flags": (_ribbon_only(rb.br_flags, "br-flags"), Basis.SHIFTED),
    "br-flags-prime": (_ribbon_only(rb.br_flags_prime, "br-flags-prime"), Basis.SHIFTED),
}
for _k in STRANDED_INVARIANTS:
    EVALUATORS[_k] = (_stranded_only(_k), None if _k == "multivariate" else Basis.SHIFTED)


def compute_invariant(gf: GraphFile, name: str, basis: str = "shifted") -> Polynomial:
    fn, native = EVALUATORS[name]
    p = fn(gf.graph)
    if native is not None:
        p = to_basis(p, native, Basis(basis))
    return p


def _fail(code: int, message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _load(path: str) -> GraphFile:
    try:
        return load_graph_file(path)
    except GraphFileError as exc:
        _fail(EXIT_PARSE, str(exc))
    except OSError as exc:
        _fail(EXIT_PARSE, f"{path}: {exc.strerror}")
    raise AssertionError("unreachable")


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


@click.group()
@click.version_option(package_name="artifact")
def main() -> None:
    """Polynomial invariants of flag, ribbon and stranded graphs."""


@main.command()
@click.argument("path", type=click.Path(dir_okay=False))
@click.option("--invariant", "name", type=click.Choice(list(EVALUATORS)), default="T_frak", show_default=True)
@click.option("--basis", type=click.Choice(["shifted", "standard"]), default="shifted", show_default=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True)
def compute(path: str, name: str, basis: str, fmt: str) -> None:
    """Compute an invariant of the graph in PATH."""
    gf = _load(path)
    try:
        p = compute_invariant(gf, name, basis)
    except Mismatch as exc:
        _fail(EXIT_MISMATCH, f"{gf.family}: {exc}")
    except InvariantViolation as exc:
        _fail(EXIT_VIOLATION, str(exc))
    if fmt == "json":
        doc = {"invariant": name, "basis": basis, "family": gf.family, "terms": p.to_json()}
        click.echo(json.dumps(doc, sort_keys=True))
    else:
        click.echo(p.to_text())


@main.command("verify")
@click.option("--suite", default="all", show_default=True, help="Suite name or 'all'.")
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--cases", default=100, show_default=True, type=int)
@click.option("--workers", default=None, type=int, help="Concurrent cases (default: serial).")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True)
@click.option("--list", "list_only", is_flag=True, help="List suites and exit.")
def verify_cmd(suite: str, seed: int, cases: int, workers: int | None, fmt: str, list_only: bool) -> None:
    """Run property suites on random graphs; exit 1 on any failure."""
    if list_only:
        for s in verify.SUITES.values():
            click.echo(f"{s.name:28s} {s.family:15s} {s.doc}")
        return
    names = list(verify.SUITES) if suite == "all" else [suite]
    unknown = [n for n in names if n not in verify.SUITES]
    if unknown:
        _fail(EXIT_PARSE, f"unknown suite {unknown[0]!r}")
    reports = [verify.run_suite(n, cases=cases, seed=seed, workers=workers) for n in names]
    if fmt == "json":
        click.echo(json.dumps([r.to_json() for r in reports], indent=2, sort_keys=True))
    else:
        for r in reports:
            click.echo(r.to_text())
    if any(not r.ok for r in reports):
        sys.exit(EXIT_FAILURES)


@main.command()
@click.argument("path", type=click.Path(dir_okay=False))
@click.option("-o", "--output", default=None, help="Write to a file instead of stdout.")
def expand(path: str, output: str | None) -> None:
    """Expand a compact colored tensor description into the full stranded form."""
    gf = _load(path)
    if gf.family != "colored_tensor":
        _fail(EXIT_MISMATCH, f"expand needs a colored_tensor file, got {gf.family}")
    _emit(dumps(GraphFile(gf.family, gf.graph, gf.provenance, "full", gf.extra).to_dict()), output)


@main.command()
@click.argument("path", type=click.Path(dir_okay=False))
@click.option("--target", type=click.Choice(["collapsed", "boundary"]), default="collapsed", show_default=True)
@click.option("-o", "--output", default=None)
def export(path: str, target: str, output: str | None) -> None:
    """Write a Graphviz DOT view of the graph."""
    gf = _load(path)
    g = gf.graph
    if target == "boundary":
        if not isinstance(g, StrandedGraph) or g.D != 3:
            _fail(EXIT_MISMATCH, "boundary export needs a rank-3 stranded graph")
        try:
            _emit(dot_boundary(g), output)
        except InvariantViolation as exc:
            _fail(EXIT_VIOLATION, str(exc))
        return
    _emit(dot_collapsed(g.to_simple() if isinstance(g, rb.RibbonFlagGraph) else g), output)


@main.command("reduce")
@click.argument("path", type=click.Path(dir_okay=False))
@click.option("-o", "--output", default=None)
def reduce_cmd(path: str, output: str | None) -> None:
    """Write the disc-free representative of a stranded graph."""
    gf = _load(path)
    if not isinstance(gf.graph, StrandedGraph):
        _fail(EXIT_MISMATCH, f"reduce needs a stranded graph, got {gf.family}")
    out = GraphFile(gf.family, gf.graph.remove_discs(), gf.provenance, "full", gf.extra)
    _emit(dumps(out.to_dict()), output)


if __name__ == "__main__":  # pragma: no cover
    main()
