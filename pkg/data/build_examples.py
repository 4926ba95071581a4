"""Regenerate the reference graph files in this directory."""

from pathlib import Path

from strandpoly.graphio import GraphFile, dumps, replay, stranded_to_dict
from strandpoly.stranded import from_compact

HERE = Path(__file__).parent

MELON = {"sign": [1, -1], "edges": [{"color": c, "endpoints": [0, 1]} for c in range(4)]}

# Five colored vertices; contracting four edges merges 0, 1, 2 and 3 into one
# vertex whose edge of color 2 becomes a trivial 2-inner self-loop.
PLANAR_SEED = {
    "sign": [1, -1, 1, -1, 1],
    "edges": [
        {"color": 0, "endpoints": [0, 1]},
        {"color": 1, "endpoints": [0, 1]},
        {"color": 2, "endpoints": [0, 1]},
        {"color": 3, "endpoints": [0, 3]},
        {"color": 3, "endpoints": [2, 1]},
        {"color": 0, "endpoints": [2, 3]},
        {"color": 1, "endpoints": [4, 3]},
    ],
}
PLANAR_STEPS = [
    {"op": "contract", "edge": 0},
    {"op": "contract", "edge": 1},
    {"op": "contract", "edge": 3},
    {"op": "contract", "edge": 6},
    {"op": "relabel", "map": {"4": 0, "2": 1, "5": 2}},
]


# Rare trivial self-loops found by random contraction: a 1-inner loop whose
# contraction splits its vertex in two, and a 0-inner loop splitting it in three.
LOOP_P1_SEED = {"sign": [1, 1, -1, -1, -1, 1],
 "edges": [{"color": 1, "endpoints": [0, 4]},
           {"color": 3, "endpoints": [5, 3]},
           {"color": 0, "endpoints": [5, 4]},
           {"color": 2, "endpoints": [5, 3]},
           {"color": 3, "endpoints": [0, 2]},
           {"color": 1, "endpoints": [1, 2]},
           {"color": 0, "endpoints": [1, 3]},
           {"color": 3, "endpoints": [1, 4]},
           {"color": 2, "endpoints": [1, 2]},
           {"color": 0, "endpoints": [0, 2]}]}
LOOP_P1_STEPS = [{"op": "contract", "edge": 3},
 {"op": "contract", "edge": 0},
 {"op": "contract", "edge": 4},
 {"op": "contract", "edge": 2},
 {"op": "contract_hard", "edge": 1},
 {"op": "contract", "edge": 7},
 {"op": "contract", "edge": 5},
 {"op": "contract", "edge": 9},
 {"op": "contract_hard", "edge": 8}]

LOOP_P0_SEED = {"sign": [1, 1, 1, -1, -1, -1],
 "edges": [{"color": 3, "endpoints": [2, 3]},
           {"color": 1, "endpoints": [1, 3]},
           {"color": 2, "endpoints": [2, 4]},
           {"color": 3, "endpoints": [0, 4]},
           {"color": 0, "endpoints": [1, 5]},
           {"color": 0, "endpoints": [0, 4]},
           {"color": 1, "endpoints": [2, 5]},
           {"color": 2, "endpoints": [1, 5]},
           {"color": 2, "endpoints": [0, 3]}]}
LOOP_P0_STEPS = [{"op": "contract", "edge": 6},
 {"op": "contract", "edge": 7},
 {"op": "contract", "edge": 2},
 {"op": "contract", "edge": 4},
 {"op": "contract", "edge": 5},
 {"op": "contract_hard", "edge": 0},
 {"op": "contract", "edge": 8}]


def main() -> None:
    melon = {"version": 1, "family": "colored_tensor", "format": "compact", "graph": MELON,
             "description": "two vertices joined by edges of all four colors"}
    (HERE / "melon.json").write_text(dumps(melon))
    full = GraphFile("colored_tensor", from_compact(MELON)).to_dict()
    full["description"] = "melon in the full stranded schema"
    (HERE / "melon_full.json").write_text(dumps(full))
    g = replay(PLANAR_SEED, PLANAR_STEPS)
    planar = {
        "version": 1,
        "family": "w_colored",
        "format": "full",
        "description": "planar w-colored graph; e1 is a trivial 2-inner self-loop, e0 a bridge once e2 is cut",
        "edge_names": {"e0": 0, "e1": 1, "e2": 2},
        "graph": stranded_to_dict(g),
        "provenance": {"seed": PLANAR_SEED, "steps": PLANAR_STEPS},
    }
    (HERE / "planar.json").write_text(dumps(planar))
    empty = {"version": 1, "family": "simple", "graph": {"vertices": [0], "flags": [{"id": 0, "vertex": 0}, {"id": 1, "vertex": 0}, {"id": 2, "vertex": 0}]},
             "description": "one vertex, three flags, no edges"}
    (HERE / "edgeless.json").write_text(dumps(empty))

    for name, seed, steps, text in (
        ("loop_p1.json", LOOP_P1_SEED, LOOP_P1_STEPS, "one trivial 1-inner self-loop"),
        ("loop_p0.json", LOOP_P0_SEED, LOOP_P0_STEPS, "a trivial 0-inner self-loop and a 2-inner one"),
    ):
        g = replay(seed, steps)
        doc = {"version": 1, "family": "w_colored", "format": "full", "description": text,
               "graph": stranded_to_dict(g), "provenance": {"seed": seed, "steps": steps}}
        (HERE / name).write_text(dumps(doc))


if __name__ == "__main__":
    main()
