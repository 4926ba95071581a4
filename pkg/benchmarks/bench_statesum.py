"""State-sum timing on a 12-edge w-colored graph, per backend and worker count.

    python3 benchmarks/bench_statesum.py [--repeat N] [--workers 1 2 4]
"""

from __future__ import annotations

import argparse
import os
import time

from strandpoly import invariant as inv
from strandpoly.verify import GeneratorSpec, generate

# eight colored vertices, fourteen edges and four flags; two contractions leave 12 edges
BENCH_SPEC = GeneratorSpec("w_colored", vertices=8, edges=14, contractions=2, max_edges=12, seed=2024)


def bench_graph():
    g = generate(BENCH_SPEC)
    assert len(g.edges) == 12
    return g


def best_time(g, backend: str, workers: int, repeat: int = 3) -> tuple[float, object]:
    best, value = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        value = inv.t_frak_statesum(g, workers=workers, backend=backend)
        best = min(best, time.perf_counter() - t0)
    return best, value


def kernel_time(g, backend: str, workers: int, repeat: int = 3) -> float:
    """Time of the batched cell counts alone, without polynomial assembly."""
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        g.subset_counts(workers=workers, backend=backend)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--workers", type=int, nargs="+", default=[1, 2, 4])
    args = ap.parse_args()
    g = bench_graph()
    print(f"graph: {len(g.edges)} edges, {len(g.vertices)} vertices, {len(g.flags)} flags; cpus={os.cpu_count()}")
    for backend in ("numba", "numpy"):
        best_time(g, backend, 1, 1)  # warm-up, includes JIT compilation
        ref = None
        base = None
        for w in args.workers:
            t, value = best_time(g, backend, w, args.repeat)
            k = kernel_time(g, backend, w, args.repeat)
            ref = value if ref is None else ref
            base = k if base is None else base
            same = "same" if value == ref else "DIFFERENT"
            print(f"{backend:6s} workers={w}: total {t:.3f}s, counts {k:.3f}s, speedup {base / k:.2f}x, output {same}")


if __name__ == "__main__":
    main()
