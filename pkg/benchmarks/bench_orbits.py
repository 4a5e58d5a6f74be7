#!/usr/bin/env python3
"""Benchmark the orbit-closure kernels: numba vs pure numpy.

Usage: python3 benchmarks/bench_orbits.py [--repeat N]
"""

from __future__ import annotations

import argparse
import time

from equisurf.orbits import SurfaceModel, orbit_count

CASES = [
    (SurfaceModel("closed-nonorientable", 8), 3),   # 3^7 states
    (SurfaceModel("closed-nonorientable", 8), 5),   # 5^7 states
    (SurfaceModel("closed-orientable", 3), 5),      # 5^6 states
    (SurfaceModel("closed-nonorientable", 8), 7),   # 7^7 states
    (SurfaceModel("boundary-nonorientable", 6), 7), # 7^6 states
]


def run(backend: str, repeat: int) -> list[tuple[str, int, float, int]]:
    rows = []
    for model, p in CASES:
        best = float("inf")
        for _ in range(repeat):
            t0 = time.perf_counter()
            rep = orbit_count(model, p, backend=backend)
            best = min(best, time.perf_counter() - t0)
        rows.append((f"{model} p={p}", rep.state_count, best, rep.nonzero_orbit_count))
    return rows


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    # warm the jit cache before timing
    orbit_count(SurfaceModel("closed-nonorientable", 3), 3, backend="numba")

    numba_rows = run("numba", args.repeat)
    numpy_rows = run("numpy", args.repeat)
    print(f"{'case':<32}{'states':>10}{'numba':>10}{'numpy':>10}{'speedup':>9}{'orbits':>8}")
    for (name, states, t_nb, orbits), (_, _, t_np, _) in zip(numba_rows, numpy_rows):
        print(f"{name:<32}{states:>10}{t_nb:>9.3f}s{t_np:>9.3f}s{t_np / t_nb:>8.1f}x{orbits:>8}")


if __name__ == "__main__":
    main()
