"""Benchmark the classification kernels: compiled extension vs numpy fallback.

Usage:
    python3 benchmarks/bench_classify.py [--points 200000] [--polygons 98]

Prints per-backend wall time, throughput, and speedup over the fallback,
after checking that every backend labels every point identically.
"""

from __future__ import annotations

import argparse
import math
import random
import time

import numpy as np

from ridelens.geo import NeighborhoodIndex, available_backends, classify_batch, point_in_polygon
from ridelens.model import Neighborhood, NeighborhoodSet


def star_ring(rng, cx, cy, r_lo, r_hi, n):
    angles = sorted(rng.uniform(0, 2 * math.pi) for _ in range(n))
    pts = [
        (cx + rng.uniform(r_lo, r_hi) * math.cos(a), cy + rng.uniform(r_lo, r_hi) * math.sin(a))
        for a in angles
    ]
    return tuple(pts) + (pts[0],)


def build_set(n_polygons: int, vertices: int, seed: int = 7) -> NeighborhoodSet:
    rng = random.Random(seed)
    cols = max(1, int(math.sqrt(n_polygons)))
    cell = 0.035
    entries = []
    for i in range(n_polygons):
        cx = -87.95 + (i % cols) * cell + cell / 2
        cy = 41.60 + (i // cols) * cell + cell / 2
        ring = star_ring(rng, cx, cy, cell * 0.30, cell * 0.48, vertices)
        entries.append(Neighborhood(f"area_{i:03d}", f"Area {i:03d}", (ring,)))
    return NeighborhoodSet(entries=tuple(entries))


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--points", type=int, default=200_000)
    parser.add_argument("--polygons", type=int, default=98)
    parser.add_argument("--vertices", type=int, default=40)
    parser.add_argument("--scalar-sample", type=int, default=2_000,
                        help="points for the pure-scalar reference timing")
    args = parser.parse_args()

    rng = random.Random(1)
    nset = build_set(args.polygons, args.vertices)
    index = NeighborhoodIndex(nset)
    lon0, lat0 = index.gx0, index.gy0
    lon1, lat1 = index.gx1, index.gy1
    px = np.array([rng.uniform(lon0 - 0.02, lon1 + 0.02) for _ in range(args.points)])
    py = np.array([rng.uniform(lat0 - 0.02, lat1 + 0.02) for _ in range(args.points)])

    runs = [("python (numpy fallback)", dict(backend="python"))]
    if "c" in available_backends():
        runs += [
            ("c (compiled, grid index)", dict(backend="c", use_grid=True)),
            ("c (compiled, full scan)", dict(backend="c", use_grid=False)),
        ]
    else:
        print("compiled kernel not built; benchmarking the fallback only\n")

    results = {}
    timings = []
    for name, kwargs in runs:
        classify_batch(px[:1000], py[:1000], index, **kwargs)  # warm
        started = time.perf_counter()
        out = classify_batch(px, py, index, **kwargs)
        elapsed = time.perf_counter() - started
        results[name] = out
        timings.append((name, elapsed))

    baseline = dict(timings)["python (numpy fallback)"]
    reference = results["python (numpy fallback)"]
    for name, out in results.items():
        if not np.array_equal(out, reference):
            raise SystemExit(f"backend mismatch: {name} disagrees with the fallback")

    # Scalar reference on a subsample, for scale.
    sample = args.scalar_sample
    started = time.perf_counter()
    for i in range(sample):
        point = (py[i], px[i])
        for entry in nset:
            if point_in_polygon(point, entry.rings):
                break
    scalar_s = (time.perf_counter() - started) / sample * args.points

    print(f"{args.points:,} points x {args.polygons} polygons ({args.vertices} vertices each)\n")
    width = max(len(n) for n, _ in timings) + 2
    print(f"{'backend':<{width}} {'time':>9} {'pts/s':>12} {'speedup':>9}")
    print(f"{'scalar loop (extrapolated)':<{width}} {scalar_s:>8.2f}s {args.points / scalar_s:>12,.0f} {baseline / scalar_s:>8.2f}x")
    for name, elapsed in timings:
        print(f"{name:<{width}} {elapsed:>8.2f}s {args.points / elapsed:>12,.0f} {baseline / elapsed:>8.2f}x")
    print("\nall backends agree on every label")


if __name__ == "__main__":
    main()
