"""Benchmark the 1-D k-means dynamic program across available backends.

Runs ``dp_kmeans_sorted`` on seeded random inputs of growing size for every
backend (compiled extension and pure-Python/numpy fallback), reports the
best-of-``repeats`` wall time per call and the speedup of the compiled
kernel, and cross-checks that all backends return identical results.

    python3 benchmarks/bench_kmeans.py
    python3 benchmarks/bench_kmeans.py --sizes 200,1000,4000 --k 5 --repeats 5
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from taxostrat._kernels import BACKEND, backend_impls


def time_call(impl, values: np.ndarray, k: int, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        impl(values, k)
        best = min(best, time.perf_counter() - start)
    return best


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--sizes",
        default="100,400,1600,6400",
        help="comma-separated input lengths (default 100,400,1600,6400)",
    )
    parser.add_argument("--k", type=int, default=3, help="number of clusters (default 3)")
    parser.add_argument("--repeats", type=int, default=3, help="timing repeats (default 3)")
    parser.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    args = parser.parse_args(argv)

    sizes = [int(s) for s in args.sizes.split(",")]
    impls = backend_impls()
    print(f"backends: {', '.join(sorted(impls))} (auto-selected: {BACKEND})")
    if len(impls) == 1:
        print("note: compiled extension not built; timing the fallback only")

    rng = np.random.default_rng(args.seed)
    names = sorted(impls)
    header = ["n"] + [f"{name} (s)" for name in names]
    if len(names) == 2:
        header.append("speedup")
    print("  ".join(f"{h:>12}" for h in header))

    for n in sizes:
        values = np.sort(rng.normal(size=n))
        results = {name: impls[name](values, args.k) for name in names}
        bounds = {name: tuple(b.tolist()) for name, (b, _) in results.items()}
        costs = {name: float(c) for name, (_, c) in results.items()}
        if len(set(bounds.values())) != 1 or len(set(costs.values())) != 1:
            print(f"ERROR: backends disagree at n={n}", file=sys.stderr)
            return 1
        times = {name: time_call(impls[name], values, args.k, args.repeats) for name in names}
        cells = [f"{n:>12}"] + [f"{times[name]:>12.6f}" for name in names]
        if len(names) == 2:
            compiled, python = times["compiled"], times["python"]
            cells.append(f"{python / compiled:>11.1f}x")
        print("  ".join(cells))
    return 0


if __name__ == "__main__":
    sys.exit(main())
