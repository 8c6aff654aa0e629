"""Time the compiled kernel against the pure-Python fallback.

    python benchmarks/bench_kernel.py [--repeat 3] [--quick]

Each workload runs on both backends; results must match, and the table
reports the best wall time of ``--repeat`` runs and the speedup.
"""
from __future__ import annotations

import argparse
import time

from subtile import kernel
from subtile.core import Library, PieceMultiset, Polyomino, TransformMode
from subtile.enumeration import count_tilings, enumerate_multisets
from subtile.reduce import reduce_partition
from subtile.subtiling import ROTATIONS, beta_empirical, has_subtiling, staircase_library

R = Polyomino.rect
DOMINOES = Library((R(1, 2),), TransformMode.ROTATIONS_AND_REFLECTIONS)
TROMINOES = Library((R(1, 3), Polyomino(((0, 0), (0, 1), (1, 1)))), TransformMode.ROTATIONS_AND_REFLECTIONS)


def workloads(quick: bool):
    k = 1 if quick else 2
    yield "count dominoes 10x10", lambda b: count_tilings(DOMINOES, 10, 10, backend=b)
    yield f"count dominoes 8x{20 * k}", lambda b: count_tilings(DOMINOES, 8, 20 * k, backend=b)
    yield "count trominoes 9x9", lambda b: count_tilings(TROMINOES, 9, 9, backend=b)
    yield f"multisets trominoes 4x{6 * k}", lambda b: len(list(enumerate_multisets(TROMINOES, 4, 6 * k, backend=b)))
    inst = reduce_partition([3, 1, 1, 2, 2, 1])
    yield "reduction subtiling N=5", lambda b: has_subtiling(
        inst.multiset, inst.n, inst.m, ROTATIONS, backend=b
    ).split
    yield f"staircase beta m<={6 * k + 4}", lambda b: beta_empirical(
        staircase_library(), 2, 6 * k + 4, ROTATIONS, backend=b
    ).beta
    yield "subtiling 2x2 squares 4x8", lambda b: has_subtiling(PieceMultiset.of({R(2, 2): 8}), 4, 8, backend=b) is not None


def best_of(fn, backend, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn(backend)
        best = min(best, time.perf_counter() - t)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="smaller instances")
    args = ap.parse_args(argv)
    backends = kernel.available_backends()
    if "cython" not in backends:
        print("compiled kernel not built; timing the Python fallback only")
    print(f"{'workload':34} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for name, fn in workloads(args.quick):
        tp, rp = best_of(fn, "python", args.repeat)
        if "cython" in backends:
            tc, rc = best_of(fn, "cython", args.repeat)
            if rc != rp:
                raise SystemExit(f"{name}: backends disagree ({rp!r} vs {rc!r})")
            print(f"{name:34} {tp:10.4f} {tc:10.4f} {tp / tc:7.1f}x")
        else:
            print(f"{name:34} {tp:10.4f} {'-':>10} {'-':>8}")


if __name__ == "__main__":
    main()
