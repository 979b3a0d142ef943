"""Time the compiled (numba) kernels against the pure-numpy fallback.

Each backend runs in a subprocess with TRIAREA_BACKEND set, because the
backend is chosen at import time.  The workload is the full solve
pipeline on a few representative instances, repeated after a warm-up
pass so numba's compilation cost is reported separately.

Usage: python bench/bench_kernels.py [--repeats N]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json
import time
from fractions import Fraction

from triarea import (AreaAssignment, CombinatorialType, Polygon,
                     cone_type, solve)

square = Polygon.from_pairs([(0, 0), (1, 0), (1, 1), (0, 1)])
big = Polygon.from_pairs([(0, 0), (2, 0), (2, 2), (0, 2)])
cone = cone_type(4)
two = CombinatorialType(4, 6, ((1, 2, 5), (2, 3, 5), (4, 1, 5),
                               (3, 4, 6), (4, 5, 6), (5, 3, 6)))

instances = [
    (cone, square, AreaAssignment.from_list(
        cone, [Fraction(1, 8), Fraction(1, 4), Fraction(3, 8), Fraction(1, 4)])),
    (cone, square, AreaAssignment.equal(cone, square)),
    (two, big, AreaAssignment.from_list(
        two, [Fraction(1, 2), Fraction(1, 2), Fraction(1, 2),
              Fraction(1), Fraction(1), Fraction(1, 2)])),
]

t0 = time.perf_counter()
for ctype, polygon, areas in instances:
    solve(ctype, polygon, areas)
warmup = time.perf_counter() - t0

repeats = REPEATS
t0 = time.perf_counter()
for _ in range(repeats):
    for ctype, polygon, areas in instances:
        solve(ctype, polygon, areas)
steady = (time.perf_counter() - t0) / repeats

print(json.dumps({"warmup_s": warmup, "steady_s": steady}))
"""


def run_backend(backend: str, repeats: int) -> dict:
    env = dict(os.environ, TRIAREA_BACKEND=backend)
    code = WORKLOAD.replace("REPEATS", str(repeats))
    out = subprocess.run([sys.executable, "-c", code], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(out.stdout.strip().splitlines()[-1])


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    results = {}
    for backend in ("numpy", "numba"):
        print(f"running {backend} backend ...", flush=True)
        results[backend] = run_backend(backend, args.repeats)

    print()
    print(f"{'backend':<8} {'first pass (s)':>15} {'steady pass (s)':>16}")
    for backend, r in results.items():
        print(f"{backend:<8} {r['warmup_s']:>15.3f} {r['steady_s']:>16.3f}")
    speedup = results["numpy"]["steady_s"] / results["numba"]["steady_s"]
    print(f"\nsteady-state speedup (numba over numpy): {speedup:.1f}x")
    print("(numba's first pass includes jit compilation / cache load)")


if __name__ == "__main__":
    main()
