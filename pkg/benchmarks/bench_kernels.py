"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""
from __future__ import annotations

import argparse
import timeit
from itertools import combinations

import numpy as np

from tcarrange import kernels
from tcarrange.arrangement import braid, mask_of


def flag_workload(n: int):
    arr = braid(n)
    jobs = []
    for t in combinations(range(arr.size), arr.rank):
        if arr.is_independent(t):
            cl = [arr.closure_mask(mask_of(t[q] for q in range(len(t)) if m >> q & 1))
                  for m in range(1 << len(t))]
            jobs.append((cl, t))
        if len(jobs) == 200:
            break
    return jobs


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)
    if kernels.compiled is None:
        print("compiled extension not built; nothing to compare")
        return 1

    rng = np.random.default_rng(0)
    jobs = flag_workload(6)
    a = rng.normal(size=200_000) + 1j * rng.normal(size=200_000)
    b = -a * rng.uniform(0.1, 3, a.size)
    punct = np.array([0, 1], dtype=complex)
    frames = np.ascontiguousarray(rng.normal(size=(20_000, 6, 2)))

    cases = {
        "flag_expansion (braid:6, 200 sets)": lambda k: [k.flag_expansion(cl, t) for cl, t in jobs],
        "segment_incidence (200k pairs)": lambda k: k.segment_incidence(a, b, punct, 1e-12),
        "frame_distances (20k x 6)": lambda k: k.frame_distances(frames),
        "frame_steps (20k x 6)": lambda k: k.frame_steps(frames),
    }
    print(f"{'kernel':40s} {'python [s]':>12s} {'compiled [s]':>13s} {'speedup':>9s}")
    for name, fn in cases.items():
        py = min(timeit.repeat(lambda: fn(kernels.python), number=1, repeat=args.repeat))
        cc = min(timeit.repeat(lambda: fn(kernels.compiled), number=1, repeat=args.repeat))
        print(f"{name:40s} {py:12.4f} {cc:13.4f} {py / cc:8.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
