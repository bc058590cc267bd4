#!/usr/bin/env python3
"""Benchmark the compiled kernels against their pure-numpy fallbacks.

Runs each hot kernel once under the active implementation (numba's @njit
unless FUZZYNET_NO_NUMBA is set), then reloads the kernel module with the
fallback forced and times it again on identical inputs.  Reports the best
wall time of each path, the speedup, and the maximum absolute difference
between outputs — which must be exactly 0.0, since the two paths are written
to agree bit-for-bit.

Usage:
    python3 benchmarks/bench_kernels.py [--batch N] [--variables V] [--repeats R]
"""
from __future__ import annotations

import argparse
import importlib
import os
import time

import numpy as np


def build_inputs(args):
    rng = np.random.default_rng(args.seed)
    corners = np.sort(rng.uniform(0.0, 1.0, (args.batch, 4)), axis=1)
    cent = np.round(rng.uniform(0.0, 1.0, (args.variables, args.procs, 5)), 2)
    mask = rng.uniform(size=cent.shape) < 0.6
    cent[~mask] = 0.0
    deg = np.round(rng.uniform(0.0, 1.0, (args.system_variables, args.procs)), 3)
    deg[rng.uniform(size=deg.shape) < 0.3] = 0.0
    return corners, cent, mask, deg


def best_time(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def run_suite(kernels, corners, cent, mask, deg, repeats):
    # warm-up triggers JIT compilation so it is not part of the timing
    kernels.centroid_batch(corners[:16])
    kernels.pairwise_user_sim(cent[:4], mask[:4], 100.0)
    kernels.pairwise_system_sim(deg[:4])
    jobs = {
        "centroid_batch": lambda: kernels.centroid_batch(corners),
        "pairwise_user_sim": lambda: kernels.pairwise_user_sim(cent, mask, 100.0),
        "pairwise_system_sim": lambda: kernels.pairwise_system_sim(deg),
    }
    outputs = {name: job() for name, job in jobs.items()}
    times = {name: best_time(job, repeats) for name, job in jobs.items()}
    return times, outputs


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--batch", type=int, default=1_000_000,
                        help="membership functions per centroid batch")
    parser.add_argument("--variables", type=int, default=400,
                        help="packed user variables for the pairwise kernel")
    parser.add_argument("--system-variables", type=int, default=2000)
    parser.add_argument("--procs", type=int, default=8)
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--seed", type=int, default=97)
    args = parser.parse_args()

    from fuzzynet import _kernels

    corners, cent, mask, deg = build_inputs(args)

    if not _kernels.USE_NUMBA:
        print("note: compiled path inactive (numba missing or FUZZYNET_NO_NUMBA set);")
        print("      timing the numpy fallback only\n")
        times, _ = run_suite(_kernels, corners, cent, mask, deg, args.repeats)
        for name, seconds in times.items():
            print(f"{name:<22} {seconds * 1e3:>10.2f} ms")
        return 0

    njit_times, njit_out = run_suite(_kernels, corners, cent, mask, deg, args.repeats)

    os.environ["FUZZYNET_NO_NUMBA"] = "1"
    importlib.reload(_kernels)
    try:
        numpy_times, numpy_out = run_suite(_kernels, corners, cent, mask, deg, args.repeats)
    finally:
        del os.environ["FUZZYNET_NO_NUMBA"]
        importlib.reload(_kernels)

    print(f"{'kernel':<22} {'njit':>12} {'numpy':>12} {'speedup':>9} {'max|diff|':>11}")
    for name in njit_times:
        diff = float(np.max(np.abs(njit_out[name] - numpy_out[name])))
        ratio = numpy_times[name] / njit_times[name]
        print(
            f"{name:<22} {njit_times[name] * 1e3:>10.2f} ms {numpy_times[name] * 1e3:>10.2f} ms"
            f" {ratio:>8.1f}x {diff:>11.1e}"
        )
        if diff != 0.0:
            print(f"  !! {name}: paths disagree")
            return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
