"""Benchmark the compiled kernels against the numpy reference versions.

Usage: python3 benchmarks/bench_kernels.py [--repeats N]

Each case is timed as the best of N runs, after one warm-up call, so the
numbers reflect steady-state throughput rather than first-call overhead.
"""

import argparse
import time

import numpy as np

from qaoa_landscape._kernels import _pyref

try:
    from qaoa_landscape._kernels import _ext
except ImportError:
    _ext = None


def best_of(repeats, fn, *args):
    fn(*args)  # warm-up
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - start)
    return min(times)


def profile_cases(rng):
    for n, m in ((8, 128), (11, 1024), (14, 4096)):
        states = rng.choice(1 << n, size=m, replace=False).astype(np.uint64)
        yield f"pairwise_profiles n={n:2d} m={m:5d}", (states, n)


def mixer_cases(rng):
    for n in (12, 16, 20):
        amps = rng.standard_normal(1 << n) + 1j * rng.standard_normal(1 << n)
        yield f"apply_mixer       n={n:2d} 2^n={1 << n:7d}", (amps, 0.7, n)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5, help="runs per case")
    args = parser.parse_args()

    if _ext is None:
        print("compiled extension not available; showing reference times only")

    rng = np.random.default_rng(0)
    rows = []
    for label, call_args in (*profile_cases(rng), *mixer_cases(rng)):
        kernel = label.split()[0]
        ref = best_of(args.repeats, getattr(_pyref, kernel), *call_args)
        if _ext is None:
            rows.append((label, ref, None, None))
        else:
            ext = best_of(args.repeats, getattr(_ext, kernel), *call_args)
            rows.append((label, ref, ext, ref / ext))

    header = f"{'case':34s} {'numpy':>10s} {'compiled':>10s} {'speedup':>8s}"
    print(header)
    print("-" * len(header))
    for label, ref, ext, speedup in rows:
        ext_col = f"{ext * 1e3:9.3f}ms" if ext is not None else f"{'-':>10s}"
        speed_col = f"{speedup:7.1f}x" if speedup is not None else f"{'-':>8s}"
        print(f"{label:34s} {ref * 1e3:9.3f}ms {ext_col} {speed_col}")


if __name__ == "__main__":
    main()
