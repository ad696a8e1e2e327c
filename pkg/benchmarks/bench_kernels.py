#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Times the three bulk primitives (elementwise multiply, elementwise power,
exp-table construction) on both backends, checks they agree bit-for-bit,
and optionally times an end-to-end pair sweep in a subprocess per backend
(the backend is fixed at import time via NIHOPERM_BACKEND).

Usage:
    python benchmarks/bench_kernels.py [--n 16] [--size 1000000] [--iters 5]
                                       [--e2e]
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from nihoperm import _kernels
from nihoperm import field as gf


def timeit(fn, iters):
    best = float("inf")
    for _ in range(iters):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernels(n: int, size: int, iters: int) -> None:
    ctx = gf.make_field(n)
    rng = np.random.default_rng(42)
    a = rng.integers(0, 1 << n, size).astype(np.int64)
    b = rng.integers(0, 1 << n, size).astype(np.int64)
    e = ctx.group_order - 2  # worst-case square-and-multiply chain

    backends = [("numpy", _kernels.numpy_kernels)]
    if _kernels.numba_kernels is not None:
        print("warming up numba JIT...", end=" ", flush=True)
        t0 = time.perf_counter()
        _kernels.numba_kernels.mul_vec(a[:8], b[:8], n, ctx.red)
        _kernels.numba_kernels.pow_vec(a[:8], e, n, ctx.red)
        _kernels.numba_kernels.exp_table(min(n, 10), gf.make_field(min(n, 10)).red,
                                         gf.make_field(min(n, 10)).generator)
        print(f"done ({time.perf_counter() - t0:.2f}s)")
        backends.append(("numba", _kernels.numba_kernels))
    else:
        print("numba not available; benchmarking the fallback only")

    cases = [
        (f"mul_vec    n={n} size={size}", lambda k: k.mul_vec(a, b, n, ctx.red)),
        (f"pow_vec    n={n} e={e}", lambda k: k.pow_vec(a, e, n, ctx.red)),
        (f"exp_table  n={n}", lambda k: k.exp_table(n, ctx.red, ctx.generator)),
    ]

    print(f"\n{'kernel':<32}" + "".join(f"{name:>14}" for name, _ in backends)
          + f"{'speedup':>10}")
    print("-" * (32 + 14 * len(backends) + 10))
    for label, call in cases:
        times = []
        results = []
        for _, impl in backends:
            times.append(timeit(lambda: call(impl), iters))
            results.append(call(impl))
        for r in results[1:]:
            assert (r == results[0]).all(), "backend results disagree"
        speed = times[0] / times[-1] if len(times) > 1 else 1.0
        cols = "".join(f"{t * 1000:>12.2f}ms" for t in times)
        print(f"{label:<32}{cols}{speed:>9.1f}x")
    print("\nagreement: all backends produced identical outputs")


def bench_end_to_end(m: int, iters: int) -> None:
    print(f"\nend-to-end: full pair sweep at m={m} (subprocess per backend)")
    script = (
        "import time, nihoperm\n"
        "from nihoperm import survey, tower\n"
        "t = tower.make_tower(%d)\n"
        "t.field.exp_log\n"
        "t0 = time.perf_counter()\n"
        "rows = survey.search_pairs(t)\n"
        "print(f'{nihoperm.BACKEND}:{time.perf_counter()-t0:.4f}:{len(rows)}')\n"
    ) % m
    for backend in ("numpy", "numba"):
        if backend == "numba" and _kernels.numba_kernels is None:
            continue
        env = dict(os.environ, NIHOPERM_BACKEND=backend)
        best = float("inf")
        rows = None
        for _ in range(iters):
            out = subprocess.run([sys.executable, "-c", script],
                                 capture_output=True, text=True, env=env,
                                 check=True)
            name, elapsed, rows = out.stdout.strip().split(":")
            best = min(best, float(elapsed))
        print(f"  {backend:<8} {best * 1000:>10.2f}ms  ({rows} orbit rows)")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=16, help="field degree (default 16)")
    ap.add_argument("--size", type=int, default=1_000_000,
                    help="array length for mul/pow (default 1e6)")
    ap.add_argument("--iters", type=int, default=5, help="timing repetitions")
    ap.add_argument("--m", type=int, default=5, help="tower size for --e2e")
    ap.add_argument("--e2e", action="store_true",
                    help="also time a full pair sweep per backend")
    args = ap.parse_args()
    bench_kernels(args.n, args.size, args.iters)
    if args.e2e:
        bench_end_to_end(args.m, max(1, args.iters // 2))


if __name__ == "__main__":
    main()
