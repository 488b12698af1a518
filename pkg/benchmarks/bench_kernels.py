#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python twins.

Times the three hot loops (direct DFT, radix-2 FFT, Jacobi sweeps) on
both backends and reports the speedup, plus one end-to-end figure for
the fft-vs-dft oracle sweep the acceptance suite runs (lengths 1..64,
100 vectors each).

Usage: python benchmarks/bench_kernels.py [--repeats N]
"""

import argparse
import time

import numpy as np

from enosepca._kernels import pure

try:
    from enosepca import _native
except ImportError:
    _native = None


def best_of(fn, repeats):
    timings = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        timings.append(time.perf_counter() - start)
    return min(timings)


def bench_row(name, pure_fn, native_fn, repeats):
    t_pure = best_of(pure_fn, repeats)
    if native_fn is None:
        print(f"{name:<28} {t_pure * 1e3:>10.3f} ms {'-':>12} {'-':>8}")
        return
    t_native = best_of(native_fn, repeats)
    speedup = t_pure / t_native if t_native > 0 else float("inf")
    print(f"{name:<28} {t_pure * 1e3:>10.3f} ms {t_native * 1e3:>9.3f} ms {speedup:>7.1f}x")


def jacobi_input(rng, n):
    a = rng.normal(size=(n, n))
    a = np.ascontiguousarray((a + a.T) / 2.0)
    tol = 1e-12 * float(np.sqrt((a * a).sum()))
    return a, tol


def oracle_sweep(backend):
    rng = np.random.default_rng(4096)
    for L in range(1, 65):
        for _ in range(100):
            v = np.ascontiguousarray(rng.normal(size=L))
            backend.dft_magnitude(v)
            if L & (L - 1) == 0:
                backend.fft_pow2_magnitude(v)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5, help="best-of-N timing (default 5)")
    args = parser.parse_args()

    if _native is None:
        print("note: compiled extension not built; showing pure-Python timings only\n")

    rng = np.random.default_rng(0)
    print(f"{'kernel':<28} {'pure':>13} {'native':>12} {'speedup':>8}")
    print("-" * 64)

    for L in (20, 64, 256):
        v = np.ascontiguousarray(rng.normal(size=L))
        bench_row(
            f"dft_magnitude L={L}",
            lambda v=v: pure.dft_magnitude(v),
            (lambda v=v: _native.dft_magnitude(v)) if _native else None,
            args.repeats,
        )

    for L in (64, 1024, 4096):
        v = np.ascontiguousarray(rng.normal(size=L))
        bench_row(
            f"fft_pow2_magnitude L={L}",
            lambda v=v: pure.fft_pow2_magnitude(v),
            (lambda v=v: _native.fft_pow2_magnitude(v)) if _native else None,
            args.repeats,
        )

    for n in (6, 8, 16, 32):
        a, tol = jacobi_input(rng, n)

        def run_pure(a=a, tol=tol, n=n):
            pure.jacobi_sweeps(a.copy(), np.eye(n), tol, 100)

        def run_native(a=a, tol=tol, n=n):
            _native.jacobi_sweeps(a.copy(), np.eye(n), tol, 100)

        bench_row(f"jacobi_sweeps n={n}", run_pure, run_native if _native else None, args.repeats)

    print("-" * 64)
    bench_row(
        "oracle sweep (1..64 x 100)",
        lambda: oracle_sweep(pure),
        (lambda: oracle_sweep(_native)) if _native else None,
        max(1, args.repeats // 2),
    )


if __name__ == "__main__":
    main()
