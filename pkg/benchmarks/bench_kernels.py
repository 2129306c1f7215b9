"""Time the compiled and numpy integrand kernels, and one full sweep point each.

Usage: python3 benchmarks/bench_kernels.py [--repeat 20]
"""
import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from dd_metrology import _kernels_py

try:
    from dd_metrology import _kernels_ext
except ImportError:
    _kernels_ext = None


def bench(fn, times, t, w, repeat):
    return min(timeit.repeat(lambda: fn(times, t, w), number=1, repeat=repeat))


def record_time(pure):
    # a fresh interpreter per backend, since the choice is made at import
    code = ("import time; from dd_metrology import noise;"
            "ns = noise.NoiseSpec(0.1, 1.0, 1.0); t0 = time.perf_counter();"
            "[noise.dephasing_record(ns, 'UDD', 50, t) for t in (2.0, 5.0, 10.0, 20.0)];"
            "print(time.perf_counter() - t0)")
    env = dict(os.environ, DD_METROLOGY_PURE="1" if pure else "0")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=20)
    args = ap.parse_args()
    if _kernels_ext is None:
        print("compiled extension not built; only the numpy backend is available")
    w = np.linspace(1e-3, 300.0, 4096)
    print(f"{'kernel':<12}{'n':>5}{'numpy ms':>12}{'cython ms':>12}{'speedup':>10}")
    for n in (0, 10, 50, 200):
        t = 20.0
        times = t * np.sin(np.arange(1, n + 1) * np.pi / (2 * n + 2)) ** 2
        for name in ("filter_raw", "kernel_raw"):
            py = bench(getattr(_kernels_py, name), times, t, w, args.repeat)
            if _kernels_ext is None:
                print(f"{name:<12}{n:>5}{py * 1e3:>12.3f}{'-':>12}{'-':>10}")
                continue
            cy = bench(getattr(_kernels_ext, name), times, t, w, args.repeat)
            print(f"{name:<12}{n:>5}{py * 1e3:>12.3f}{cy * 1e3:>12.3f}{py / cy:>10.1f}")
    py = record_time(pure=True)
    line = f"4 UDD-50 dephasing records: numpy {py:.3f} s"
    if _kernels_ext is not None:
        cy = record_time(pure=False)
        line += f", cython {cy:.3f} s ({py / cy:.1f}x)"
    print(line)


if __name__ == "__main__":
    main()
