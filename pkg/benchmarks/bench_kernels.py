"""Benchmark the compiled kernels against the numpy fallback.

Runs each kernel on sizes typical for the merge loop and for K-means over a
few thousand instances, and reports per-call times plus an end-to-end
clustering comparison.  Run as:

    python3 benchmarks/bench_kernels.py
"""

import os
import statistics
import subprocess
import sys
import time

import numpy as np

from cobra.kernels import BACKEND, pyfallback

try:
    from cobra.kernels import _fast
except ImportError:
    _fast = None


def timeit(fn, *args, repeats=7):
    best = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*args)
        best.append(time.perf_counter() - start)
    return statistics.median(best)


def bench_kernels():
    rng = np.random.default_rng(0)
    x = np.ascontiguousarray(rng.normal(size=(2000, 16)))
    centers = np.ascontiguousarray(rng.normal(size=(100, 16)))
    point = np.ascontiguousarray(rng.normal(size=16))
    cand = np.ascontiguousarray(rng.choice(2000, 40, replace=False).astype(np.int64))
    members = np.arange(2000, dtype=np.int64)
    rows_a = np.arange(0, 800, dtype=np.int64)
    rows_b = np.arange(800, 2000, dtype=np.int64)

    cases = [
        ("sqdist_matrix 2000x100", "sqdist_matrix", (x, centers)),
        ("sqdist_to_point 2000", "sqdist_to_point", (x, point)),
        ("assign_nearest 2000x100", "assign_nearest", (x, centers)),
        ("dist_sums 40x2000", "dist_sums", (x, cand, members)),
        ("closest_cross_pair 800x1200", "closest_cross_pair", (x, rows_a, rows_b)),
    ]

    print(f"{'kernel':<30} {'python':>10} {'compiled':>10} {'speedup':>8}")
    for label, name, args in cases:
        t_py = timeit(getattr(pyfallback, name), *args)
        if _fast is None:
            print(f"{label:<30} {t_py * 1e3:>8.2f}ms {'n/a':>10}")
            continue
        t_c = timeit(getattr(_fast, name), *args)
        print(
            f"{label:<30} {t_py * 1e3:>8.2f}ms {t_c * 1e3:>8.2f}ms "
            f"{t_py / t_c:>7.1f}x"
        )


def bench_end_to_end():
    """Full clustering timed in a subprocess per backend.

    The backend is chosen at import time, so each run needs a fresh process.
    """
    script = (
        "import time; from cobra import kernels; "
        "from cobra.dataset import load_csv, dedupe, normalize; "
        "from cobra.core import run_cobra; from cobra.oracles import label_oracle; "
        "d = normalize(dedupe(load_csv('data/blobs1200.csv', label_column='blob'))); "
        "t = time.perf_counter(); "
        "r = run_cobra(d, 100, label_oracle(d.labels), seed=0); "
        "print(f'{kernels.BACKEND}: {time.perf_counter() - t:.3f}s, "
        "{r.query_log.oracle_count} queries, {r.clustering.n_clusters} clusters')"
    )
    for forced in ("0", "1"):
        env = dict(os.environ, COBRA_PURE_PYTHON=forced)
        sys.stdout.flush()
        subprocess.run([sys.executable, "-c", script], env=env, check=True)


if __name__ == "__main__":
    print(f"active backend: {BACKEND}")
    if _fast is None:
        print("compiled extension unavailable, timing fallback only")
    bench_kernels()
    print()
    print("end-to-end clustering (blobs1200, n_super=100):")
    bench_end_to_end()
