"""Timing comparison of the compiled kernel against the numpy fallback.

Runs the three primitives on seeded inputs of increasing size, then one
end-to-end HH^1 computation per backend via a forced-environment
subprocess.  Results are wall-clock medians over repeated calls; both
backends produce bit-identical outputs, so only time differs.

Usage: python3 benchmarks/bench_kernels.py
"""

import os
import subprocess
import sys
import time

import numpy as np

from hhone._kernel import pyfallback

try:
    from hhone._kernel import _core
except ImportError:
    _core = None

P = 5
REPEATS = 7


def median_time(fn, *args):
    times = []
    for _ in range(REPEATS):
        t0 = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t0)
    return sorted(times)[len(times) // 2]


def bench_primitives():
    rng = np.random.default_rng(0)
    rows = []
    for n in (32, 128, 384):
        a = rng.integers(0, P, size=(n, n)).astype(np.int64)
        b = rng.integers(0, P, size=(n, n)).astype(np.int64)
        basis, pivots = pyfallback.rref(a[: n // 2], P)
        for label, args in (
            ("rref", (a, P)),
            ("matmul", (a, b, P)),
            ("eliminate", (a, basis, pivots, P)),
        ):
            t_py = median_time(getattr(pyfallback, label), *args)
            t_c = median_time(getattr(_core, label), *args) if _core else float("nan")
            rows.append((f"{label} {n}x{n}", t_py, t_c))
    return rows


def bench_pipeline():
    """HH^1 of kE27 over GF(3), dim 27, in a fresh process per backend."""
    code = (
        "from hhone import assoc, deriv, groups\n"
        "a = assoc.group_algebra(groups.GroupSpec.extraspecial_p3(3).build(), 3)\n"
        "print(deriv.hh1(a).dim)\n"
    )
    rows = []
    for label, kernel in (("python", "py"), ("compiled", "c")):
        if kernel == "c" and _core is None:
            rows.append((f"hh1 kE27 [{label}]", float("nan")))
            continue
        env = dict(os.environ, HHONE_KERNEL=kernel)
        t0 = time.perf_counter()
        r = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
        dt = time.perf_counter() - t0
        assert r.returncode == 0, r.stderr
        rows.append((f"hh1 kE27 [{label}]", dt))
    return rows


def main():
    if _core is None:
        print("compiled kernel not built; fallback timings only\n")
    print(f"{'case':<22}{'python (s)':>12}{'compiled (s)':>14}{'speedup':>9}")
    for name, t_py, t_c in bench_primitives():
        ratio = f"{t_py / t_c:6.1f}x" if t_c == t_c and t_c > 0 else "    n/a"
        print(f"{name:<22}{t_py:>12.5f}{t_c:>14.5f}{ratio:>9}")
    print()
    for name, dt in bench_pipeline():
        print(f"{name:<30}{dt:>10.2f} s  (includes interpreter startup)")


if __name__ == "__main__":
    main()
