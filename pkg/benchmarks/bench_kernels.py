"""Timing comparison of the compiled kernels against the numpy fallback.

Run from the repository root:

    PYTHONPATH=src python3 benchmarks/bench_kernels.py [--sizes 128,256,512]

Reports the best of several repetitions for each kernel and backend, plus the
speedup of the compiled extension where it is available.
"""

import argparse
import timeit

import numpy as np

from tfphoton._kernels import py_backend

try:
    from tfphoton._kernels import _fast
except ImportError:
    _fast = None


def best_time(func, arg, repeats=5, number=3) -> float:
    timer = timeit.Timer(lambda: func(arg))
    return min(timer.repeat(repeat=repeats, number=number)) / number


def bench_size(n: int, rng) -> list[tuple[str, float, float | None]]:
    v = rng.normal(size=n) + 1j * rng.normal(size=n)
    rho = np.outer(v, np.conj(v))
    m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    rows = []
    for name, arg in (("corr_pure", v), ("corr_mixed", rho), ("lag_sums", m)):
        py_t = best_time(getattr(py_backend, name), arg)
        fast_t = best_time(getattr(_fast, name), arg) if _fast else None
        rows.append((name, py_t, fast_t))
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--sizes",
        default="128,256,512",
        help="comma-separated grid sizes to benchmark",
    )
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    if _fast is None:
        print("compiled extension not built; timing the numpy fallback only\n")

    rng = np.random.default_rng(0)
    header = f"{'kernel':<12} {'n':>5} {'python':>12} {'compiled':>12} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for n in sizes:
        for name, py_t, fast_t in bench_size(n, rng):
            if fast_t is None:
                print(f"{name:<12} {n:>5} {py_t * 1e3:>10.3f}ms {'-':>12} {'-':>9}")
            else:
                print(
                    f"{name:<12} {n:>5} {py_t * 1e3:>10.3f}ms "
                    f"{fast_t * 1e3:>10.3f}ms {py_t / fast_t:>8.1f}x"
                )


if __name__ == "__main__":
    main()
