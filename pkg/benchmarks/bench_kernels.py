"""Compare the compiled and numpy recurrence kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Times each kernel on a workload typical of one quadrature or sampling pass
and checks that both backends return the same numbers.
"""
import argparse
import timeit

import numpy as np

from renyibound import _pykernels

try:
    from renyibound import _ckernels
except ImportError:
    _ckernels = None

X = np.cos(np.linspace(0.0, np.pi, 200_000))
R = np.linspace(0.0, 60.0, 200_000)
CASES = [
    ("gegenbauer n=6 lam=1.5, 2e5 pts", "gegenbauer_array", (6, 1.5, X)),
    ("gegenbauer n=40 lam=0.5, 2e5 pts", "gegenbauer_array", (40, 0.5, X)),
    ("laguerre n=4 alpha=5, 2e5 pts", "laguerre_array", (4, 5.0, R)),
    ("legendre rule n=96", "legendre_rule", (96,)),
    ("legendre rule n=768", "legendre_rule", (768,)),
]


def best_time(fn, args, repeat):
    timer = timeit.Timer(lambda: fn(*args))
    loops, _ = timer.autorange()
    return min(timer.repeat(repeat, loops)) / loops


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _ckernels is None:
        print("compiled kernels not built; run `pip install -e . --no-build-isolation` first")
    print(f"{'kernel':36s} {'python [ms]':>12s} {'cython [ms]':>12s} {'speedup':>8s} {'rel diff':>9s}")
    for title, name, call_args in CASES:
        py = getattr(_pykernels, name)
        t_py = best_time(py, call_args, args.repeat)
        if _ckernels is None:
            print(f"{title:36s} {1e3 * t_py:12.3f} {'-':>12s} {'-':>8s} {'-':>9s}")
            continue
        cy = getattr(_ckernels, name)
        t_cy = best_time(cy, call_args, args.repeat)
        a, b = py(*call_args), cy(*call_args)
        diff = max(float(np.max(np.abs(u - v) / np.maximum(1.0, np.abs(u)))) for u, v in zip(
            a if isinstance(a, tuple) else (a,), b if isinstance(b, tuple) else (b,)))
        print(f"{title:36s} {1e3 * t_py:12.3f} {1e3 * t_cy:12.3f} {t_py / t_cy:7.1f}x {diff:9.1e}")


if __name__ == "__main__":
    main()
