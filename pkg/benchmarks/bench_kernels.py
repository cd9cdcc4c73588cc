"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 5]

Prints one line per kernel with the best-of-N wall time for each backend and
the speedup. The compiled column reads "n/a" when the extension is not built.
"""
import argparse
import timeit

import numpy as np

from convchar import _kernels_py
from convchar.factory import build_from_theta, theta_preset
from convchar.groups import FiniteAbelianGroup

try:
    from convchar import _kernels as _kernels_c
except ImportError:
    _kernels_c = None


def cases():
    rng = np.random.default_rng(0)
    g = FiniteAbelianGroup.parse("4x4x4")
    n = g.order
    add, sub = g.add_table, g.sub_table
    fourier = np.ascontiguousarray(build_from_theta(g, "fourier", theta_preset(g, "fourier", "identity")).kernel)
    cosine = np.ascontiguousarray(build_from_theta(g, "cosine", theta_preset(g, "cosine", "identity")).kernel)
    f = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    h = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    u = np.arange(4001) * 0.005
    e1 = np.exp(-u).astype(complex)
    e2 = np.exp(-2 * u).astype(complex)
    row = np.exp(-1.5 * u[:1500]).astype(complex)
    return [
        ("character_residual (Z4^3)", "character_residual", (fourier, add)),
        ("dalembert_residual (Z4^3)", "dalembert_residual", (cosine, add, sub)),
        ("group_convolve (Z4^3)", "group_convolve", (f, h, sub)),
        ("cosine_convolve (Z4^3)", "cosine_convolve", (f, h, add, sub)),
        ("causal_trapezoid (N=4001)", "causal_trapezoid", (e1, e2, 0.005)),
        ("exponential_equation_residual (N=1500)", "exponential_equation_residual", (row,)),
    ]


def best(fn, args, repeat):
    return min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    opts = parser.parse_args()
    print(f"{'kernel':42s} {'python [s]':>12s} {'compiled [s]':>13s} {'speedup':>9s}")
    for label, name, args in cases():
        t_py = best(getattr(_kernels_py, name), args, opts.repeat)
        if _kernels_c is None:
            print(f"{label:42s} {t_py:12.5f} {'n/a':>13s} {'n/a':>9s}")
            continue
        t_c = best(getattr(_kernels_c, name), args, opts.repeat)
        print(f"{label:42s} {t_py:12.5f} {t_c:13.5f} {t_py / t_c:8.1f}x")


if __name__ == "__main__":
    main()
