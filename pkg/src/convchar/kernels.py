"""Backend selection for the numeric hot loops.

The compiled extension is used when it imports; setting the environment
variable ``CONVCHAR_PURE_PYTHON=1`` forces the numpy fallback.

The causal convolution always goes through ``np.convolve``: it is already a
vectorized C loop and beats the compiled double loop at every grid size we
benchmarked (see benchmarks/bench_kernels.py).
"""
import os

from . import _kernels_py

if os.environ.get("CONVCHAR_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

character_residual = _impl.character_residual
dalembert_residual = _impl.dalembert_residual
group_convolve = _impl.group_convolve
cosine_convolve = _impl.cosine_convolve
causal_trapezoid = _kernels_py.causal_trapezoid
exponential_equation_residual = _impl.exponential_equation_residual

__all__ = [
    "BACKEND",
    "character_residual",
    "dalembert_residual",
    "group_convolve",
    "cosine_convolve",
    "causal_trapezoid",
    "exponential_equation_residual",
]
