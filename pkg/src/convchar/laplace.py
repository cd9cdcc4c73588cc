"""Laplace transform and causal convolution on a uniform grid of [0, X].

Everything uses the trapezoidal rule, so identities hold to O(h^2) plus a
truncation error that depends on the horizon X, which callers control.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import kernels


@dataclass(frozen=True)
class HalfLineGrid:
    """Nodes x_i = i*h for i = 0..count-1."""

    step: float
    count: int

    def __post_init__(self):
        if not (self.step > 0 and math.isfinite(self.step)):
            raise ValueError(f"grid step must be positive, got {self.step}")
        if int(self.count) != self.count or self.count < 2:
            raise ValueError(f"grid needs at least 2 nodes, got {self.count}")
        object.__setattr__(self, "step", float(self.step))
        object.__setattr__(self, "count", int(self.count))

    @classmethod
    def from_horizon(cls, h: float, X: float) -> "HalfLineGrid":
        """Grid with step ``h`` reaching (as close as possible to) ``X``."""
        return cls(h, int(round(X / h)) + 1)

    @property
    def horizon(self) -> float:
        return (self.count - 1) * self.step

    @property
    def nodes(self) -> np.ndarray:
        return np.arange(self.count) * self.step

    def weights(self) -> np.ndarray:
        w = np.full(self.count, self.step)
        w[0] = w[-1] = 0.5 * self.step
        return w


@dataclass(frozen=True, eq=False)
class GridSignal:
    grid: HalfLineGrid
    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values).reshape(-1)
        if not np.iscomplexobj(v):
            v = v.astype(float)
        if v.shape[0] != self.grid.count:
            raise ValueError(f"grid signal has {v.shape[0]} values, grid has {self.grid.count} nodes")
        if not np.all(np.isfinite(v)):
            raise ValueError("grid signal contains NaN or Inf")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @classmethod
    def sample(cls, grid: HalfLineGrid, fn: Callable[[np.ndarray], np.ndarray]) -> "GridSignal":
        return cls(grid, fn(grid.nodes))


def trapezoid(grid: HalfLineGrid, values) -> complex:
    return complex(np.dot(grid.weights(), np.asarray(values)))


def laplace_transform(f: GridSignal, y: float) -> complex:
    """Trapezoid approximation of int_0^X exp(-y x) f(x) dx."""
    if not y > 0:
        raise ValueError(f"Laplace variable must be positive, got {y}")
    return trapezoid(f.grid, np.exp(-y * f.grid.nodes) * f.values)


def laplace_convolution(f: GridSignal, g: GridSignal) -> GridSignal:
    """out_i = trapezoid sum of f(x_j) g(x_i - x_j), j = 0..i; out_0 = 0."""
    if f.grid != g.grid:
        raise ValueError("Laplace convolution needs both signals on the same grid")
    out = kernels.causal_trapezoid(f.values, g.values, f.grid.step)
    if not (np.iscomplexobj(f.values) or np.iscomplexobj(g.values)):
        out = out.real
    return GridSignal(f.grid, out)


# -- built-in analytic test functions ---------------------------------------


def _poly_cutoff(x):
    return np.where(x < 1.0, x**2 * (1.0 - x) ** 2, 0.0)


BUILTIN_FUNCTIONS: dict[str, Callable[[np.ndarray], np.ndarray]] = {
    "exponential": lambda x: np.exp(-x),
    "constant": lambda x: np.ones_like(x),
    "polynomial-cutoff": _poly_cutoff,
    "zero": lambda x: np.zeros_like(x),
}

_ALIASES = {"exp": "exponential", "const": "constant", "one": "constant", "poly": "polynomial-cutoff"}


def builtin_function(spec: str) -> Callable[[np.ndarray], np.ndarray]:
    """Look up a built-in by name; ``exponential:a`` gives exp(-a x)."""
    name, _, arg = spec.strip().partition(":")
    name = _ALIASES.get(name, name)
    if name not in BUILTIN_FUNCTIONS:
        raise KeyError(f"unknown function spec {spec!r}; choose from {sorted(BUILTIN_FUNCTIONS)}")
    if arg:
        if name != "exponential":
            raise KeyError(f"function {name!r} takes no parameter")
        rate = float(arg)
        return lambda x: np.exp(-rate * x)
    return BUILTIN_FUNCTIONS[name]


def identity_residual(f: GridSignal, g: GridSignal, ys: Sequence[float]) -> float:
    """max over y of |L(f * g)(y) - L(f)(y) L(g)(y)|."""
    fg = laplace_convolution(f, g)
    return max(abs(laplace_transform(fg, y) - laplace_transform(f, y) * laplace_transform(g, y))
               for y in ys)


def convergence_study(f_spec: str, g_spec: str, y_list: Sequence[float],
                      h_list: Sequence[float], X: float = 30.0) -> list[dict]:
    """Residual of the Laplace convolution identity per step size.

    ``order`` compares each level with the previous one,
    log(r_prev / r) / log(h_prev / h), which is log2 of the ratio when h halves.
    """
    f_fn, g_fn = builtin_function(f_spec), builtin_function(g_spec)
    rows = []
    prev = None
    for h in h_list:
        grid = HalfLineGrid.from_horizon(h, X)
        r = identity_residual(GridSignal.sample(grid, f_fn), GridSignal.sample(grid, g_fn), y_list)
        row = {"h": float(h), "X": grid.horizon, "N": grid.count, "residual": r, "ratio": None, "order": None}
        if prev is not None and prev["residual"] > 0 and r > 0:
            row["ratio"] = prev["residual"] / r
            row["order"] = math.log(row["ratio"]) / math.log(prev["h"] / h)
        rows.append(row)
        prev = row
    return rows


def horizon_study(f_spec: str, g_spec: str, y_list: Sequence[float],
                  h: float, X_list: Sequence[float]) -> list[dict]:
    """Residual of the identity at fixed step for several horizons (truncation error)."""
    f_fn, g_fn = builtin_function(f_spec), builtin_function(g_spec)
    rows = []
    for X in X_list:
        grid = HalfLineGrid.from_horizon(h, X)
        r = identity_residual(GridSignal.sample(grid, f_fn), GridSignal.sample(grid, g_fn), y_list)
        rows.append({"h": float(h), "X": grid.horizon, "N": grid.count, "residual": r})
    return rows


def parse_y_grid(spec: str) -> list[float]:
    """``"a:b:n"`` -> n evenly spaced values from a to b; also accepts a comma list."""
    if ":" in spec:
        a, b, n = spec.split(":")
        n = int(n)
        if n < 1:
            raise ValueError("y-grid needs at least one point")
        ys = np.linspace(float(a), float(b), n).tolist()
    else:
        ys = [float(v) for v in spec.split(",")]
    if any(not y > 0 for y in ys):
        raise ValueError("y-grid values must be positive")
    return ys
