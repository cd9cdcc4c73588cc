"""Ground-truth and adversarial operators for the characterizer."""
from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from .characterizer import (
    COSINE,
    FOURIER,
    LAPLACE,
    LaplaceOperatorKernel,
    MultiplicativeOperator,
    ThetaAssignment,
)
from .groups import FiniteAbelianGroup
from .laplace import HalfLineGrid
from .transforms import cosine_matrix, fourier_matrix

THETA_SHAPES = ("permutation", "noninjective", "partial")


def transform_matrix(g: FiniteAbelianGroup, kind: str) -> np.ndarray:
    if kind == FOURIER:
        return fourier_matrix(g)
    if kind == COSINE:
        return cosine_matrix(g).astype(complex)
    raise ValueError(f"unknown finite kind {kind!r}")


def n_outputs(g: FiniteAbelianGroup, kind: str) -> int:
    return g.order if kind == FOURIER else len(g.cosine_orbits)


def build_from_theta(g: FiniteAbelianGroup, kind: str, theta: ThetaAssignment) -> MultiplicativeOperator:
    """Kernel of (transform) o theta: row i is the transform row theta[i], or zeros."""
    M = transform_matrix(g, kind)
    if theta.kind != kind:
        raise ValueError(f"theta is for {theta.kind}, operator is {kind}")
    if len(theta) != M.shape[0]:
        raise ValueError(f"theta has {len(theta)} rows, the {kind} index set has {M.shape[0]}")
    theta.validate_for(M.shape[0])
    K = np.zeros_like(M)
    for i, t in enumerate(theta.targets):
        if t is not None:
            K[i] = M[t]
    return MultiplicativeOperator(g, kind, K)


def build_laplace_from_exponents(grid: HalfLineGrid, y_samples: Sequence[float],
                                 z_of_y: Sequence[Optional[float]]) -> LaplaceOperatorKernel:
    """kernel[y, u_i] = exp(-z(y) u_i); ``None`` gives a zero row."""
    if len(z_of_y) != len(y_samples):
        raise ValueError("need one exponent (or None) per y sample")
    K = np.zeros((len(y_samples), grid.count))
    for i, z in enumerate(z_of_y):
        if z is None:
            continue
        if not z > 0:
            raise ValueError(f"exponent for y = {y_samples[i]} must be positive, got {z}")
        K[i] = np.exp(-z * grid.nodes)
    return LaplaceOperatorKernel(grid, tuple(y_samples), K)


def perturb(T, epsilon: float, seed=0):
    """Add complex noise with modulus at most ``epsilon`` to every kernel entry."""
    if epsilon < 0:
        raise ValueError("epsilon must be nonnegative")
    if epsilon == 0:
        return T.with_kernel(T.kernel)
    rng = np.random.default_rng(seed)
    r = epsilon * rng.uniform(0.0, 1.0, T.kernel.shape)
    phi = rng.uniform(0.0, 2 * np.pi, T.kernel.shape)
    return T.with_kernel(T.kernel + r * np.exp(1j * phi))


def random_theta(g: FiniteAbelianGroup, kind: str, rng: np.random.Generator,
                 shape: Optional[str] = None) -> ThetaAssignment:
    """Draw a planted theta of the given shape (random shape when ``None``).

    permutation: a bijection of the index set; noninjective: independent
    uniform targets with at least one collision when possible; partial: a
    permutation with between 1 and n-1 rows annihilated (1 when n = 1).
    """
    n = n_outputs(g, kind)
    shape = shape or THETA_SHAPES[int(rng.integers(len(THETA_SHAPES)))]
    if shape == "permutation":
        targets = [int(t) for t in rng.permutation(n)]
    elif shape == "noninjective":
        targets = [int(t) for t in rng.integers(0, n, n)]
        if n > 1 and len(set(targets)) == n:
            i, j = rng.choice(n, 2, replace=False)
            targets[int(i)] = targets[int(j)]
    elif shape == "partial":
        targets = [int(t) for t in rng.permutation(n)]
        k = int(rng.integers(1, max(n, 2)))
        for i in rng.choice(n, k, replace=False):
            targets[int(i)] = None
    else:
        raise ValueError(f"unknown theta shape {shape!r}; choose from {THETA_SHAPES}")
    return ThetaAssignment(kind, tuple(targets))


def theta_preset(g: FiniteAbelianGroup, kind: str, name: str, seed=0) -> ThetaAssignment:
    """Named thetas: identity, zero, constant, random, or ``mul:a`` (k -> a k, cyclic groups)."""
    n = n_outputs(g, kind)
    if name == "identity":
        return ThetaAssignment(kind, tuple(range(n)))
    if name == "zero":
        return ThetaAssignment(kind, (None,) * n)
    if name == "constant":
        return ThetaAssignment(kind, (0,) * n)
    if name == "random" or name in THETA_SHAPES:
        return random_theta(g, kind, np.random.default_rng(seed), None if name == "random" else name)
    if name.startswith("mul:"):
        if kind != FOURIER:
            raise ValueError("mul:a presets are defined for the fourier kind")
        a = int(name[4:])
        targets = [g.index(tuple((a * c) % m for c, m in zip(g.element(k), g.factors))) for k in range(n)]
        return ThetaAssignment(kind, tuple(targets))
    raise ValueError(f"unknown theta preset {name!r}")


def laplace_preset(y_samples: Sequence[float], name: str) -> list[Optional[float]]:
    """identity (z = y), zero, ``shift:c`` (z = c + y) or ``const:c`` (z = c)."""
    if name == "identity":
        return [float(y) for y in y_samples]
    if name == "zero":
        return [None] * len(y_samples)
    if name.startswith("shift:"):
        c = float(name[6:])
        return [c + y for y in y_samples]
    if name.startswith("const:"):
        c = float(name[6:])
        return [c] * len(y_samples)
    raise ValueError(f"unknown Laplace theta preset {name!r}")


__all__ = [
    "LAPLACE",
    "THETA_SHAPES",
    "build_from_theta",
    "build_laplace_from_exponents",
    "laplace_preset",
    "n_outputs",
    "perturb",
    "random_theta",
    "theta_preset",
    "transform_matrix",
]
