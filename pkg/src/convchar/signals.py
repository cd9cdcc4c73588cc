"""Complex signals on a finite abelian group and the operators the proofs use."""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass

import numpy as np

from .groups import FiniteAbelianGroup, GroupError


class IndexSet(str, enum.Enum):
    DUAL = "dual"
    COSINE = "cosine"

    def size(self, group: FiniteAbelianGroup) -> int:
        return group.order if self is IndexSet.DUAL else len(group.cosine_orbits)


def _as_finite_vector(values, length: int, what: str) -> np.ndarray:
    arr = np.array(values, dtype=complex).reshape(-1)
    if arr.shape[0] != length:
        raise ValueError(f"{what} has {arr.shape[0]} entries, expected {length}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{what} contains NaN or Inf")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Signal:
    """A function on ``group`` stored in canonical element order."""

    group: FiniteAbelianGroup
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _as_finite_vector(self.values, self.group.order, "signal"))

    def __len__(self):
        return self.group.order

    def __getitem__(self, x):
        if isinstance(x, tuple):
            x = self.group.index(x)
        return complex(self.values[x])

    def __add__(self, other: "Signal") -> "Signal":
        _same_group(self, other)
        return Signal(self.group, self.values + other.values)

    def __sub__(self, other: "Signal") -> "Signal":
        _same_group(self, other)
        return Signal(self.group, self.values - other.values)

    def __mul__(self, c) -> "Signal":
        return Signal(self.group, self.values * complex(c))

    __rmul__ = __mul__

    def __truediv__(self, c) -> "Signal":
        return Signal(self.group, self.values / complex(c))

    def __eq__(self, other):
        if not isinstance(other, Signal):
            return NotImplemented
        return self.group == other.group and np.array_equal(self.values, other.values)

    def norm1(self) -> float:
        return float(np.abs(self.values).sum())

    def is_even(self, tol: float = 0.0) -> bool:
        return bool(np.abs(self.values - self.values[self.group.neg_index]).max() <= tol)

    def to_json(self) -> list[list[float]]:
        return complex_to_pairs(self.values)

    @classmethod
    def from_json(cls, group: FiniteAbelianGroup, data) -> "Signal":
        return cls(group, pairs_to_complex(data))


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Values over ``enumerate_duals`` (DUAL) or ``enumerate_cosine_class`` (COSINE)."""

    index_set: IndexSet
    group: FiniteAbelianGroup
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "index_set", IndexSet(self.index_set))
        size = self.index_set.size(self.group)
        object.__setattr__(self, "values", _as_finite_vector(self.values, size, "spectrum"))

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return complex(self.values[i])

    def __mul__(self, other: "Spectrum") -> "Spectrum":
        if (self.index_set, self.group) != (other.index_set, other.group):
            raise ValueError("spectra live on different index sets")
        return Spectrum(self.index_set, self.group, self.values * other.values)


def _same_group(a: Signal, b: Signal):
    if a.group != b.group:
        raise GroupError(f"signals live on different groups: {a.group.spec} vs {b.group.spec}")


def complex_to_pairs(values) -> list:
    arr = np.asarray(values, dtype=complex)
    pairs = np.stack([arr.real, arr.imag], axis=-1)
    return pairs.tolist()


def pairs_to_complex(data) -> np.ndarray:
    arr = np.asarray(data, dtype=float)
    if arr.ndim == 0 or arr.shape[-1] != 2:
        raise ValueError("expected [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def dumps_signal(s: Signal) -> str:
    return json.dumps(s.to_json())


def shift(s: Signal, z) -> Signal:
    """(L_z s)(u) = s(u - z)."""
    g = s.group
    k = g.index(z)
    return Signal(g, s.values[g.sub_table[:, k]])


def reflect(s: Signal) -> Signal:
    """u -> s(-u)."""
    return Signal(s.group, s.values[s.group.neg_index])


def evenize(s: Signal) -> Signal:
    return s + reflect(s)


def delta(g: FiniteAbelianGroup, x) -> Signal:
    v = np.zeros(g.order, dtype=complex)
    v[g.index(x)] = 1.0
    return Signal(g, v)


def zeros(g: FiniteAbelianGroup) -> Signal:
    return Signal(g, np.zeros(g.order, dtype=complex))


def random_signal(g: FiniteAbelianGroup, seed) -> Signal:
    """Real and imaginary parts drawn independently, uniform on [-1, 1]."""
    rng = np.random.default_rng(seed)
    return Signal(g, random_values(rng, g.order))


def random_values(rng: np.random.Generator, n: int) -> np.ndarray:
    return rng.uniform(-1.0, 1.0, n) + 1j * rng.uniform(-1.0, 1.0, n)
