"""Finite abelian groups as products of cyclic groups.

Elements are plain tuples of residues. The canonical enumeration is
lexicographic by factor (the first factor varies slowest), which is the
order used to index every signal and kernel column in the package.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

GroupElement = tuple[int, ...]


class GroupError(ValueError):
    """Raised for malformed group specs or elements that do not belong to a group."""


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """The group Z_{n_1} x ... x Z_{n_k} with counting measure."""

    factors: tuple[int, ...]

    def __post_init__(self):
        factors = tuple(int(n) for n in self.factors)
        if not factors:
            raise GroupError("a group needs at least one cyclic factor")
        if any(n < 1 for n in factors):
            raise GroupError(f"cyclic orders must be >= 1, got {factors}")
        object.__setattr__(self, "factors", factors)

    @classmethod
    def cyclic(cls, n: int) -> "FiniteAbelianGroup":
        return cls((n,))

    @classmethod
    def parse(cls, spec: str | int) -> "FiniteAbelianGroup":
        """Parse ``"n1xn2x...xnk"`` (e.g. ``"4x3"``); a bare integer is cyclic."""
        if isinstance(spec, int):
            return cls((spec,))
        parts = str(spec).strip().lower().replace("×", "x").split("x")
        try:
            factors = tuple(int(p) for p in parts)
        except ValueError:
            raise GroupError(f"malformed group spec {spec!r}; expected e.g. '4x3'") from None
        return cls(factors)

    @property
    def spec(self) -> str:
        return "x".join(str(n) for n in self.factors)

    @property
    def rank(self) -> int:
        return len(self.factors)

    @cached_property
    def order(self) -> int:
        return math.prod(self.factors)

    def __repr__(self):
        return f"FiniteAbelianGroup({self.spec})"

    # -- element bookkeeping ---------------------------------------------

    @cached_property
    def coords(self) -> np.ndarray:
        """``order x rank`` array; row i holds the coordinates of element i."""
        grid = np.indices(self.factors).reshape(self.rank, -1).T
        return _readonly(np.ascontiguousarray(grid, dtype=np.intp))

    def elements(self) -> list[GroupElement]:
        return list(itertools.product(*(range(n) for n in self.factors)))

    def validate(self, a) -> GroupElement:
        a = tuple(int(c) for c in a)
        if len(a) != self.rank:
            raise GroupError(f"element {a} has {len(a)} coordinates, group {self.spec} needs {self.rank}")
        if any(not 0 <= c < n for c, n in zip(a, self.factors)):
            raise GroupError(f"element {a} is not reduced modulo {self.factors}")
        return a

    def index(self, a) -> int:
        return int(np.ravel_multi_index(self.validate(a), self.factors))

    def element(self, i: int) -> GroupElement:
        if not 0 <= i < self.order:
            raise GroupError(f"index {i} out of range for group of order {self.order}")
        return tuple(int(c) for c in np.unravel_index(i, self.factors))

    def zero(self) -> GroupElement:
        return (0,) * self.rank

    # -- index tables used by the numeric kernels --------------------------

    def _ravel(self, coords: np.ndarray) -> np.ndarray:
        return np.ravel_multi_index(tuple(np.moveaxis(coords, -1, 0)), self.factors)

    @cached_property
    def add_table(self) -> np.ndarray:
        """``add_table[i, j]`` is the index of element_i + element_j."""
        n = np.asarray(self.factors)
        s = (self.coords[:, None, :] + self.coords[None, :, :]) % n
        return _readonly(np.ascontiguousarray(self._ravel(s), dtype=np.intp))

    @cached_property
    def sub_table(self) -> np.ndarray:
        """``sub_table[i, j]`` is the index of element_i - element_j."""
        n = np.asarray(self.factors)
        s = (self.coords[:, None, :] - self.coords[None, :, :]) % n
        return _readonly(np.ascontiguousarray(self._ravel(s), dtype=np.intp))

    @cached_property
    def neg_index(self) -> np.ndarray:
        """``neg_index[i]`` is the index of -element_i."""
        n = np.asarray(self.factors)
        return _readonly(np.ascontiguousarray(self._ravel((-self.coords) % n), dtype=np.intp))

    @cached_property
    def two_torsion(self) -> np.ndarray:
        """Boolean mask of elements with x = -x."""
        return _readonly(self.neg_index == np.arange(self.order))

    # -- dual side ----------------------------------------------------------

    @cached_property
    def character_table(self) -> np.ndarray:
        """``order x order`` matrix, ``[d, x] = chi_d(x)`` over canonical orders."""
        # phases are accumulated as exact integers modulo lcm(n_j) before exp()
        L = math.lcm(*self.factors)
        scale = np.array([L // n for n in self.factors], dtype=np.int64)
        freq = self.coords.astype(np.int64) * scale
        phase = (freq @ self.coords.T.astype(np.int64)) % L
        return _readonly(_unit_roots(L)[phase])

    @cached_property
    def cosine_orbits(self) -> tuple[tuple[int, ...], ...]:
        """Orbits of negation on dual indices, ordered by their smallest member."""
        seen = set()
        orbits = []
        for k in range(self.order):
            if k in seen:
                continue
            orbit = tuple(sorted({k, int(self.neg_index[k])}))
            seen.update(orbit)
            orbits.append(orbit)
        return tuple(orbits)

    @cached_property
    def cosine_table(self) -> np.ndarray:
        """``n_orbits x order`` matrix of cosine functions (chi + chi o neg)/2."""
        X = self.character_table
        reps = np.array([o[0] for o in self.cosine_orbits], dtype=np.intp)
        table = 0.5 * (X[reps] + X[reps][:, self.neg_index])
        # cosine functions are real on finite groups; drop round-off imaginary parts
        return _readonly(np.ascontiguousarray(table.real))


def _unit_roots(L: int) -> np.ndarray:
    roots = np.exp(2j * np.pi * np.arange(L) / L)
    # snap the quarter turns so that e.g. chi(1) on Z_4 is exactly i
    for q in range(4):
        if (q * L) % 4 == 0:
            roots[q * L // 4] = (1, 1j, -1, -1j)[q]
    return roots


@dataclass(frozen=True)
class DualCharacter:
    """The character x -> exp(2 pi i sum_j k_j x_j / n_j)."""

    freq: GroupElement


@dataclass(frozen=True, eq=True)
class CosineClassElement:
    """The cosine function (chi_k + chi_{-k})/2 attached to the orbit {k, -k}.

    ``orbit`` is stored sorted, so two elements compare equal exactly when
    their orbits coincide.
    """

    orbit: tuple[GroupElement, ...]

    def __post_init__(self):
        object.__setattr__(self, "orbit", tuple(sorted(set(self.orbit))))

    @property
    def freq(self) -> GroupElement:
        return self.orbit[0]


def add(g: FiniteAbelianGroup, a, b) -> GroupElement:
    a, b = g.validate(a), g.validate(b)
    return tuple((x + y) % n for x, y, n in zip(a, b, g.factors))


def neg(g: FiniteAbelianGroup, a) -> GroupElement:
    a = g.validate(a)
    return tuple((-x) % n for x, n in zip(a, g.factors))


def sub(g: FiniteAbelianGroup, a, b) -> GroupElement:
    return add(g, a, neg(g, b))


def char_eval(g: FiniteAbelianGroup, d: DualCharacter, x) -> complex:
    return complex(g.character_table[g.index(d.freq), g.index(x)])


def cosine_eval(g: FiniteAbelianGroup, c: CosineClassElement, x) -> float:
    k = g.index(c.freq)
    return 0.5 * (char_eval(g, DualCharacter(c.freq), x)
                  + complex(g.character_table[int(g.neg_index[k]), g.index(x)])).real


def enumerate_duals(g: FiniteAbelianGroup) -> list[DualCharacter]:
    return [DualCharacter(k) for k in g.elements()]


def enumerate_cosine_class(g: FiniteAbelianGroup) -> list[CosineClassElement]:
    return [CosineClassElement(tuple(g.element(k) for k in orbit)) for orbit in g.cosine_orbits]
