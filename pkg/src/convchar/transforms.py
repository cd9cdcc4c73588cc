"""Fourier and cosine transforms and convolutions on finite abelian groups.

All sums use counting measure and are evaluated directly, without FFTs.
"""
from __future__ import annotations

import numpy as np

from . import kernels
from .groups import FiniteAbelianGroup, GroupError
from .signals import IndexSet, Signal, Spectrum, _same_group, reflect, shift


class EvennessError(ValueError):
    """The d'Alembert shift identity was requested for a non-even signal."""


def fourier_matrix(g: FiniteAbelianGroup) -> np.ndarray:
    """Rows are conj(chi_d); ``fourier_matrix(g) @ f`` is the Fourier transform."""
    return np.conj(g.character_table)


def cosine_matrix(g: FiniteAbelianGroup) -> np.ndarray:
    return g.cosine_table


def fourier_transform(f: Signal) -> Spectrum:
    return Spectrum(IndexSet.DUAL, f.group, fourier_matrix(f.group) @ f.values)


def inverse_fourier_transform(F: Spectrum) -> Signal:
    if F.index_set is not IndexSet.DUAL:
        raise ValueError("inverse Fourier transform needs a DUAL spectrum")
    g = F.group
    return Signal(g, (g.character_table.T @ F.values) / g.order)


def cosine_transform(f: Signal) -> Spectrum:
    # no conjugate: cosine functions are real
    return Spectrum(IndexSet.COSINE, f.group, cosine_matrix(f.group) @ f.values)


def fourier_convolution(f: Signal, g: Signal) -> Signal:
    _same_group(f, g)
    G = f.group
    return Signal(G, kernels.group_convolve(f.values, g.values, G.sub_table))


def cosine_convolution(f: Signal, g: Signal) -> Signal:
    _same_group(f, g)
    G = f.group
    return Signal(G, kernels.cosine_convolve(f.values, g.values, G.add_table, G.sub_table))


def _sup(s: Signal) -> float:
    return float(np.abs(s.values).max(initial=0.0))


def check_shift_lemma(g: Signal, x, y) -> float:
    """Sup-norm residual of L_x g * L_y g = g * L_{x+y} g."""
    G = g.group
    xy = G.element(int(G.add_table[G.index(x), G.index(y)]))
    lhs = fourier_convolution(shift(g, x), shift(g, y))
    rhs = fourier_convolution(g, shift(g, xy))
    return _sup(lhs - rhs)


def check_dalembert_lemma(g_even: Signal, x, y, tol: float = 0.0) -> float:
    """Sup-norm residual of L_y g *_c L_x g = g *_c (L_{x+y} g + L_{x-y} g)/2.

    Raises EvennessError unless g(u) = g(-u) within ``tol``.
    """
    G = g_even.group
    if not g_even.is_even(tol):
        raise EvennessError("d'Alembert shift identity needs an even signal g(u) = g(-u)")
    ix, iy = G.index(x), G.index(y)
    x_plus_y = G.element(int(G.add_table[ix, iy]))
    x_minus_y = G.element(int(G.sub_table[ix, iy]))
    lhs = cosine_convolution(shift(g_even, y), shift(g_even, x))
    rhs = cosine_convolution(g_even, (shift(g_even, x_plus_y) + shift(g_even, x_minus_y)) * 0.5)
    return _sup(lhs - rhs)


def convolution_theorem_residual(f: Signal, g: Signal, kind: str = "fourier") -> float:
    """max |T(f * g) - T(f) T(g)| for the Fourier or cosine pair."""
    if kind == "fourier":
        lhs = fourier_transform(fourier_convolution(f, g))
        rhs = fourier_transform(f) * fourier_transform(g)
    elif kind == "cosine":
        lhs = cosine_transform(cosine_convolution(f, g))
        rhs = cosine_transform(f) * cosine_transform(g)
    else:
        raise ValueError(f"unknown transform kind {kind!r}")
    return float(np.abs(lhs.values - rhs.values).max(initial=0.0))


def inversion_residual(f: Signal) -> float:
    back = inverse_fourier_transform(fourier_transform(f))
    return _sup(back - f)


def cosine_associativity_residual(f: Signal, g: Signal, h: Signal) -> float:
    """Reported, never asserted: associativity of the cosine convolution is not guaranteed."""
    lhs = cosine_convolution(cosine_convolution(f, g), h)
    rhs = cosine_convolution(f, cosine_convolution(g, h))
    return _sup(lhs - rhs)


def reflect_shift_residual(s: Signal, z) -> float:
    G = s.group
    mz = G.element(int(G.neg_index[G.index(z)]))
    return _sup(reflect(shift(s, z)) - shift(reflect(s), mz))


__all__ = [
    "EvennessError",
    "GroupError",
    "check_dalembert_lemma",
    "check_shift_lemma",
    "convolution_theorem_residual",
    "cosine_associativity_residual",
    "cosine_convolution",
    "cosine_matrix",
    "cosine_transform",
    "fourier_convolution",
    "fourier_matrix",
    "fourier_transform",
    "inverse_fourier_transform",
    "inversion_residual",
]
