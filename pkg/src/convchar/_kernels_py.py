"""Pure numpy implementations of the hot loops.

Same signatures and semantics as the compiled ``_kernels`` module; used
when the extension is not built or ``CONVCHAR_PURE_PYTHON`` is set.
"""
import numpy as np


def character_residual(rows, add):
    """max over rows r and x, y of |r[x] r[y] - r[x + y]|."""
    rows = np.asarray(rows, dtype=complex)
    worst = 0.0
    for r in rows:
        worst = max(worst, float(np.abs(np.multiply.outer(r, r) - r[add]).max(initial=0.0)))
    return worst


def dalembert_residual(rows, add, sub):
    """max over rows r and x, y of |r[x] r[y] - (r[x + y] + r[x - y]) / 2|."""
    rows = np.asarray(rows, dtype=complex)
    worst = 0.0
    for r in rows:
        res = np.multiply.outer(r, r) - 0.5 * (r[add] + r[sub])
        worst = max(worst, float(np.abs(res).max(initial=0.0)))
    return worst


def group_convolve(f, g, sub):
    """out[x] = sum_u f[u] g[x - u]."""
    f = np.asarray(f, dtype=complex)
    g = np.asarray(g, dtype=complex)
    return g[sub] @ f


def cosine_convolve(f, g, add, sub):
    """out[x] = sum_u f[u] (g[x + u] + g[x - u]) / 2."""
    f = np.asarray(f, dtype=complex)
    g = np.asarray(g, dtype=complex)
    return 0.5 * ((g[add] + g[sub]) @ f)


def causal_trapezoid(f, g, h):
    """Trapezoid rule for int_0^{x_i} f(u) g(x_i - u) du on a uniform grid."""
    f = np.asarray(f, dtype=complex)
    g = np.asarray(g, dtype=complex)
    n = len(f)
    full = np.convolve(f, g)[:n]
    out = h * (full - 0.5 * (f[0] * g + f * g[0]))
    out[0] = 0.0
    return out


def exponential_equation_residual(row):
    """max over i + j < N of |row[i + j] - row[i] row[j]|."""
    row = np.asarray(row, dtype=complex)
    n = len(row)
    worst = 0.0
    for i in range(n):
        m = n - i
        res = np.abs(row[i:] - row[i] * row[:m])
        worst = max(worst, float(res.max(initial=0.0)))
    return worst
