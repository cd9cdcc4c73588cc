"""Recover the relabeling map theta from an operator with a convolution property.

Given an explicit kernel T whose rows satisfy T(f * g) = T(f) T(g) for the
Fourier, cosine or Laplace convolution, each nonzero row is read out through
a pivot witness g_* with T_row(g_*) = 1 and identified with a character,
a cosine function or an exponential exp(-z u).  Every stage records a
residual; a failing stage raises a subclass of ``ExtractionError`` that
carries the report gathered so far.
"""
from __future__ import annotations

import dataclasses
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Optional, Sequence

import numpy as np

from . import kernels
from .groups import FiniteAbelianGroup
from .laplace import BUILTIN_FUNCTIONS, GridSignal, HalfLineGrid, laplace_transform, trapezoid
from .signals import IndexSet, Signal, Spectrum, random_values
from .transforms import cosine_matrix, fourier_matrix

FOURIER = "fourier"
COSINE = "cosine"
LAPLACE = "laplace"
KINDS = (FOURIER, COSINE, LAPLACE)

DEFAULT_TOL = 1e-8
DEFAULT_TOL_EQ = 1e-6
DEFAULT_TOL_FIT = 1e-6

# relative slack inside which two moduli count as tied when picking a pivot
_TIE_RTOL = 1e-12


# ---------------------------------------------------------------------------
# operator and assignment types
# ---------------------------------------------------------------------------


def _check_kernel(kernel, shape: tuple[int, int], what: str) -> np.ndarray:
    K = np.array(kernel, dtype=complex)
    if K.ndim != 2 or K.shape != shape:
        raise ValueError(f"{what} kernel has shape {K.shape}, expected {shape}")
    if not np.all(np.isfinite(K)):
        raise ValueError(f"{what} kernel contains NaN or Inf")
    K.setflags(write=False)
    return K


@dataclass(frozen=True, eq=False)
class MultiplicativeOperator:
    """Dense kernel of T on a finite group: T(f)[row] = sum_x kernel[row, x] f[x]."""

    group: FiniteAbelianGroup
    kind: str
    kernel: np.ndarray

    def __post_init__(self):
        if self.kind not in (FOURIER, COSINE):
            raise ValueError(f"finite-group operators are 'fourier' or 'cosine', got {self.kind!r}")
        shape = (self.output_index.size(self.group), self.group.order)
        object.__setattr__(self, "kernel", _check_kernel(self.kernel, shape, self.kind))

    @property
    def output_index(self) -> IndexSet:
        return IndexSet.DUAL if self.kind == FOURIER else IndexSet.COSINE

    @property
    def n_rows(self) -> int:
        return self.kernel.shape[0]

    def apply(self, f: Signal) -> Spectrum:
        if f.group != self.group:
            raise ValueError("signal and operator live on different groups")
        return Spectrum(self.output_index, self.group, self.kernel @ f.values)

    def with_kernel(self, kernel) -> "MultiplicativeOperator":
        return dataclasses.replace(self, kernel=kernel)


@dataclass(frozen=True, eq=False)
class LaplaceOperatorKernel:
    """T_y(f) = trapezoid sum of kernel[y, :] * f over the grid, one row per y sample."""

    grid: HalfLineGrid
    y_samples: tuple[float, ...]
    kernel: np.ndarray
    kind: str = field(default=LAPLACE, init=False)

    def __post_init__(self):
        ys = tuple(float(y) for y in self.y_samples)
        if any(not y > 0 for y in ys):
            raise ValueError("y samples must be positive")
        object.__setattr__(self, "y_samples", ys)
        shape = (len(ys), self.grid.count)
        object.__setattr__(self, "kernel", _check_kernel(self.kernel, shape, LAPLACE))

    @property
    def n_rows(self) -> int:
        return self.kernel.shape[0]

    def apply(self, f: GridSignal) -> np.ndarray:
        if f.grid != self.grid:
            raise ValueError("signal and operator live on different grids")
        return self.kernel @ (self.grid.weights() * f.values)

    def with_kernel(self, kernel) -> "LaplaceOperatorKernel":
        return LaplaceOperatorKernel(self.grid, self.y_samples, kernel)


@dataclass(frozen=True)
class ThetaAssignment:
    """Per output row: ``None`` for an annihilated row, else the target.

    Targets are canonical dual indices (fourier), cosine-orbit indices
    (cosine) or positive exponents z (laplace).
    """

    kind: str
    targets: tuple[Any, ...]

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown theta kind {self.kind!r}")
        norm = []
        for t in self.targets:
            if t is None:
                norm.append(None)
            elif self.kind == LAPLACE:
                t = float(t)
                if not (t > 0 and math.isfinite(t)):
                    raise ValueError(f"Laplace exponents must be positive, got {t}")
                norm.append(t)
            else:
                if isinstance(t, bool) or int(t) != t:
                    raise ValueError(f"theta target {t!r} is not an index")
                norm.append(int(t))
        object.__setattr__(self, "targets", tuple(norm))

    def __len__(self):
        return len(self.targets)

    def __getitem__(self, i):
        return self.targets[i]

    @property
    def annihilated(self) -> list[int]:
        return [i for i, t in enumerate(self.targets) if t is None]

    def validate_for(self, n_targets: int) -> None:
        """Check finite-kind targets against the size of the dual index set."""
        for i, t in enumerate(self.targets):
            if t is not None and not 0 <= t < n_targets:
                raise ValueError(f"theta[{i}] = {t} is not a valid target index (0..{n_targets - 1})")

    def matches(self, other: "ThetaAssignment", rtol: float = 1e-8) -> bool:
        """Exact index equality; Laplace exponents compared with relative tolerance."""
        if self.kind != other.kind or len(self) != len(other):
            return False
        for a, b in zip(self.targets, other.targets):
            if (a is None) != (b is None):
                return False
            if a is None:
                continue
            if self.kind == LAPLACE:
                if abs(a - b) > rtol * abs(b):
                    return False
            elif a != b:
                return False
        return True

    def to_json(self) -> dict:
        return {"kind": self.kind, "targets": list(self.targets)}

    @classmethod
    def from_json(cls, data: dict) -> "ThetaAssignment":
        return cls(data["kind"], tuple(data["targets"]))


# ---------------------------------------------------------------------------
# diagnostics and errors
# ---------------------------------------------------------------------------


@dataclass
class RowDiagnostics:
    index: int
    label: Optional[float] = None
    annihilated: bool = False
    target: Any = None
    max_abs: float = 0.0
    pivot: Optional[int] = None
    pivot_element: Optional[list[int]] = None
    pivot_is_torsion: Optional[bool] = None
    witness_fallback_steps: Optional[int] = None
    modulus_deviation: Optional[float] = None
    equation_residual: Optional[float] = None
    evenness_residual: Optional[float] = None
    match_distance: Optional[float] = None
    runner_up_distance: Optional[float] = None
    fit_intercept: Optional[float] = None
    fit_residual: Optional[float] = None
    factorization_residual: Optional[float] = None
    failed_stage: Optional[str] = None

    def to_json(self) -> dict:
        return {k: _jsonable(v) for k, v in dataclasses.asdict(self).items()}


@dataclass
class ExtractionReport:
    kind: str
    tolerances: dict
    multiplicativity_residual: Optional[float] = None
    rows: list[RowDiagnostics] = field(default_factory=list)
    theta: Optional[ThetaAssignment] = None
    status: str = "ok"
    failed_stage: Optional[str] = None
    error: Optional[dict] = None

    @property
    def ok(self) -> bool:
        return self.status == "ok"

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "status": self.status,
            "failed_stage": self.failed_stage,
            "error": self.error,
            "tolerances": self.tolerances,
            "multiplicativity_residual": _jsonable(self.multiplicativity_residual),
            "theta": None if self.theta is None else self.theta.to_json(),
            "rows": [r.to_json() for r in self.rows],
        }


def _jsonable(v):
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    if isinstance(v, float) and not math.isfinite(v):
        return None
    return v


class ExtractionError(Exception):
    """A proof stage failed.  ``report`` holds everything computed up to the failure."""

    stage = "extraction"

    def __init__(self, message: str, row: Optional[int] = None, residual: Optional[float] = None):
        super().__init__(message)
        self.row = row
        self.residual = residual
        self.report: Optional[ExtractionReport] = None

    def to_json(self) -> dict:
        return {"type": type(self).__name__, "stage": self.stage, "row": self.row,
                "residual": _jsonable(self.residual), "message": str(self)}


class NotMultiplicative(ExtractionError):
    stage = "multiplicativity"


class ModulusViolation(ExtractionError):
    stage = "modulus"


class CharacterEquationViolation(ExtractionError):
    stage = "character_equation"


class AmbiguousMatch(ExtractionError):
    stage = "match"


class FactorizationViolation(ExtractionError):
    stage = "factorization"


class EvenWitnessNotFound(ExtractionError):
    stage = "even_witness"


class FunctionalEquationViolation(ExtractionError):
    stage = "functional_equation"


class ZeroCrossing(ExtractionError):
    stage = "zero_crossing"


class NonRealKernel(ExtractionError):
    stage = "realness"


class NonPositiveExponent(ExtractionError):
    stage = "exponent"


class FitResidualTooLarge(ExtractionError):
    stage = "fit"


def _fail(diag: RowDiagnostics, exc_type, message: str, residual: float, stage: Optional[str] = None):
    exc = exc_type(f"row {diag.index}: {message} (residual {residual:.3e})", diag.index, residual)
    if stage is not None:
        exc.stage = stage
    diag.failed_stage = exc.stage
    exc.diagnostics = diag
    raise exc


# ---------------------------------------------------------------------------
# convolution-property checks on the delta basis
# ---------------------------------------------------------------------------


def check_multiplicativity(T: MultiplicativeOperator, kind: Optional[str] = None) -> float:
    """Largest defect of the convolution property over all pairs of deltas.

    delta_x * delta_y = delta_{x+y} for the Fourier convolution and
    (delta_{y-x} + delta_{y+x})/2 for the cosine one, so by bilinearity this
    residual vanishes exactly when T is multiplicative on every signal.
    """
    kind = kind or T.kind
    g = T.group
    if kind == FOURIER:
        return float(kernels.character_residual(T.kernel, g.add_table))
    if kind == COSINE:
        return float(kernels.dalembert_residual(T.kernel, g.add_table, g.sub_table))
    raise ValueError(f"unknown kind {kind!r}")


def _pivot_order(row: np.ndarray) -> np.ndarray:
    """Indices by decreasing modulus; near-ties broken by smallest index."""
    mod = np.abs(row)
    top = mod.max()
    key = np.round(mod / top / _TIE_RTOL) if top > 0 else mod
    return np.argsort(-key, kind="stable")


def _match(diag: RowDiagnostics, chi: np.ndarray, table: np.ndarray, tol: float) -> int:
    dist = np.abs(table - chi[None, :]).max(axis=1)
    order = np.argsort(dist, kind="stable")
    best = int(order[0])
    diag.match_distance = float(dist[best])
    diag.runner_up_distance = float(dist[order[1]]) if len(order) > 1 else None
    if dist[best] > tol:
        _fail(diag, AmbiguousMatch, "no dual element within tolerance", float(dist[best]))
    if len(order) > 1 and dist[order[1]] < 10 * tol:
        _fail(diag, AmbiguousMatch, "runner-up dual element too close", float(dist[order[1]]))
    return best


# ---------------------------------------------------------------------------
# finite-group rows
# ---------------------------------------------------------------------------


def extract_row_fourier(group: FiniteAbelianGroup, row, tol: float = DEFAULT_TOL,
                        index: int = 0, pivot: Optional[int] = None) -> RowDiagnostics:
    """Identify one Fourier-kind row with conj(chi_d); ``pivot`` forces x_0."""
    row = np.asarray(row, dtype=complex)
    diag = RowDiagnostics(index=index, max_abs=float(np.abs(row).max()))
    if diag.max_abs <= tol:
        diag.annihilated = True
        return diag

    x0 = int(_pivot_order(row)[0]) if pivot is None else int(pivot)
    if abs(row[x0]) <= tol:
        raise ValueError(f"row {index}: forced pivot {x0} has |T(delta)| <= tol")
    diag.pivot = x0
    diag.pivot_element = list(group.element(x0))
    diag.pivot_is_torsion = bool(group.two_torsion[x0])

    # g_* = delta_{x0} / row[x0], so T(L_x g_*) = row[x0 + x] / row[x0]
    chi = np.conj(row[group.add_table[x0]] / row[x0])

    diag.modulus_deviation = float(np.abs(np.abs(chi) - 1.0).max())
    if diag.modulus_deviation > tol:
        _fail(diag, ModulusViolation, "chi is not unimodular", diag.modulus_deviation)

    diag.equation_residual = float(kernels.character_residual(chi[None, :], group.add_table))
    if diag.equation_residual > tol:
        _fail(diag, CharacterEquationViolation, "chi(x + y) != chi(x) chi(y)", diag.equation_residual)

    d = _match(diag, chi, group.character_table, tol)

    diag.factorization_residual = float(np.abs(row - np.conj(group.character_table[d])).max())
    if diag.factorization_residual > tol:
        _fail(diag, FactorizationViolation, "row differs from conj(chi_d)", diag.factorization_residual)
    diag.target = d
    return diag


def cosine_witness(group: FiniteAbelianGroup, row, tol: float = DEFAULT_TOL,
                   pivot: Optional[int] = None) -> tuple[int, complex, int]:
    """Pick x_0 with c = row[x_0] + row[-x_0] nonzero.

    Candidates are tried by decreasing |row[x_0]|, starting from ``pivot``
    when one is given.  Returns ``(x0, c, skipped)`` where ``skipped``
    counts rejected candidates; the even witness is then
    g_* = (delta_{x0} + delta_{-x0}) / c.
    """
    row = np.asarray(row, dtype=complex)
    neg = group.neg_index
    candidates = [int(i) for i in _pivot_order(row)]
    if pivot is not None:
        candidates.remove(int(pivot))
        candidates.insert(0, int(pivot))
    for skipped, x0 in enumerate(candidates):
        c = row[x0] + row[neg[x0]]
        if abs(c) > tol:
            return x0, complex(c), skipped
    raise EvenWitnessNotFound("no x0 with |T(delta_x0 + delta_-x0)| > tol", None,
                              float(max((abs(row[i] + row[neg[i]]) for i in candidates), default=0.0)))


def extract_row_cosine(group: FiniteAbelianGroup, row, tol: float = DEFAULT_TOL,
                       index: int = 0, pivot: Optional[int] = None) -> RowDiagnostics:
    """Identify one cosine-kind row with a cosine function c_d."""
    row = np.asarray(row, dtype=complex)
    diag = RowDiagnostics(index=index, max_abs=float(np.abs(row).max()))
    if diag.max_abs <= tol:
        diag.annihilated = True
        return diag

    try:
        x0, c, skipped = cosine_witness(group, row, tol, pivot)
    except EvenWitnessNotFound as exc:
        _fail(diag, EvenWitnessNotFound, "even witness search exhausted", exc.residual or 0.0)
    mx0 = int(group.neg_index[x0])
    diag.pivot = x0
    diag.pivot_element = list(group.element(x0))
    diag.pivot_is_torsion = bool(group.two_torsion[x0])
    diag.witness_fallback_steps = skipped

    add = group.add_table
    chi = (row[add[x0]] + row[add[mx0]]) / c
    diag.modulus_deviation = float(max(0.0, np.abs(chi).max() - 1.0))

    diag.equation_residual = float(kernels.dalembert_residual(chi[None, :], add, group.sub_table))
    if diag.equation_residual > tol:
        _fail(diag, CharacterEquationViolation, "chi fails the d'Alembert equation",
              diag.equation_residual, stage="dalembert")

    diag.evenness_residual = float(np.abs(chi - 0.5 * (chi + chi[group.neg_index])).max())
    if diag.evenness_residual > tol:
        _fail(diag, CharacterEquationViolation, "chi(y) != (chi(y) + chi(-y))/2",
              diag.evenness_residual, stage="evenness")

    table = group.cosine_table
    d = _match(diag, chi, table, tol)

    diag.factorization_residual = float(np.abs(row - table[d]).max())
    if diag.factorization_residual > tol:
        _fail(diag, FactorizationViolation, "row differs from the cosine function c_d",
              diag.factorization_residual)
    diag.target = d
    return diag


# ---------------------------------------------------------------------------
# Laplace rows
# ---------------------------------------------------------------------------


def _factorization_probes(grid: HalfLineGrid) -> list[GridSignal]:
    return [GridSignal.sample(grid, BUILTIN_FUNCTIONS[name])
            for name in ("exponential", "constant", "polynomial-cutoff")]


def extract_row_laplace(grid: HalfLineGrid, row, tol_eq: float = DEFAULT_TOL_EQ,
                        tol_fit: float = DEFAULT_TOL_FIT, index: int = 0,
                        label: Optional[float] = None) -> RowDiagnostics:
    """Identify one Laplace-kind row with exp(-z u) and return z as the target."""
    row = np.asarray(row, dtype=complex)
    diag = RowDiagnostics(index=index, label=label, max_abs=float(np.abs(row).max()))
    if diag.max_abs <= tol_eq:
        diag.annihilated = True
        return diag

    diag.equation_residual = float(kernels.exponential_equation_residual(row))
    if diag.equation_residual > tol_eq:
        _fail(diag, FunctionalEquationViolation, "chi(u + v) != chi(u) chi(v) on the grid",
              diag.equation_residual)

    # A genuine zero forces chi == 0.  Values that decay below tol_eq the way
    # exp(-z u) predicts are not zeros; only the resolved window is examined.
    step = abs(row[1])
    if step <= tol_eq:
        _fail(diag, ZeroCrossing, "row vanishes one grid step from the origin", step)
    if step < 1.0:
        n_window = min(len(row), int(math.floor(math.log(tol_eq) / math.log(step))) + 1)
    else:
        n_window = len(row)
    window = row[:max(n_window, 2)]
    smallest = float(np.abs(window).min())
    if smallest <= tol_eq:
        _fail(diag, ZeroCrossing, "row vanishes inside its resolved window", smallest)

    imag = float(np.abs(window.imag).max())
    if imag > tol_eq:
        _fail(diag, NonRealKernel, "row has a non-real value", imag)
    lowest = float(window.real.min())
    if lowest <= 0:
        _fail(diag, NonRealKernel, "row has a non-positive value", -lowest)

    u = grid.nodes[:len(window)]
    v = -np.log(window.real)
    A = np.column_stack([u, np.ones_like(u)])
    (z, b), *_ = np.linalg.lstsq(A, v, rcond=None)
    diag.fit_intercept = float(b)
    diag.fit_residual = float(np.abs(v - (z * u + b)).max())
    if abs(b) > tol_fit:
        _fail(diag, FitResidualTooLarge, "fit intercept is not 0 (chi(0) != 1)", abs(float(b)))
    if diag.fit_residual > tol_fit:
        _fail(diag, FitResidualTooLarge, "-log chi is not linear in u", diag.fit_residual)
    if not z > 0:
        _fail(diag, NonPositiveExponent, f"fitted exponent z = {z:.6g} is not positive", float(-z))

    diag.factorization_residual = max(
        abs(trapezoid(grid, row * f.values) - laplace_transform(f, z)) for f in _factorization_probes(grid))
    if diag.factorization_residual > tol_fit:
        _fail(diag, FactorizationViolation, "T_y(f) differs from L(f)(z)", diag.factorization_residual)
    diag.target = float(z)
    return diag


# ---------------------------------------------------------------------------
# whole-operator drivers
# ---------------------------------------------------------------------------


def _run_rows(report: ExtractionReport, n_rows: int, fn: Callable[[int], RowDiagnostics],
              workers: int) -> ExtractionReport:
    def safe(i):
        try:
            return fn(i), None
        except ExtractionError as exc:
            return getattr(exc, "diagnostics", RowDiagnostics(index=i, failed_stage=exc.stage)), exc

    if workers > 1 and n_rows > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(safe, range(n_rows)))
    else:
        results = [safe(i) for i in range(n_rows)]

    report.rows = [diag for diag, _ in results]
    first = next((exc for _, exc in results if exc is not None), None)
    if first is not None:
        _attach(report, first)
        raise first
    targets = tuple(None if d.annihilated else d.target for d in report.rows)
    report.theta = ThetaAssignment(report.kind, targets)
    return report


def _attach(report: ExtractionReport, exc: ExtractionError) -> None:
    report.status = "failed"
    report.failed_stage = exc.stage
    report.error = exc.to_json()
    exc.report = report


def _extract_finite(T: MultiplicativeOperator, kind: str, row_fn, tol: float,
                    pivots: Optional[dict], enforce_precondition: bool, workers: int) -> ExtractionReport:
    if T.kind != kind:
        raise ValueError(f"expected a {kind} operator, got {T.kind}")
    report = ExtractionReport(kind=kind, tolerances={"tol": tol})
    report.multiplicativity_residual = check_multiplicativity(T, kind)
    if enforce_precondition and report.multiplicativity_residual > tol:
        exc = NotMultiplicative(
            f"{kind} convolution property fails on the delta basis "
            f"(residual {report.multiplicativity_residual:.3e} > tol {tol:.1e})",
            None, report.multiplicativity_residual)
        _attach(report, exc)
        raise exc
    pivots = pivots or {}
    return _run_rows(report, T.n_rows,
                     lambda i: row_fn(T.group, T.kernel[i], tol, index=i, pivot=pivots.get(i)),
                     workers)


def extract_theta_fourier(T: MultiplicativeOperator, tol: float = DEFAULT_TOL, *,
                          pivots: Optional[dict] = None, enforce_precondition: bool = True,
                          workers: int = 1) -> ExtractionReport:
    """theta for T = F o theta.  ``pivots`` maps row -> forced pivot index."""
    return _extract_finite(T, FOURIER, extract_row_fourier, tol, pivots, enforce_precondition, workers)


def extract_theta_cosine(T: MultiplicativeOperator, tol: float = DEFAULT_TOL, *,
                         pivots: Optional[dict] = None, enforce_precondition: bool = True,
                         workers: int = 1) -> ExtractionReport:
    """theta for T = C o theta, via an even witness per row."""
    return _extract_finite(T, COSINE, extract_row_cosine, tol, pivots, enforce_precondition, workers)


def extract_theta_laplace(K: LaplaceOperatorKernel, tol_eq: float = DEFAULT_TOL_EQ,
                          tol_fit: float = DEFAULT_TOL_FIT, *, workers: int = 1) -> ExtractionReport:
    report = ExtractionReport(kind=LAPLACE, tolerances={"tol_eq": tol_eq, "tol_fit": tol_fit})
    try:
        return _run_rows(
            report, K.n_rows,
            lambda i: extract_row_laplace(K.grid, K.kernel[i], tol_eq, tol_fit, index=i, label=K.y_samples[i]),
            workers)
    finally:
        eq = [r.equation_residual for r in report.rows if r.equation_residual is not None]
        report.multiplicativity_residual = max(eq) if eq else 0.0


def extract(T, tol: Optional[float] = None, tol_eq: float = DEFAULT_TOL_EQ,
            tol_fit: float = DEFAULT_TOL_FIT, **kwargs) -> ExtractionReport:
    """Dispatch on ``T.kind``."""
    if T.kind == LAPLACE:
        return extract_theta_laplace(T, tol_eq, tol_fit, **kwargs)
    fn = extract_theta_fourier if T.kind == FOURIER else extract_theta_cosine
    return fn(T, DEFAULT_TOL if tol is None else tol, **kwargs)


# ---------------------------------------------------------------------------
# factorization check on random signals
# ---------------------------------------------------------------------------


def verify_factorization(T, theta: ThetaAssignment, trials: int = 100, seed=0) -> float:
    """max |T(f) - transform(f) o theta| over ``trials`` random signals f."""
    if theta.kind != T.kind or len(theta) != T.n_rows:
        raise ValueError(f"theta ({theta.kind}, {len(theta)} rows) does not fit a "
                         f"{T.kind} operator with {T.n_rows} rows")
    rng = np.random.default_rng(seed)
    worst = 0.0
    if T.kind == LAPLACE:
        grid = T.grid
        for _ in range(trials):
            f = GridSignal(grid, random_values(rng, grid.count))
            got = T.apply(f)
            want = np.array([0.0 if z is None else laplace_transform(f, z) for z in theta.targets])
            worst = max(worst, float(np.abs(got - want).max(initial=0.0)))
        return worst

    g = T.group
    M = fourier_matrix(g) if T.kind == FOURIER else cosine_matrix(g)
    theta.validate_for(M.shape[0])
    for _ in range(trials):
        f = Signal(g, random_values(rng, g.order))
        spectrum = M @ f.values
        want = np.array([0.0 if t is None else spectrum[t] for t in theta.targets], dtype=complex)
        got = T.apply(f).values
        worst = max(worst, float(np.abs(got - want).max(initial=0.0)))
    return worst
