"""Command-line entry point: ``convchar <subcommand> ...``.

Exit codes: 0 success, 1 a residual or extraction stage failed (the report
is still written), 2 usage or I/O error.  Reports are JSON with a
``schema_version`` field and contain no timestamps, so identical arguments
give byte-identical output.
"""
from __future__ import annotations

import csv
import io
import json
import sys

import click
import numpy as np

from . import characterizer as ch
from . import factory, laplace, transforms
from .groups import FiniteAbelianGroup, GroupError
from .kernelfile import KernelFileError, dump_operator, load_operator, load_theta, operator_to_json
from .signals import evenize, random_signal

REPORT_SCHEMA_VERSION = 1


class InputError(click.ClickException):
    """Unreadable or malformed input file."""

    exit_code = 2


def _emit(report: dict, out) -> None:
    text = json.dumps(report, indent=2) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _header(command: str, **fields) -> dict:
    return {"schema_version": REPORT_SCHEMA_VERSION, "command": command, **fields}


def _group(spec: str) -> FiniteAbelianGroup:
    try:
        return FiniteAbelianGroup.parse(spec)
    except GroupError as exc:
        raise click.BadParameter(str(exc), param_hint="--group") from exc


def _y_grid(spec: str) -> list[float]:
    try:
        return laplace.parse_y_grid(spec)
    except ValueError as exc:
        raise click.BadParameter(str(exc), param_hint="--y-grid") from exc


@click.group()
def main():
    """Transforms characterized by their convolution property."""


# -- verify-identities -------------------------------------------------------


def identity_residuals(g: FiniteAbelianGroup, trials: int, seed: int) -> dict:
    """Max residual of every identity on ``trials`` seeded random inputs.

    Returns ``{name: {"residual", "bound", "asserted"}}``; bounds of the
    convolution theorems are relative to 1 + |f|_1 |g|_1.
    """
    rng = np.random.default_rng(seed)
    seeds = rng.integers(0, 2**63 - 1, size=(trials, 3))
    elems = g.elements()
    if g.order ** 2 <= 4096:
        pairs = [(x, y) for x in elems for y in elems]
    else:
        idx = rng.integers(0, g.order, size=(256, 2))
        pairs = [(g.element(int(i)), g.element(int(j))) for i, j in idx]

    acc = {
        "fourier_convolution_theorem": 0.0,
        "cosine_convolution_theorem": 0.0,
        "shift_lemma": 0.0,
        "dalembert_lemma": 0.0,
        "reflection_conjugates_shift": 0.0,
        "fourier_inversion": 0.0,
        "fourier_convolution_commutativity": 0.0,
        "fourier_convolution_associativity": 0.0,
        "cosine_convolution_associativity": 0.0,
    }

    def bump(name, value):
        acc[name] = max(acc[name], float(value))

    for s_f, s_g, s_h in seeds:
        f, h_, k = random_signal(g, int(s_f)), random_signal(g, int(s_g)), random_signal(g, int(s_h))
        scale = 1.0 + f.norm1() * h_.norm1()
        bump("fourier_convolution_theorem", transforms.convolution_theorem_residual(f, h_, "fourier") / scale)
        bump("cosine_convolution_theorem", transforms.convolution_theorem_residual(f, h_, "cosine") / scale)
        bump("fourier_inversion", transforms.inversion_residual(f))
        fg = transforms.fourier_convolution(f, h_)
        gf = transforms.fourier_convolution(h_, f)
        bump("fourier_convolution_commutativity", np.abs((fg - gf).values).max())
        lhs = transforms.fourier_convolution(fg, k)
        rhs = transforms.fourier_convolution(f, transforms.fourier_convolution(h_, k))
        bump("fourier_convolution_associativity", np.abs((lhs - rhs).values).max() / (1.0 + f.norm1() * h_.norm1() * k.norm1()))
        bump("cosine_convolution_associativity", transforms.cosine_associativity_residual(f, h_, k))
        even = evenize(f)
        for x, y in pairs:
            bump("shift_lemma", transforms.check_shift_lemma(f, x, y))
            bump("dalembert_lemma", transforms.check_dalembert_lemma(even, x, y))
            bump("reflection_conjugates_shift", transforms.reflect_shift_residual(f, x))

    bounds = {
        "fourier_convolution_theorem": 1e-9,
        "cosine_convolution_theorem": 1e-9,
        "shift_lemma": 1e-10,
        "dalembert_lemma": 1e-10,
        "reflection_conjugates_shift": 0.0,
        "fourier_inversion": 1e-9,
        "fourier_convolution_commutativity": 1e-12 * max(g.order, 1),
        "fourier_convolution_associativity": 1e-12 * max(g.order, 1),
        "cosine_convolution_associativity": None,
    }
    return {name: {"residual": acc[name], "bound": bounds[name], "asserted": bounds[name] is not None}
            for name in acc}


@main.command("verify-identities")
@click.option("--group", "group_spec", required=True, help="Group spec, e.g. 4x3.")
@click.option("--trials", default=10, show_default=True, type=click.IntRange(min=1))
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--out", type=click.Path(dir_okay=False, writable=True))
def verify_identities(group_spec, trials, seed, out):
    """Residuals of the convolution theorems and shift lemmas on random signals."""
    g = _group(group_spec)
    results = identity_residuals(g, trials, seed)
    ok = all(r["residual"] <= r["bound"] for r in results.values() if r["asserted"])
    report = _header("verify-identities", group=g.spec, trials=trials, seed=seed,
                     status="ok" if ok else "violation",
                     residuals={k: v["residual"] for k, v in results.items()},
                     identities=results)
    _emit(report, out)
    sys.exit(0 if ok else 1)


# -- laplace-study -----------------------------------------------------------


@main.command("laplace-study")
@click.option("--h", "h", required=True, type=click.FloatRange(min=0, min_open=True), help="Coarsest grid step.")
@click.option("--X", "X", required=True, type=click.FloatRange(min=0, min_open=True), help="Truncation horizon.")
@click.option("--functions", default="exponential,exponential", show_default=True,
              help="Two built-ins f,g: exponential[:rate], constant, polynomial-cutoff, zero.")
@click.option("--y-grid", "y_grid", default="0.5:2:4", show_default=True, help="a:b:n or a comma list.")
@click.option("--levels", default=3, show_default=True, type=click.IntRange(min=1),
              help="Number of step sizes h, h/2, h/4, ...")
@click.option("--tol", type=float, default=None, help="Fail (exit 1) if the finest residual exceeds this.")
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, writable=True))
def laplace_study(h, X, functions, y_grid, levels, tol, fmt, out):
    """Convergence of the Laplace convolution identity as h shrinks and X grows."""
    names = functions.split(",")
    if len(names) != 2:
        raise click.BadParameter("expected two comma-separated names", param_hint="--functions")
    ys = _y_grid(y_grid)
    try:
        conv = laplace.convergence_study(names[0], names[1], ys, [h / 2**k for k in range(levels)], X)
        horizon = laplace.horizon_study(names[0], names[1], ys, h, [X / 2, X, 2 * X])
    except KeyError as exc:
        raise click.BadParameter(exc.args[0], param_hint="--functions") from exc
    ok = tol is None or conv[-1]["residual"] <= tol
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=["h", "X", "N", "residual", "ratio", "order"], lineterminator="\n")
        writer.writeheader()
        for row in conv:
            writer.writerow({k: ("" if v is None else repr(v)) for k, v in row.items()})
        text = buf.getvalue()
        if out:
            with open(out, "w") as fh:
                fh.write(text)
        else:
            click.echo(text, nl=False)
    else:
        report = _header("laplace-study", functions=names, y=ys, h=h, X=X,
                         status="ok" if ok else "violation", tol=tol,
                         convergence=conv, horizon=horizon)
        _emit(report, out)
    sys.exit(0 if ok else 1)


# -- make-operator -----------------------------------------------------------


def _laplace_grid_opts(h, X, y_grid):
    if h is None or X is None:
        raise click.UsageError("--kind laplace needs --h and --X")
    return laplace.HalfLineGrid.from_horizon(h, X), _y_grid(y_grid)


@main.command("make-operator")
@click.option("--kind", type=click.Choice(ch.KINDS), required=True)
@click.option("--group", "group_spec", help="Group spec (fourier/cosine).")
@click.option("--theta", "theta_src", default="identity", show_default=True,
              help="Theta JSON file or preset: identity, zero, constant, random, permutation, "
                   "noninjective, partial, mul:a; laplace: identity, zero, shift:c, const:c.")
@click.option("--h", "h", type=click.FloatRange(min=0, min_open=True))
@click.option("--X", "X", type=click.FloatRange(min=0, min_open=True))
@click.option("--y-grid", "y_grid", default="0.5:2:4", show_default=True)
@click.option("--epsilon", type=click.FloatRange(min=0), default=0.0, show_default=True,
              help="Add seeded noise of at most this modulus to each entry.")
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--out", type=click.Path(dir_okay=False, writable=True))
def make_operator(kind, group_spec, theta_src, h, X, y_grid, epsilon, seed, out):
    """Write the kernel of (transform) o theta as JSON."""
    try:
        if kind == ch.LAPLACE:
            grid, ys = _laplace_grid_opts(h, X, y_grid)
            if theta_src.endswith(".json"):
                theta = load_theta(theta_src)
                zs = list(theta.targets)
            else:
                zs = factory.laplace_preset(ys, theta_src)
            T = factory.build_laplace_from_exponents(grid, ys, zs)
        else:
            if not group_spec:
                raise click.UsageError(f"--kind {kind} needs --group")
            g = _group(group_spec)
            if theta_src.endswith(".json"):
                theta = load_theta(theta_src)
            else:
                theta = factory.theta_preset(g, kind, theta_src, seed)
            T = factory.build_from_theta(g, kind, theta)
        if epsilon:
            T = factory.perturb(T, epsilon, seed)
    except KernelFileError as exc:
        raise InputError(str(exc)) from exc
    except ValueError as exc:
        raise click.BadParameter(str(exc), param_hint="--theta") from exc
    if out:
        dump_operator(T, out)
    else:
        click.echo(json.dumps(operator_to_json(T)))


# -- extract -----------------------------------------------------------------


def _extraction_report(T, tol, tol_eq, tol_fit, trials, seed, workers) -> tuple[dict, bool]:
    try:
        rep = ch.extract(T, tol=tol, tol_eq=tol_eq, tol_fit=tol_fit, workers=workers)
        body = rep.to_json()
        body["factorization_check"] = {"trials": trials, "seed": seed,
                                       "max_residual": ch.verify_factorization(T, rep.theta, trials, seed)}
        return body, True
    except ch.ExtractionError as exc:
        return exc.report.to_json(), False


@main.command("extract")
@click.option("--kind", type=click.Choice(ch.KINDS), required=True)
@click.option("--operator", "operator_path", required=True, type=click.Path(dir_okay=False))
@click.option("--tol", type=float, default=ch.DEFAULT_TOL, show_default=True)
@click.option("--tol-eq", "tol_eq", type=float, default=ch.DEFAULT_TOL_EQ, show_default=True)
@click.option("--tol-fit", "tol_fit", type=float, default=ch.DEFAULT_TOL_FIT, show_default=True)
@click.option("--trials", default=100, show_default=True, type=click.IntRange(min=0))
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--workers", default=1, show_default=True, type=click.IntRange(min=1))
@click.option("--out", type=click.Path(dir_okay=False, writable=True))
def extract_cmd(kind, operator_path, tol, tol_eq, tol_fit, trials, seed, workers, out):
    """Recover theta from a kernel file and certify T = transform o theta."""
    try:
        T = load_operator(operator_path)
    except KernelFileError as exc:
        raise InputError(str(exc)) from exc
    if T.kind != kind:
        raise click.BadParameter(f"operator file holds a {T.kind} kernel", param_hint="--kind")
    body, ok = _extraction_report(T, tol, tol_eq, tol_fit, trials, seed, workers)
    _emit({**_header("extract", operator=str(operator_path)), **body}, out)
    sys.exit(0 if ok else 1)


# -- roundtrip ---------------------------------------------------------------


@main.command("roundtrip")
@click.option("--kind", type=click.Choice(ch.KINDS), required=True)
@click.option("--group", "group_spec", help="Group spec (fourier/cosine).")
@click.option("--shape", type=click.Choice(factory.THETA_SHAPES), default=None,
              help="Planted theta shape (random when omitted).")
@click.option("--h", "h", type=click.FloatRange(min=0, min_open=True), default=0.01, show_default=True)
@click.option("--X", "X", type=click.FloatRange(min=0, min_open=True), default=20.0, show_default=True)
@click.option("--y-grid", "y_grid", default="0.5:2:4", show_default=True)
@click.option("--tol", type=float, default=ch.DEFAULT_TOL, show_default=True)
@click.option("--tol-eq", "tol_eq", type=float, default=ch.DEFAULT_TOL_EQ, show_default=True)
@click.option("--tol-fit", "tol_fit", type=float, default=ch.DEFAULT_TOL_FIT, show_default=True)
@click.option("--trials", default=100, show_default=True, type=click.IntRange(min=0))
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--out", type=click.Path(dir_okay=False, writable=True))
def roundtrip(kind, group_spec, shape, h, X, y_grid, tol, tol_eq, tol_fit, trials, seed, out):
    """Plant a random theta, build the operator, extract, and compare."""
    rng = np.random.default_rng(seed)
    if kind == ch.LAPLACE:
        grid, ys = _laplace_grid_opts(h, X, y_grid)
        zs = [None if rng.random() < 0.25 else float(rng.uniform(0.25, 4.0)) for _ in ys]
        planted = ch.ThetaAssignment(kind, tuple(zs))
        T = factory.build_laplace_from_exponents(grid, ys, zs)
        where = {"grid": {"h": grid.step, "N": grid.count}, "y_samples": ys}
    else:
        if not group_spec:
            raise click.UsageError(f"--kind {kind} needs --group")
        g = _group(group_spec)
        planted = factory.random_theta(g, kind, rng, shape)
        T = factory.build_from_theta(g, kind, planted)
        where = {"group": g.spec}
    body, ok = _extraction_report(T, tol, tol_eq, tol_fit, trials, seed, 1)
    recovered = body.get("theta")
    equal = ok and planted.matches(ch.ThetaAssignment.from_json(recovered))
    report = _header("roundtrip", kind=kind, seed=seed, **where,
                     planted=planted.to_json(), recovered=recovered, equal=equal,
                     extraction=body)
    _emit(report, out)
    sys.exit(0 if equal else 1)


if __name__ == "__main__":
    main()
