import math

import numpy as np
import pytest

from convchar.laplace import (
    GridSignal,
    HalfLineGrid,
    builtin_function,
    convergence_study,
    horizon_study,
    laplace_convolution,
    laplace_transform,
    parse_y_grid,
)


def test_grid_invariants():
    grid = HalfLineGrid(0.5, 5)
    assert np.array_equal(grid.nodes, [0, 0.5, 1, 1.5, 2])
    assert grid.horizon == 2.0
    assert grid.weights().sum() == pytest.approx(grid.horizon)
    for bad in [(0, 5), (-1, 5), (0.1, 1)]:
        with pytest.raises(ValueError):
            HalfLineGrid(*bad)
    assert HalfLineGrid.from_horizon(0.001, 30).count == 30001


class TestTransform:
    def test_zero(self):
        grid = HalfLineGrid.from_horizon(0.1, 5)
        assert laplace_transform(GridSignal(grid, np.zeros(grid.count)), 1.0) == 0

    def test_exponential(self):
        grid = HalfLineGrid.from_horizon(0.001, 30)
        f = GridSignal.sample(grid, lambda x: np.exp(-x))
        assert abs(laplace_transform(f, 1.0) - 0.5) <= 1e-5

    def test_constant_truncated(self):
        grid = HalfLineGrid.from_horizon(0.001, 30)
        f = GridSignal.sample(grid, np.ones_like)
        X = grid.horizon
        assert abs(laplace_transform(f, 2.0) - (1 - math.exp(-2 * X)) / 2) <= 1e-5

    @pytest.mark.parametrize("y", [0.0, -1.0])
    def test_rejects_nonpositive(self, y):
        grid = HalfLineGrid(0.1, 3)
        with pytest.raises(ValueError):
            laplace_transform(GridSignal(grid, [1, 1, 1]), y)


class TestConvolution:
    def test_constants_exact(self):
        grid = HalfLineGrid.from_horizon(0.01, 5)
        one = GridSignal.sample(grid, np.ones_like)
        assert np.abs(laplace_convolution(one, one).values - grid.nodes).max() <= 1e-12

    def test_linear_times_constant(self):
        for h in (0.01, 0.005):
            grid = HalfLineGrid.from_horizon(h, 5)
            out = laplace_convolution(GridSignal.sample(grid, lambda x: x), GridSignal.sample(grid, np.ones_like))
            # trapezoid on a linear integrand is exact
            assert np.abs(out.values - grid.nodes**2 / 2).max() <= 1e-10

    def test_equal_exponentials_exact(self):
        # e^{-u} e^{-(x-u)} is constant in u, so the trapezoid rule is exact
        grid = HalfLineGrid.from_horizon(0.01, 10)
        e = GridSignal.sample(grid, lambda x: np.exp(-x))
        out = laplace_convolution(e, e)
        assert np.abs(out.values - grid.nodes * np.exp(-grid.nodes)).max() <= 1e-13

    def test_exponentials_second_order(self):
        errs = []
        for h in (0.02, 0.01):
            grid = HalfLineGrid.from_horizon(h, 10)
            e1 = GridSignal.sample(grid, lambda x: np.exp(-x))
            e2 = GridSignal.sample(grid, lambda x: np.exp(-2 * x))
            out = laplace_convolution(e1, e2)
            x = grid.nodes
            errs.append(np.abs(out.values - (np.exp(-x) - np.exp(-2 * x))).max())
        assert errs[1] <= 1e-4
        assert 3 <= errs[0] / errs[1] <= 5

    def test_grid_mismatch(self):
        a = GridSignal(HalfLineGrid(0.1, 3), [1, 1, 1])
        b = GridSignal(HalfLineGrid(0.2, 3), [1, 1, 1])
        with pytest.raises(ValueError):
            laplace_convolution(a, b)

    def test_causality(self, rng):
        grid = HalfLineGrid(0.05, 60)
        f = GridSignal(grid, rng.uniform(-1, 1, 60))
        g = GridSignal(grid, rng.uniform(-1, 1, 60))
        base = laplace_convolution(f, g).values
        tail = f.values.copy()
        tail[40:] = rng.uniform(-5, 5, 20)
        moved = laplace_convolution(GridSignal(grid, tail), g).values
        assert np.array_equal(base[:40], moved[:40])
        assert not np.array_equal(base[40:], moved[40:])

    def test_symmetry(self, rng):
        grid = HalfLineGrid(0.05, 300)
        f = GridSignal(grid, rng.uniform(-1, 1, 300) + 1j * rng.uniform(-1, 1, 300))
        g = GridSignal(grid, rng.uniform(-1, 1, 300))
        assert np.abs(laplace_convolution(f, g).values - laplace_convolution(g, f).values).max() <= 1e-12


class TestStudies:
    def test_second_order_ratio(self):
        rows = convergence_study("exponential", "exponential", [0.5, 1, 2], [0.01, 0.005], X=30)
        assert 3 <= rows[1]["ratio"] <= 5
        assert rows[1]["order"] == pytest.approx(math.log2(rows[1]["ratio"]))

    def test_zero_function(self):
        rows = convergence_study("zero", "exponential", [1.0], [0.1, 0.05, 0.025], X=10)
        assert all(r["residual"] == 0 for r in rows)

    def test_horizon_shrinks_residual(self):
        rows = horizon_study("exponential", "exponential", [0.5, 1, 2], 0.01, [2, 4, 8])
        res = [r["residual"] for r in rows]
        assert res[0] > res[1] > res[2]

    def test_distinct_rates_converge_at_second_order(self):
        rows = convergence_study("exponential", "exponential:2", [0.5, 1.0], [0.02, 0.01, 0.005], X=20)
        assert all(3 <= r["ratio"] <= 5 for r in rows[1:])

    def test_constant_is_truncation_dominated(self):
        # a constant is not integrable on the half-line; refining h cannot help
        rows = convergence_study("polynomial-cutoff", "constant", [0.5, 1.0], [0.02, 0.01], X=20)
        assert rows[1]["ratio"] == pytest.approx(1.0, abs=1e-3)

    def test_unknown_function(self):
        with pytest.raises(KeyError):
            builtin_function("gaussian")
        assert builtin_function("exponential:2")(np.array([1.0]))[0] == pytest.approx(math.exp(-2))

    def test_parse_y_grid(self):
        assert parse_y_grid("0.5:2:4") == [0.5, 1.0, 1.5, 2.0]
        assert parse_y_grid("1,2") == [1.0, 2.0]
        with pytest.raises(ValueError):
            parse_y_grid("0:1:3")
