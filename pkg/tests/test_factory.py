import numpy as np
import pytest

from convchar.characterizer import (
    NotMultiplicative,
    ThetaAssignment,
    check_multiplicativity,
    extract,
    extract_theta_fourier,
)
from convchar.factory import (
    THETA_SHAPES,
    build_from_theta,
    build_laplace_from_exponents,
    laplace_preset,
    n_outputs,
    perturb,
    random_theta,
    theta_preset,
)
from convchar.groups import FiniteAbelianGroup
from convchar.laplace import HalfLineGrid
from convchar.transforms import fourier_matrix


def test_identity_gives_transform_matrix():
    g = FiniteAbelianGroup.parse("2x3")
    T = build_from_theta(g, "fourier", theta_preset(g, "fourier", "identity"))
    assert np.array_equal(T.kernel, fourier_matrix(g))
    C = build_from_theta(g, "cosine", theta_preset(g, "cosine", "identity"))
    assert np.array_equal(C.kernel.real, g.cosine_table)


def test_zero_and_constant_presets():
    g = FiniteAbelianGroup.cyclic(5)
    assert not build_from_theta(g, "fourier", theta_preset(g, "fourier", "zero")).kernel.any()
    K = build_from_theta(g, "fourier", theta_preset(g, "fourier", "constant")).kernel
    assert np.array_equal(K, np.ones((5, 5)))


def test_invalid_targets():
    g = FiniteAbelianGroup.cyclic(4)
    with pytest.raises(ValueError):
        build_from_theta(g, "fourier", ThetaAssignment("fourier", (0, 1, 2, 4)))
    with pytest.raises(ValueError):
        build_from_theta(g, "cosine", ThetaAssignment("cosine", (0, 1, 2, 3)))


def test_multiplier_preset():
    g = FiniteAbelianGroup.cyclic(7)
    assert theta_preset(g, "fourier", "mul:3").targets == tuple((3 * k) % 7 for k in range(7))


@pytest.mark.parametrize("spec", ["1", "2", "6", "2x2", "3x4", "2x2x2", "5x5"])
@pytest.mark.parametrize("kind", ["fourier", "cosine"])
def test_random_thetas_are_multiplicative_and_round_trip(spec, kind):
    g = FiniteAbelianGroup.parse(spec)
    rng = np.random.default_rng(77)
    for _ in range(8):
        planted = random_theta(g, kind, rng)
        T = build_from_theta(g, kind, planted)
        assert check_multiplicativity(T) <= 1e-12
        assert extract(T).theta == planted


def test_theta_shapes():
    g = FiniteAbelianGroup.parse("3x4")
    rng = np.random.default_rng(0)
    n = n_outputs(g, "fourier")
    perm = random_theta(g, "fourier", rng, "permutation").targets
    assert sorted(perm) == list(range(n))
    nonin = random_theta(g, "fourier", rng, "noninjective").targets
    assert len(set(nonin)) < n
    partial = random_theta(g, "fourier", rng, "partial").targets
    assert 1 <= partial.count(None) <= n - 1
    with pytest.raises(ValueError):
        random_theta(g, "fourier", rng, "bogus")
    assert set(THETA_SHAPES) == {"permutation", "noninjective", "partial"}


def test_laplace_builder():
    grid = HalfLineGrid.from_horizon(0.01, 1)
    K = build_laplace_from_exponents(grid, [2.0], [2.0])
    assert np.allclose(K.kernel[0].real, np.exp(-0.02 * np.arange(grid.count)), rtol=1e-15, atol=0)
    Z = build_laplace_from_exponents(grid, [1.0, 2.0], [None, 1.0])
    assert not Z.kernel[0].any()
    with pytest.raises(ValueError):
        build_laplace_from_exponents(grid, [1.0], [0.0])
    assert laplace_preset([0.5, 1.0], "shift:1") == [1.5, 2.0]
    ident = build_laplace_from_exponents(grid, [0.5, 1.0], laplace_preset([0.5, 1.0], "identity"))
    assert np.allclose(ident.kernel[1].real, np.exp(-grid.nodes))


class TestPerturb:
    def test_zero_epsilon(self):
        g = FiniteAbelianGroup.cyclic(6)
        T = build_from_theta(g, "fourier", theta_preset(g, "fourier", "identity"))
        assert np.array_equal(perturb(T, 0.0, 3).kernel, T.kernel)

    def test_bounded_and_seeded(self):
        g = FiniteAbelianGroup.cyclic(6)
        T = build_from_theta(g, "fourier", theta_preset(g, "fourier", "identity"))
        a, b = perturb(T, 0.1, 3), perturb(T, 0.1, 3)
        assert np.array_equal(a.kernel, b.kernel)
        assert np.abs(a.kernel - T.kernel).max() <= 0.1

    def test_tiny_noise_survives_large_noise_rejected(self):
        g = FiniteAbelianGroup.cyclic(8)
        T = build_from_theta(g, "fourier", theta_preset(g, "fourier", "identity"))
        assert extract_theta_fourier(perturb(T, 1e-12, 0)).theta == theta_preset(g, "fourier", "identity")
        P = perturb(T, 0.1, 0)
        assert check_multiplicativity(P) > 1e-8
        with pytest.raises(NotMultiplicative):
            extract_theta_fourier(P)

    def test_negative_epsilon(self):
        g = FiniteAbelianGroup.cyclic(2)
        T = build_from_theta(g, "fourier", theta_preset(g, "fourier", "identity"))
        with pytest.raises(ValueError):
            perturb(T, -1.0, 0)
