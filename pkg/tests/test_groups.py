import cmath
import itertools

import numpy as np
import pytest

from convchar.groups import (
    CosineClassElement,
    DualCharacter,
    FiniteAbelianGroup,
    GroupError,
    add,
    char_eval,
    cosine_eval,
    enumerate_cosine_class,
    enumerate_duals,
    neg,
)


def brute_character(g, k, x):
    return cmath.exp(2j * cmath.pi * sum(kj * xj / n for kj, xj, n in zip(k, x, g.factors)))


def groups_up_to(order):
    out = []
    for spec in ["1", "2", "3", "4", "5", "6", "7", "8", "9", "10", "12", "16", "2x2", "2x3", "2x4",
                 "3x3", "2x6", "4x4", "2x2x2", "2x2x3", "2x8", "4x3", "3x5", "2x2x2x2", "5x5", "6x6",
                 "8x8", "32", "64", "4x4x4", "24"]:
        g = FiniteAbelianGroup.parse(spec)
        if g.order <= order:
            out.append(g)
    return out


class TestConstruction:
    def test_parse_and_order(self):
        g = FiniteAbelianGroup.parse("4x3")
        assert g.factors == (4, 3)
        assert g.order == 12
        assert g.spec == "4x3"

    @pytest.mark.parametrize("spec", ["", "0", "4x-1", "ax3", "4x"])
    def test_bad_specs(self, spec):
        with pytest.raises(GroupError):
            FiniteAbelianGroup.parse(spec)

    def test_lexicographic_enumeration(self):
        g = FiniteAbelianGroup.parse("2x3")
        assert g.elements() == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]
        for i, x in enumerate(g.elements()):
            assert g.index(x) == i
            assert g.element(i) == x

    def test_validate_rejects_unreduced(self):
        g = FiniteAbelianGroup.parse("4")
        with pytest.raises(GroupError):
            g.index((4,))
        with pytest.raises(GroupError):
            g.index((1, 0))


class TestArithmetic:
    def test_examples(self):
        z4 = FiniteAbelianGroup.cyclic(4)
        assert add(z4, (3,), (2,)) == (1,)
        g = FiniteAbelianGroup.parse("2x3")
        assert add(g, (1, 2), (1, 2)) == (0, 1)
        assert neg(FiniteAbelianGroup.cyclic(5), (2,)) == (3,)
        assert neg(FiniteAbelianGroup.cyclic(2), (1,)) == (1,)

    def test_identity_and_involution(self, small_group):
        g = small_group
        for a in g.elements():
            assert add(g, a, g.zero()) == a
            assert neg(g, neg(g, a)) == a
            assert add(g, a, neg(g, a)) == g.zero()

    def test_dimension_mismatch(self):
        with pytest.raises(GroupError):
            add(FiniteAbelianGroup.parse("2x3"), (1,), (1, 1))

    def test_tables_agree_with_tuple_arithmetic(self, small_group):
        g = small_group
        for i, a in enumerate(g.elements()):
            assert g.element(int(g.neg_index[i])) == neg(g, a)
            for j, b in enumerate(g.elements()):
                assert g.element(int(g.add_table[i, j])) == add(g, a, b)
                assert g.element(int(g.sub_table[i, j])) == add(g, a, neg(g, b))


class TestCharacters:
    def test_examples(self):
        z2, z4 = FiniteAbelianGroup.cyclic(2), FiniteAbelianGroup.cyclic(4)
        assert char_eval(z2, DualCharacter((1,)), (1,)) == -1
        assert char_eval(z4, DualCharacter((1,)), (1,)) == 1j
        g = FiniteAbelianGroup.parse("3x4")
        for d in enumerate_duals(g):
            assert char_eval(g, d, g.zero()) == 1

    def test_enumerate_duals(self):
        assert enumerate_duals(FiniteAbelianGroup.cyclic(2)) == [DualCharacter((0,)), DualCharacter((1,))]
        assert len(enumerate_duals(FiniteAbelianGroup.parse("2x2"))) == 4

    def test_table_matches_brute_force(self, small_group):
        g = small_group
        for i, k in enumerate(g.elements()):
            for j, x in enumerate(g.elements()):
                assert abs(g.character_table[i, j] - brute_character(g, k, x)) < 1e-12

    @pytest.mark.parametrize("g", groups_up_to(64), ids=lambda g: g.spec)
    def test_rows_distinct_and_orthogonal(self, g):
        X = g.character_table
        gram = X @ X.conj().T
        assert np.abs(gram - g.order * np.eye(g.order)).max() <= 1e-9
        for a, b in itertools.combinations(range(g.order), 2):
            assert np.abs(X[a] - X[b]).max() > 1e-6

    @pytest.mark.parametrize("g", groups_up_to(64), ids=lambda g: g.spec)
    def test_unit_modulus_and_multiplicative(self, g):
        X = g.character_table
        assert np.abs(np.abs(X) - 1).max() <= 1e-12
        prod = X[:, :, None] * X[:, None, :]
        assert np.abs(prod - X[:, g.add_table]).max() <= 1e-12

    def test_z6_rows_pairwise_distinct(self):
        g = FiniteAbelianGroup.cyclic(6)
        rows = {tuple(np.round(g.character_table[d], 9)) for d in range(6)}
        assert len(rows) == 6


class TestCosineClass:
    def test_examples(self):
        z4 = FiniteAbelianGroup.cyclic(4)
        assert [c.orbit for c in enumerate_cosine_class(z4)] == [((0,),), ((1,), (3,)), ((2,),)]
        assert len(enumerate_cosine_class(FiniteAbelianGroup.cyclic(2))) == 2
        z5 = FiniteAbelianGroup.cyclic(5)
        assert [c.orbit for c in enumerate_cosine_class(z5)] == [((0,),), ((1,), (4,)), ((2,), (3,))]

    @pytest.mark.parametrize("n", range(1, 30))
    def test_orbit_count_cyclic(self, n):
        # brute force: orbits of k -> -k on Z_n
        orbits = {frozenset({k, (-k) % n}) for k in range(n)}
        assert len(FiniteAbelianGroup.cyclic(n).cosine_orbits) == len(orbits)
        if n % 2:
            assert len(orbits) == (n + 1) // 2

    def test_equality_by_orbit(self):
        assert CosineClassElement(((1,), (3,))) == CosineClassElement(((3,), (1,)))
        assert CosineClassElement(((1,), (3,))) != CosineClassElement(((2,),))

    @pytest.mark.parametrize("g", groups_up_to(32), ids=lambda g: g.spec)
    def test_dalembert_exhaustive(self, g):
        C = g.cosine_table
        assert np.isrealobj(C)
        assert np.abs(C).max() <= 1 + 1e-12
        lhs = C[:, :, None] * C[:, None, :]
        rhs = 0.5 * (C[:, g.add_table] + C[:, g.sub_table])
        assert np.abs(lhs - rhs).max() <= 1e-12

    @pytest.mark.parametrize("g", groups_up_to(16), ids=lambda g: g.spec)
    def test_completeness(self, g):
        # every (chi + chi o neg)/2 appears exactly once in the enumerated class
        expected = []
        for k in g.elements():
            vals = [(brute_character(g, k, x) + brute_character(g, k, neg(g, x))) / 2 for x in g.elements()]
            expected.append(np.array(vals))
        C = g.cosine_table
        for vals in expected:
            hits = [i for i in range(len(C)) if np.abs(C[i] - vals).max() < 1e-9]
            assert len(hits) == 1
        # and nothing else is enumerated
        for row in C:
            assert any(np.abs(row - v).max() < 1e-9 for v in expected)

    def test_cosine_eval(self):
        z4 = FiniteAbelianGroup.cyclic(4)
        c1 = enumerate_cosine_class(z4)[1]
        assert [round(cosine_eval(z4, c1, (x,)), 12) for x in range(4)] == [1, 0, -1, 0]
