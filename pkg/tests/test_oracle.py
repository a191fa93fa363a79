import random

import numpy as np
import pytest

from pgroupdim import kernels
from pgroupdim.group import Element, GroupParams
from pgroupdim.series import SeriesKind, series
from pgroupdim.subgroups import center_subgroup, full_group, powers_subgroup


def test_closure_size(orc):
    assert orc.closure_size == 2187


def test_identity_and_inverses(orc):
    assert np.array_equal(orc.table[0], np.arange(2187))
    assert np.array_equal(orc.table[:, 0], np.arange(2187))
    g = np.arange(2187)
    assert np.all(orc.table[g, orc.inverse[g]] == 0)
    assert np.all(orc.table[orc.inverse[g], g] == 0)


def test_rows_and_columns_are_permutations(orc):
    fresh = np.arange(2187)
    for g in (1, 2, 5, 100, 2186):
        assert np.array_equal(np.sort(orc.table[g]), fresh)
        assert np.array_equal(np.sort(orc.table[:, g]), fresh)


def test_light_associativity_exhaustive(orc):
    # associativity on the generating pair extends to all triples because
    # the table is closed from those generators
    assert orc.light_associativity((orc.x_idx, orc.y_idx))


def test_random_triples_directly(orc):
    rng = random.Random(19)
    T = orc.table
    for _ in range(3000):
        g, h, u = (rng.randrange(2187) for _ in range(3))
        assert T[T[g, h], u] == T[g, T[h, u]]


def test_table_agrees_with_kernels(orc):
    rng = random.Random(21)
    ctx = kernels.make_ctx(3, 1)
    for _ in range(2000):
        g, h = rng.randrange(2187), rng.randrange(2187)
        expect = kernels.mul(orc.unpack(g).flat(), orc.unpack(h).flat(), ctx)
        assert orc.pack(Element(expect[0], expect[1:4], expect[4:])) == orc.table[g, h]


def test_centers(orc):
    assert len(orc.center()) == 3
    assert len(orc.base_centralizer()) == 27
    P = GroupParams(3, 1)
    assert tuple(int(i) for i in orc.base_centralizer()) == orc.subgroup_indices(
        center_subgroup(P)
    )


def test_gamma_set_series_class(orc):
    terms = orc.set_series("gamma")
    assert [len(t) for t in terms] == [2187, 243, 81, 9, 3, 1]
    # class 5: last nontrivial term is the fifth
    assert len(terms) - 1 == 5


@pytest.mark.parametrize("kind", list(SeriesKind))
def test_engine_series_equal_oracle_sets(kind, orc):
    P = GroupParams(3, 1)
    oser = orc.set_series(kind.value)
    eser = series(kind, P)
    assert len(oser) == len(eser.terms)
    for pos, term in enumerate(eser.terms):
        assert orc.subgroup_indices(term) == oser[pos]


def test_power_subgroup_equals_oracle(orc):
    P = GroupParams(3, 1)
    cubes = orc.subgroup_closure(np.unique(orc.power_all(orc.all_indices(), 3)))
    eng = orc.subgroup_indices(powers_subgroup(full_group(P), 3))
    assert eng == tuple(int(i) for i in cubes)


def test_pack_unpack_roundtrip(orc):
    rng = random.Random(22)
    for _ in range(200):
        i = rng.randrange(2187)
        assert orc.pack(orc.unpack(i)) == i
