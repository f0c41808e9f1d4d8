from __future__ import annotations

import itertools

import pytest

from arboreal.groups import BudgetExceeded, FiniteGroup, bits, closure


def _sym(n):
    elems = list(itertools.permutations(range(n)))
    return FiniteGroup(elems, lambda a, b: tuple(a[b[i]] for i in range(n)))


def _cyclic(n):
    return FiniteGroup(list(range(n)), lambda a, b: (a + b) % n)


def test_cyclic_group():
    G = _cyclic(6)
    assert G.is_abelian() and G.order == 6
    assert sorted(G.element_order(a) for a in range(6)) == [1, 2, 3, 3, 6, 6]
    # subgroups of Z/6: one for each divisor
    assert len(G.abelian_subgroups()) == 4
    assert G.derived_subgroup() == 1 << G.identity


def test_symmetric_group_s3():
    G = _sym(3)
    assert not G.is_abelian()
    subs = G.abelian_subgroups()
    assert sorted(bin(H).count("1") for H in subs) == [1, 2, 2, 2, 3]
    assert bin(G.derived_subgroup()).count("1") == 3
    assert G.max_abelian_order() == 3


def test_symmetric_group_s4_abelian_subgroups():
    # S4 has 30 subgroups; the non-abelian ones are S4, A4, 4 x S3 and 3 x D4
    G = _sym(4)
    assert len(G.abelian_subgroups()) == 30 - 9
    assert G.max_abelian_order() == 4


def test_inverse_table():
    G = _sym(4)
    for a in range(G.order):
        assert G.mul(a, G.inv[a]) == G.identity


def test_generated_and_bits():
    G = _cyclic(12)
    H = G.generated([G.index[8]])
    assert sorted(G.elements[k] for k in bits(H)) == [0, 4, 8]


def test_closure_budget():
    assert len(closure([1], lambda a, b: (a + b) % 7, 0)) == 7
    with pytest.raises(BudgetExceeded):
        closure([1], lambda a, b: (a + b) % 100, 0, budget=50)
    with pytest.raises(BudgetExceeded):
        FiniteGroup(list(range(10)), lambda a, b: (a + b) % 10, budget=5)


def test_not_a_group():
    with pytest.raises(ValueError):
        FiniteGroup([0, 1, 2], lambda a, b: max(a, b) if a and b else 0)
