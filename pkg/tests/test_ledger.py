from math import prod

import pytest
from hypothesis import given, strategies as st

from ipv.ledger import (alpha_values, alpha_vectors, candidate_orders, dimension_bound, factorize,
                        genus_vectors, n6_arithmetic_gate, raw_dimension_bound)
from oracles import brute_alpha_vectors, brute_factorizations


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_alpha_vectors_match_brute_force(n):
    table = alpha_values()
    got = {(v.order, tuple(sorted(v.alphas))) for v in alpha_vectors(n)}
    ref = {(o, a) for o, a in brute_alpha_vectors(n, table, 84 ** 2 if n == 2 else 2000)
           if all(o // x >= 2 for x in a)}
    assert got == ref


def test_vectors_are_consistent():
    for n in (4, 5):
        for v in alpha_vectors(n):
            assert v.check()
            assert prod(g - 1 for g in v.genera) == v.order


def test_no_vectors_beyond_five():
    assert alpha_vectors(6) == []
    assert alpha_vectors(7) == []


def test_dimension_bounds():
    assert raw_dimension_bound(3) == 7
    assert dimension_bound(3) == 6
    assert dimension_bound(2) is None


def test_n6_gate():
    g = n6_arithmetic_gate()
    assert g["passed"]
    assert g["order_lower"] == 64 and g["order_upper"] == 203
    assert not g["order96_alpha_in_table"]


def test_candidate_orders():
    four = candidate_orders(4)
    five = candidate_orders(5)
    assert sorted(four) == [16, 24, 32, 36, 40, 48, 60, 72, 80, 96, 144, 168]
    assert sorted(five) == [32, 48, 72, 80, 96]
    assert four[60].trail == ["lemma-5.1", "lemma-5.2", "lemma-5.3"]
    assert four[16].factorization == {2: 4}


@pytest.mark.parametrize("order", [16, 24, 48, 60, 96, 168])
@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("floor", [2, 3])
def test_genus_vectors_match_brute_force(order, n, floor):
    assert set(genus_vectors(order, n, floor)) == brute_factorizations(order, n, floor)


@given(st.integers(1, 10 ** 6))
def test_factorize(n):
    f = factorize(n)
    assert prod(p ** e for p, e in f.items()) == n
    assert all(all(p % q for q in range(2, int(p ** 0.5) + 1)) for p in f)
