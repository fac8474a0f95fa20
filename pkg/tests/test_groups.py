import pytest
from hypothesis import given, settings, strategies as st

from ipv.errors import InvalidPermutation, OrderExceeded
from ipv.groups import (ElementSet, Perm, PermGroup, abelian_invariants, center, closure, conjugacy_classes,
                        derived_subgroup, element_order, is_generating, power_conjugate_closure)
from oracles import perm_closure, perm_mul, perm_order


def sym(n):
    return PermGroup(n, [Perm.from_cycles("(0 1)", n), Perm.from_cycles("(" + " ".join(map(str, range(n))) + ")", n)])


def test_perm_composition_acts_on_the_right():
    a = Perm.from_cycles("(0 1)", 3)
    b = Perm.from_cycles("(1 2)", 3)
    # apply a, then b: 0 -> 1 -> 2
    assert (a * b)[0] == 2
    assert a * b == Perm(perm_mul(a, b))


def test_cycle_notation_round_trip():
    p = Perm.from_cycles("(0 3 1)(2 4)", 6)
    assert p.cycles() == "(0 3 1)(2 4)"
    assert Perm.from_cycles("()", 4) == Perm.identity(4)


@pytest.mark.parametrize("text", ["(0 1)(1 2)", "(0 7)", "0 1", "(a b)"])
def test_bad_cycles_rejected(text):
    with pytest.raises(InvalidPermutation):
        Perm.from_cycles(text, 4)


def test_non_bijection_rejected():
    with pytest.raises(InvalidPermutation):
        Perm([0, 0, 1])


def test_degree_mismatch_rejected():
    with pytest.raises(InvalidPermutation):
        PermGroup(3, [[1, 0]])


def test_order_limit():
    with pytest.raises(OrderExceeded):
        sym(5).__class__(5, sym(5).generators, max_order=100)


def test_symmetric_group_basics():
    S4 = sym(4)
    assert S4.order == 24
    assert S4.identity == 0 and S4.elements[0] == (0, 1, 2, 3)
    assert sorted(S4.class_sizes()) == [1, 3, 6, 6, 8]
    assert S4.order_statistics() == {1: 1, 2: 9, 3: 8, 4: 6}
    assert len(derived_subgroup(S4)) == 12
    assert abelian_invariants(S4) == (2,)
    assert len(center(S4)) == 1


def test_indexing_is_deterministic():
    a, b = sym(5), sym(5)
    assert a.elements == b.elements
    assert a.table == b.table


def test_table_matches_permutation_products():
    G = sym(4)
    for x in range(G.order):
        for y in range(G.order):
            assert G.elements[G.mul(x, y)] == perm_mul(G.elements[x], G.elements[y])


def test_inverse_and_orders():
    G = sym(4)
    for x in range(G.order):
        assert G.mul(x, G.inv(x)) == 0
        assert element_order(G, x) == perm_order(G.elements[x])


def test_classes_partition_group():
    G = sym(5)
    classes = conjugacy_classes(G)
    assert sorted(i for c in classes for i in c) == list(range(G.order))
    for c in classes:
        x = c[0]
        conj = {G.conj(x, g) for g in range(G.order)}
        assert conj == set(c)


def test_closure_matches_oracle():
    G = sym(4)
    for gens in [[1], [1, 2], [3, 7]]:
        S = closure(G, gens)
        ref = perm_closure([G.elements[i] for i in gens], G.degree)
        assert {G.elements[i] for i in S} == ref
    assert is_generating(G, G.generator_indices)


def test_power_conjugate_closure():
    G = sym(4)
    for x in range(G.order):
        S = power_conjugate_closure(G, x)
        expected = {G.conj(G.power(x, k), c) for k in range(G.element_orders[x]) for c in range(G.order)}
        assert set(S) == expected


def test_element_set_operations():
    G = sym(3)
    A = ElementSet.of(G, [0, 1, 2])
    B = ElementSet.of(G, [2, 3])
    assert set(A & B) == {2}
    assert set(A | B) == {0, 1, 2, 3}
    assert 3 in B and 1 not in B
    assert len(A) == 3
    with pytest.raises(ValueError):
        _ = A & ElementSet.of(sym(4), [0])


def test_abelian_invariants_of_products():
    # Z4 x Z6 acting on disjoint points
    G = PermGroup(10, [Perm.from_cycles("(0 1 2 3)", 10), Perm.from_cycles("(4 5 6 7 8 9)", 10)])
    assert G.is_abelian() and not G.is_cyclic()
    assert abelian_invariants(G) == (2, 3, 4)  # prime-power form of Z2 x Z12


@settings(max_examples=40, deadline=None)
@given(st.permutations(range(6)), st.permutations(range(6)))
def test_random_subgroup_properties(p, q):
    G = PermGroup(6, [p, q], max_order=720)
    assert G.order == len(perm_closure([tuple(p), tuple(q)], 6))
    assert G.order % len(G.center) == 0
    assert sum(G.class_sizes()) == G.order
    assert all(G.order % s == 0 for s in G.class_sizes())
