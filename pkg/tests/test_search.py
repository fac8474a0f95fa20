import dataclasses

import pytest
from hypothesis import given, settings, strategies as st

from ipv.groups import Perm, PermGroup
from ipv.ramification import RamType, admissible_types
from ipv.search import (SphericalSystem, StructureCandidate, arrangements, collect_sigma, count_systems,
                        enumerate_systems, genus2_closure, is_free, search_structures, sigma, verify_candidate)
from oracles import naive_system_count, sigma_scan


def compatible_types(G):
    spectrum = G.spectrum
    return [A for A in admissible_types() if set(A.orders) <= spectrum and G.order % int(A.alpha) == 0]


def test_arrangements():
    assert arrangements(RamType([2, 2, 3])) == [(2, 2, 3), (2, 3, 2), (3, 2, 2)]


def test_d6_has_no_336_system(group):
    D6 = group("D6")
    assert count_systems(D6, [3, 3, 6]) == 0
    assert count_systems(D6, [2, 2, 2, 3]) == naive_system_count(D6, (2, 2, 2, 3)) > 0


def test_z4xz4_has_no_2224_system(group):
    assert count_systems(group("Z4xZ4"), [2, 2, 2, 4]) == 0


@pytest.mark.parametrize("name", ["S4", "SL(2,3)", "Q8", "D4", "Z5:Z4", "Dic6"])
def test_counts_match_naive(group, name):
    G = group(name)
    for A in compatible_types(G):
        if A.r <= 4:
            assert count_systems(G, A) == naive_system_count(G, A.orders), (name, A)


def test_systems_are_valid_and_distinct(group):
    G = group("S4")
    systems = list(enumerate_systems(G, [2, 3, 4]))
    assert len(systems) == len({T.elements for T in systems})
    assert all(T.is_valid() for T in systems)


def test_conjugation_closure(group):
    G = group("SL(2,3)")
    A = RamType([3, 3, 6])
    full = {T.elements for T in enumerate_systems(G, A)}
    for T in enumerate_systems(G, A, dedup_conj=True):
        for c in range(G.order):
            assert T.conjugate(c).elements in full
    # dedup meets every conjugation orbit
    reps = {T.elements for T in enumerate_systems(G, A, dedup_conj=True)}
    covered = {G_t for t in reps for G_t in (tuple(G.conj(h, c) for h in t) for c in range(G.order))}
    assert covered == full


def test_sigma_matches_scan(group):
    for name in ["S4", "D_{2,8,3}", "Z3:D4"]:
        G = group(name)
        for A in compatible_types(G)[:4]:
            for T in list(enumerate_systems(G, A, dedup_conj=True))[:5]:
                assert set(sigma(T)) == sigma_scan(G, T.elements)


def test_sigma_is_conjugation_invariant(group):
    G = group("S4")
    T = next(iter(enumerate_systems(G, [2, 3, 4])))
    assert all(sigma(T.conjugate(c)) == sigma(T) for c in range(G.order))


def test_collect_sigma_keeps_minimal_masks(group):
    G = group("D4")
    masks, count = collect_sigma(G, RamType([2, 2, 2, 2, 2]))
    assert count > 0 and masks
    ms = list(masks)
    assert not any(a != b and a & b == a for a in ms for b in ms)


def test_is_free_requires_systems():
    with pytest.raises(ValueError):
        is_free([])


def test_cyclic_groups_admit_no_structure(group):
    for name in ["SG16_1", "SG24_2", "SG48_2"]:
        for n in (2, 3, 4):
            assert search_structures(group(name), n, 2).empty


def _z5_squared():
    return PermGroup(10, [Perm.from_cycles("(0 1 2 3 4)", 10), Perm.from_cycles("(5 6 7 8 9)", 10)])


def test_abelian_witness_in_dimension_two():
    # (Z5)^2 acting diagonally on two genus-6 curves gives a free quotient
    r = search_structures(_z5_squared(), 2, 2)
    assert r.outcome == "Witness"
    assert r.witness.genera == (6, 6)
    assert verify_candidate(r.witness)


def test_verify_candidate_rejects_tampering():
    c = search_structures(_z5_squared(), 2, 2).witness
    assert verify_candidate(c)
    T0 = c.systems[0]
    G = c.group
    # repeat one system: Sigma intersection is no longer trivial
    assert not verify_candidate(dataclasses.replace(c, systems=[T0, T0]))
    assert not verify_candidate(dataclasses.replace(c, genera=(c.genera[0] + 1, c.genera[1])))
    assert not verify_candidate(dataclasses.replace(c, euler=c.euler + 1))
    assert not verify_candidate(dataclasses.replace(c, n=3))
    broken = SphericalSystem(G, (T0.elements[1],) + T0.elements[1:], T0.type)
    assert not verify_candidate(dataclasses.replace(c, systems=[broken, c.systems[1]]))


@pytest.mark.parametrize("name", ["SL(2,3)", "S4", "D_{2,8,3}", "GL(2,3)"])
def test_named_groups_have_no_structure(group, name):
    G = group(name)
    assert search_structures(G, 4).empty
    assert search_structures(G, 4, dedup_conj=False).empty


def test_thread_count_does_not_change_the_report(group):
    G = group("GL(2,3)")
    a = search_structures(G, 4, threads=1).to_dict()
    b = search_structures(G, 4, threads=2).to_dict()
    assert a == b


def test_search_validation(group):
    with pytest.raises(ValueError):
        search_structures(group("S4"), 1)
    with pytest.raises(ValueError):
        search_structures(group("S4"), 4, 4)


def test_genus2_closure(group):
    info = genus2_closure(group("GL(2,3)"))
    assert info["acts_on_genus2"] and info["witness"] is None
    assert genus2_closure(group("S4"))["acts_on_genus2"] is False


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(["SG12_3", "SG16_3", "SG18_3", "SG20_3", "SG24_12", "SG8_3", "SG24_8"]), st.data())
def test_dedup_preserves_sigma_sets(group, name, data):
    G = group(name)
    types = compatible_types(G)
    if not types:
        return
    A = data.draw(st.sampled_from(types))
    full, _ = collect_sigma(G, A, dedup_conj=False)
    dedup, _ = collect_sigma(G, A, dedup_conj=True)
    assert set(full) == set(dedup)
