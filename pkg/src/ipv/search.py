"""Spherical systems of generators, Sigma sets, and the structure search.

A spherical system of type ``A = [m1, ..., mr]`` on ``G`` is a tuple
``(h1, ..., hr)`` of elements generating ``G`` with ``h1 * ... * hr = 1``
whose element orders form the multiset ``A`` (in any arrangement).
``Sigma(T)`` is the set of all conjugates of all powers of the entries of
``T``; an n-tuple of systems gives a free diagonal action exactly when the
Sigma sets intersect in the identity alone.

The search only needs the *distinct* Sigma sets realised by each alpha
value.  Sigma is unchanged by simultaneous conjugation of a system, so the
first entry may be restricted to conjugacy class representatives without
losing any Sigma set.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations
from math import prod
from typing import Iterator, Sequence

from .groups import ElementSet, Perm, PermGroup
from .ledger import genus_vectors
from .ramification import RamType, alpha_table, genus_from_rh, is_admissible, types_for

SigmaSet = ElementSet


@dataclass(frozen=True)
class SphericalSystem:
    group: PermGroup = field(compare=False, repr=False)
    elements: tuple[int, ...]
    type: RamType

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(self.group.element_orders[h] for h in self.elements)

    def is_valid(self) -> bool:
        G = self.group
        return (G.product(self.elements) == 0
                and tuple(sorted(self.orders)) == self.type.orders
                and G.generates(self.elements))

    def conjugate(self, c: int) -> "SphericalSystem":
        return SphericalSystem(self.group, tuple(self.group.conj(h, c) for h in self.elements), self.type)

    def to_dict(self) -> dict:
        G = self.group
        return {"type": str(self.type),
                "elements": [G.perm(h).cycles() for h in self.elements],
                "orders": list(self.orders)}


@dataclass
class StructureCandidate:
    group: PermGroup
    n: int
    systems: list[SphericalSystem]
    genera: tuple[int, ...]
    euler: int

    def to_dict(self) -> dict:
        return {"n": self.n, "genera": list(self.genera), "euler": self.euler,
                "systems": [T.to_dict() for T in self.systems]}


@dataclass
class SearchStats:
    systems: int = 0
    sigma_sets: int = 0
    sigma_tests: int = 0
    tasks: int = 0
    wall_time: float = 0.0


@dataclass
class SearchReport:
    group_name: str
    order: int
    n: int | None
    genus_floor: int
    outcome: str  # "Empty" or "Witness"
    witness: StructureCandidate | None
    stats: SearchStats
    vectors: list[dict] = field(default_factory=list)

    @property
    def empty(self) -> bool:
        return self.outcome == "Empty"

    def to_dict(self) -> dict:
        return {
            "group": self.group_name,
            "order": self.order,
            "n": self.n,
            "genus_floor": self.genus_floor,
            "outcome": self.outcome,
            "witness": None if self.witness is None else self.witness.to_dict(),
            "vectors": self.vectors,
            "stats": {"systems": self.stats.systems, "sigma_sets": self.stats.sigma_sets,
                      "sigma_tests": self.stats.sigma_tests, "tasks": self.stats.tasks},
        }


# -- enumeration -------------------------------------------------------------

def arrangements(A: RamType) -> list[tuple[int, ...]]:
    """All distinct orderings of the type's multiset, lexicographically."""
    return sorted(set(permutations(A.orders)))


def _enumerate_tuples(G: PermGroup, A: RamType, dedup_conj: bool) -> Iterator[tuple[int, ...]]:
    by_order: dict[int, list[int]] = {}
    for g, o in enumerate(G.element_orders):
        by_order.setdefault(o, []).append(g)
    if any(m not in by_order for m in A.orders):
        return
    reps_by_order: dict[int, list[int]] = {}
    for cls in G.classes:
        reps_by_order.setdefault(G.element_orders[cls[0]], []).append(cls[0])

    table = G.table
    mul = (lambda a, b: table[a][b]) if table is not None else G.mul
    inverse = G.inverse
    orders = G.element_orders
    full = G.order
    r = A.r

    for arr in arrangements(A):
        last = arr[-1]
        prefix = [0] * (r - 1)

        def fill(pos: int, acc: int):
            if pos == r - 1:
                h = inverse[acc]
                if orders[h] != last:
                    return
                if G.closure_bits(prefix).bit_count() == full:
                    yield tuple(prefix) + (h,)
                return
            pool = reps_by_order[arr[0]] if (pos == 0 and dedup_conj) else by_order[arr[pos]]
            for x in pool:
                prefix[pos] = x
                yield from fill(pos + 1, mul(acc, x))

        if r == 1:
            if orders[0] == last and full == 1:
                yield (0,)
            continue
        yield from fill(0, 0)


def enumerate_systems(G: PermGroup, A: RamType | Sequence[int], dedup_conj: bool = False
                      ) -> Iterator[SphericalSystem]:
    """Every spherical system of type A on G, each once, in a fixed order.

    Arrangements of the multiset are visited lexicographically; within one
    arrangement the first r-1 entries run over the elements of the required
    orders (in index order) and the last entry is forced.  With
    ``dedup_conj`` the first entry is restricted to class representatives,
    which still meets every simultaneous-conjugation orbit.
    """
    A = A if isinstance(A, RamType) else RamType(A)
    for t in _enumerate_tuples(G, A, dedup_conj):
        yield SphericalSystem(G, t, A)


def count_systems(G: PermGroup, A: RamType | Sequence[int]) -> int:
    return sum(1 for _ in enumerate_systems(G, A))


def sigma(T: SphericalSystem) -> SigmaSet:
    G = T.group
    bits = 0
    for h in T.elements:
        bits |= G.power_conjugate_bits(h)
    return SigmaSet(G, bits)


def _sigma_bits(G: PermGroup, elements: Sequence[int]) -> int:
    bits = 0
    for h in elements:
        bits |= G.power_conjugate_bits(h)
    return bits


def is_free(systems: Sequence[SphericalSystem]) -> bool:
    if not systems:
        raise ValueError("need at least one system")
    G = systems[0].group
    if any(T.group is not G for T in systems):
        raise ValueError("systems belong to different groups")
    bits = G.all_bits()
    for T in systems:
        bits &= _sigma_bits(G, T.elements)
    return bits == 1


# -- Sigma collection per type -------------------------------------------------

def _minimal_masks(found: dict[int, tuple[int, ...]]) -> dict[int, tuple[int, ...]]:
    """Drop masks that contain another mask; they can never help freeness."""
    masks = sorted(found, key=lambda m: (m.bit_count(), m))
    keep: list[int] = []
    for m in masks:
        if not any(k & m == k for k in keep):
            keep.append(m)
    return {m: found[m] for m in sorted(keep)}


def collect_sigma(G: PermGroup, A: RamType, dedup_conj: bool = True) -> tuple[dict[int, tuple[int, ...]], int]:
    """Distinct Sigma bitmasks realised by systems of type A, each with a witness tuple.

    Returns ``(masks, systems_enumerated)``; only inclusion-minimal masks are
    kept.
    """
    found: dict[int, tuple[int, ...]] = {}
    count = 0
    for t in _enumerate_tuples(G, A, dedup_conj):
        count += 1
        m = _sigma_bits(G, t)
        if m not in found:
            found[m] = t
    return _minimal_masks(found), count


def _collect_task(args):
    G, orders, dedup = args
    masks, count = collect_sigma(G, RamType(orders), dedup)
    return masks, count


# -- the search --------------------------------------------------------------

def _free_choice(slot_lists: list[list[int]], start: int) -> tuple[list[int] | None, int]:
    """DFS for one mask per slot with intersection {1}; slots with equal lists are unordered."""
    tests = 0
    n = len(slot_lists)
    chosen: list[int] = []

    def rec(i: int, acc: int, lo: int) -> bool:
        nonlocal tests
        if i == n:
            tests += 1
            return acc == 1
        masks = slot_lists[i]
        first = lo if i > 0 and slot_lists[i] is slot_lists[i - 1] else 0
        for k in range(first, len(masks)):
            tests += 1
            chosen.append(k)
            if rec(i + 1, acc & masks[k], k):
                return True
            chosen.pop()
        return False

    ok = rec(0, start, 0)
    return (chosen if ok else None), tests


def _genus_vectors_for(order: int, n: int, floor: int) -> list[tuple[int, ...]]:
    table = alpha_table()
    out = []
    for gv in genus_vectors(order, n, floor):
        if all(order // (g - 1) in table for g in gv):
            out.append(gv)
    return out


def search_structures(G: PermGroup, n: int, require_genus_ge: int = 3, threads: int = 1,
                      dedup_conj: bool = True, name: str | None = None) -> SearchReport:
    """Exhaustive search for n systems with free diagonal action and e = (-2)^n.

    Every genus vector with ``prod(g_i - 1) = |G|`` and ``g_i >= require_genus_ge``
    is tried; slot i uses every admissible type of alpha ``|G| / (g_i - 1)``
    whose orders occur in G.  Returns the first witness, or Empty.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if require_genus_ge not in (2, 3):
        raise ValueError("require_genus_ge must be 2 or 3")
    t0 = time.perf_counter()
    stats = SearchStats()
    order = G.order
    vectors = _genus_vectors_for(order, n, require_genus_ge)
    alphas = sorted({order // (g - 1) for gv in vectors for g in gv})
    types = {a: types_for(order, a, G.spectrum) for a in alphas}

    # one enumeration task per (alpha, type), merged in task order
    tasks = [(a, A) for a in alphas for A in types[a]]
    stats.tasks = len(tasks)
    results = _run_tasks(G, [A.orders for _, A in tasks], dedup_conj, threads)
    per_alpha: dict[int, dict[int, tuple[int, ...]]] = {a: {} for a in alphas}
    type_of: dict[tuple[int, ...], RamType] = {}
    for (a, A), (masks, count) in zip(tasks, results):
        stats.systems += count
        for m, t in masks.items():
            if m not in per_alpha[a]:
                per_alpha[a][m] = t
                type_of[t] = A
    per_alpha = {a: _minimal_masks(d) for a, d in per_alpha.items()}
    stats.sigma_sets = sum(len(d) for d in per_alpha.values())

    summaries = []
    witness = None
    for gv in vectors:
        alphas_v = [order // (g - 1) for g in gv]
        lists_by_alpha = {a: list(per_alpha[a]) for a in set(alphas_v)}
        slot_lists = [lists_by_alpha[a] for a in alphas_v]
        summary = {"genera": list(gv), "alphas": alphas_v,
                   "types": {str(a): [str(A) for A in types[a]] for a in sorted(set(alphas_v))},
                   "sigma_sets": {str(a): len(per_alpha[a]) for a in sorted(set(alphas_v))}}
        if any(not l for l in slot_lists):
            summary["result"] = "no-systems"
            summaries.append(summary)
            continue
        chosen, tests = _free_choice(slot_lists, G.all_bits())
        stats.sigma_tests += tests
        summary["result"] = "free" if chosen is not None else "not-free"
        summaries.append(summary)
        if chosen is not None:
            systems = []
            for a, lst, k in zip(alphas_v, slot_lists, chosen):
                t = per_alpha[a][lst[k]]
                systems.append(SphericalSystem(G, t, type_of[t]))
            euler = (-2) ** n * prod(g - 1 for g in gv) // order
            witness = StructureCandidate(G, n, systems, tuple(gv), euler)
            break
    stats.wall_time = time.perf_counter() - t0
    return SearchReport(name or G.name or "?", order, n, require_genus_ge,
                        "Empty" if witness is None else "Witness", witness, stats, summaries)


def _run_tasks(G: PermGroup, type_orders: list[tuple[int, ...]], dedup: bool, threads: int):
    jobs = [(G, orders, dedup) for orders in type_orders]
    if threads <= 1 or len(jobs) <= 1:
        return [_collect_task(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(_collect_task, jobs))


def default_threads() -> int:
    try:
        return len(os.sched_getaffinity(0))
    except AttributeError:  # pragma: no cover
        return os.cpu_count() or 1


def genus2_closure(G: PermGroup, dedup_conj: bool = True) -> dict:
    """Structures with any number of genus-2 factors (alpha = |G|).

    More genus-2 slots can only shrink the Sigma intersection, so using every
    distinct genus-2 Sigma set once gives the smallest reachable intersection.
    The remaining factors (genus >= 3) range over all genus vectors of the
    order; a free choice there is a witness.
    """
    order = G.order
    table = alpha_table()
    info = {"group": G.name, "order": order, "genus2_types": [], "genus2_sigma_sets": 0,
            "acts_on_genus2": False, "witness": None}
    if order not in table:
        return info
    masks: dict[int, tuple[int, ...]] = {}
    for A in types_for(order, order, G.spectrum):
        info["genus2_types"].append(str(A))
        found, _ = collect_sigma(G, A, dedup_conj)
        for m, t in found.items():
            masks.setdefault(m, t)
    masks = _minimal_masks(masks)
    info["genus2_sigma_sets"] = len(masks)
    if not masks:
        return info
    info["acts_on_genus2"] = True
    base = G.all_bits()
    for m in masks:
        base &= m
    info["genus2_intersection"] = base.bit_count()
    rests = [()] + [gv for gv in genus_vectors(order, None, 3)]
    checked = []
    for rest in rests:
        if prod(g - 1 for g in rest) != order:
            continue
        alphas_v = [order // (g - 1) for g in rest]
        if any(a not in table for a in alphas_v):
            checked.append({"rest": list(rest), "result": "alpha-not-admissible"})
            continue
        per = {}
        for a in set(alphas_v):
            d: dict[int, tuple[int, ...]] = {}
            for A in types_for(order, a, G.spectrum):
                found, _ = collect_sigma(G, A, dedup_conj)
                for m, t in found.items():
                    d.setdefault(m, t)
            per[a] = list(_minimal_masks(d))
        slot_lists = [per[a] for a in alphas_v]
        if any(not l for l in slot_lists):
            checked.append({"rest": list(rest), "result": "no-systems"})
            continue
        chosen, _ = _free_choice(slot_lists, base)
        if not slot_lists:
            chosen = [] if base == 1 else None
        checked.append({"rest": list(rest), "result": "free" if chosen is not None else "not-free"})
        if chosen is not None:
            info["witness"] = {"rest": list(rest), "genus2_slots": len(masks)}
            break
    info["vectors"] = checked
    return info


# -- independent re-check ------------------------------------------------------

def _perm_closure_order(gens: list[Perm]) -> int:
    d = len(gens[0])
    seen = {tuple(range(d))}
    frontier = [tuple(range(d))]
    while frontier:
        nxt = []
        for e in frontier:
            for g in gens:
                p = tuple(g[i] for i in e)
                if p not in seen:
                    seen.add(p)
                    nxt.append(p)
        frontier = nxt
    return len(seen)


def _perm_order(p: Perm) -> int:
    k, x = 1, p
    ident = Perm.identity(len(p))
    while x != ident:
        x = x * p
        k += 1
    return k


def verify_candidate(c: StructureCandidate) -> bool:
    """Re-validate a candidate from raw permutations, without the group tables."""
    G = c.group
    try:
        if len(c.systems) != c.n or len(c.genera) != c.n or c.n < 2:
            return False
        order = G.order
        gen_perms = [Perm(p) for p in G.generators]
        if _perm_closure_order(gen_perms) != order:
            return False
        sigmas = []
        for T, g in zip(c.systems, c.genera):
            perms = [Perm(G.elements[h]) for h in T.elements]
            ident = Perm.identity(G.degree)
            acc = ident
            for p in perms:
                acc = acc * p
            if acc != ident:
                return False
            if _perm_closure_order(perms) != order:
                return False
            orders = sorted(_perm_order(p) for p in perms)
            if tuple(orders) != T.type.orders or not is_admissible(T.type):
                return False
            if genus_from_rh(order, T.type) != g:
                return False
            powers = set()
            for p in perms:
                x = ident
                for _ in range(_perm_order(p)):
                    powers.add(x)
                    x = x * p
            conjugates = set()
            for q in G.elements:
                q = Perm(q)
                qi = q.inverse()
                conjugates.update(tuple(q * x * qi) for x in powers)
            sigmas.append(conjugates)
        if prod(g - 1 for g in c.genera) != order:
            return False
        if c.euler != (-2) ** c.n or (-2) ** c.n * prod(g - 1 for g in c.genera) != c.euler * order:
            return False
        common = set.intersection(*sigmas)
        return common == {tuple(range(G.degree))}
    except Exception:
        return False
