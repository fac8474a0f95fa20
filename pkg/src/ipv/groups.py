"""Finite permutation groups with a fully enumerated element table.

Permutations act on the right: ``(a * b)[i] == b[a[i]]``, i.e. ``a`` is
applied first.  This matches the right action of generators on a coset
table, so the regular representation produced by coset enumeration is a
homomorphism of the presented group.

Every element of a :class:`PermGroup` is identified with its index in the
breadth-first element table (identity first).  All hot-path operations work
on these indices and on Python ``int`` bitsets over them.
"""

from __future__ import annotations

import re
from collections import Counter, deque
from math import gcd
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import InvalidPermutation, OrderExceeded

TABLE_LIMIT = 256
DEFAULT_MAX_ORDER = 256
HARD_MAX_ORDER = 4096


_CYCLES_RE = re.compile(r"\s*(\(\s*(\d+(\s*[\s,]\s*\d+)*)?\s*\)\s*)+")


class Perm(tuple):
    """A permutation of ``{0, ..., degree-1}`` stored as its image tuple."""

    def __new__(cls, images: Iterable[int]):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise InvalidPermutation(f"not a bijection on 0..{len(images) - 1}: {images}")
        return super().__new__(cls, images)

    @classmethod
    def identity(cls, degree: int) -> "Perm":
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, text: str, degree: int) -> "Perm":
        """Parse disjoint-cycle notation such as ``"(0 1 2)(3 4)"`` or ``"()"``."""
        images = list(range(degree))
        seen: set[int] = set()
        if not _CYCLES_RE.fullmatch(text):
            raise InvalidPermutation(f"bad cycle notation: {text!r}")
        for cycle in re.findall(r"\(([^()]*)\)", text):
            points = [int(p) for p in re.split(r"[\s,]+", cycle.strip()) if p]
            for p in points:
                if p >= degree or p in seen:
                    raise InvalidPermutation(f"bad point {p} in {text!r} (degree {degree})")
                seen.add(p)
            for a, b in zip(points, points[1:] + points[:1]):
                images[a] = b
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self)

    def __mul__(self, other: "Perm") -> "Perm":
        return Perm(other[i] for i in self)

    def inverse(self) -> "Perm":
        inv = [0] * len(self)
        for i, j in enumerate(self):
            inv[j] = i
        return Perm(inv)

    def cycles(self) -> str:
        parts = []
        seen = set()
        for start in range(len(self)):
            if start in seen or self[start] == start:
                continue
            cycle = [start]
            seen.add(start)
            j = self[start]
            while j != start:
                cycle.append(j)
                seen.add(j)
                j = self[j]
            parts.append("(" + " ".join(map(str, cycle)) + ")")
        return "".join(parts) or "()"

    def __repr__(self) -> str:
        return f"Perm({self.cycles()})"


def _compose(a: tuple, b: tuple) -> tuple:
    return tuple(b[i] for i in a)


class ElementSet:
    """A bitset over the element indices of one fixed group."""

    __slots__ = ("group", "bits")

    def __init__(self, group: "PermGroup", bits: int = 0):
        self.group = group
        self.bits = bits

    @classmethod
    def of(cls, group: "PermGroup", indices: Iterable[int]) -> "ElementSet":
        bits = 0
        for i in indices:
            bits |= 1 << i
        return cls(group, bits)

    def __contains__(self, index: int) -> bool:
        return (self.bits >> index) & 1 == 1

    def __iter__(self) -> Iterator[int]:
        return iter(bits_to_indices(self.bits))

    def __len__(self) -> int:
        return self.bits.bit_count()

    def _check(self, other: "ElementSet") -> None:
        if other.group is not self.group:
            raise ValueError("element sets belong to different groups")

    def __and__(self, other: "ElementSet") -> "ElementSet":
        self._check(other)
        return ElementSet(self.group, self.bits & other.bits)

    def __or__(self, other: "ElementSet") -> "ElementSet":
        self._check(other)
        return ElementSet(self.group, self.bits | other.bits)

    def __eq__(self, other) -> bool:
        return isinstance(other, ElementSet) and other.group is self.group and other.bits == self.bits

    def __hash__(self) -> int:
        return hash(self.bits)

    def __repr__(self) -> str:
        return f"ElementSet({sorted(self)})"


def bits_to_indices(bits: int) -> list[int]:
    out = []
    while bits:
        low = bits & -bits
        out.append(low.bit_length() - 1)
        bits ^= low
    return out


class PermGroup:
    """A finite group generated by permutations, with all elements indexed.

    Elements are discovered breadth-first from the identity, multiplying on
    the right by the generators in the order given.  The construction is
    fully deterministic, so identical generators always give identical
    indexing.
    """

    def __init__(self, degree: int, generators: Sequence[Sequence[int]], max_order: int = DEFAULT_MAX_ORDER,
                 name: str | None = None):
        if max_order < 1:
            raise ValueError("max_order must be >= 1")
        max_order = min(max_order, HARD_MAX_ORDER)
        gens = []
        for g in generators:
            p = Perm(g)
            if len(p) != degree:
                raise InvalidPermutation(f"generator {p.cycles()} has degree {len(p)}, expected {degree}")
            gens.append(p)
        self.name = name
        self.degree = degree
        self.generators: tuple[Perm, ...] = tuple(gens)

        identity = tuple(range(degree))
        elements = [identity]
        index = {identity: 0}
        queue = deque([identity])
        # right Cayley graph edges: element -> product with each generator
        while queue:
            e = queue.popleft()
            for g in gens:
                p = _compose(e, g)
                if p not in index:
                    if len(elements) >= max_order:
                        raise OrderExceeded(f"closure exceeds max_order={max_order}")
                    index[p] = len(elements)
                    elements.append(p)
                    queue.append(p)
        self.elements: list[tuple] = elements
        self.index: dict[tuple, int] = index
        self.order = len(elements)
        self.identity = 0

        self.table: list[list[int]] | None = None
        if self.order <= TABLE_LIMIT:
            self.table = self._build_table()
        self.inverse = [self.index[tuple(Perm(e).inverse())] for e in elements]
        self.generator_indices = [self.index[tuple(g)] for g in gens]
        self.element_orders = [self._order_of(g) for g in range(self.order)]
        self.classes, self.class_of = self._conjugacy_classes()
        self.class_bits = [sum(1 << i for i in c) for c in self.classes]
        self.center = ElementSet.of(self, (c[0] for c in self.classes if len(c) == 1))
        self._pc_bits: list[int | None] = [None] * self.order

    # -- basic arithmetic -------------------------------------------------

    def _build_table(self) -> list[list[int]]:
        E = np.array(self.elements, dtype=np.int64).reshape(self.order, self.degree)
        n, d = E.shape
        # prod[i, j, :] = E[j][E[i]]  (apply i first, then j)
        prod = E[np.arange(n)[None, :, None], E[:, None, :]]
        keys = {np.asarray(e, dtype=np.int64).tobytes(): i for i, e in enumerate(self.elements)}
        flat = prod.reshape(n * n, d)
        idx = [keys[row.tobytes()] for row in flat]
        return [idx[i * n:(i + 1) * n] for i in range(n)]

    def mul(self, a: int, b: int) -> int:
        """Index of ``elements[a] * elements[b]``."""
        if self.table is not None:
            return self.table[a][b]
        return self.index[_compose(self.elements[a], self.elements[b])]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inverse[a], -k
        result, base = 0, a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def conj(self, g: int, c: int) -> int:
        """``c * g * c^-1``."""
        return self.mul(self.mul(c, g), self.inverse[c])

    def product(self, seq: Iterable[int]) -> int:
        r = 0
        for s in seq:
            r = self.mul(r, s)
        return r

    def perm(self, a: int) -> Perm:
        return Perm(self.elements[a])

    def _order_of(self, g: int) -> int:
        k, x = 1, g
        while x != 0:
            x = self.mul(x, g)
            k += 1
        return k

    def _conjugacy_classes(self) -> tuple[list[list[int]], list[int]]:
        class_of = [-1] * self.order
        classes: list[list[int]] = []
        gens = self.generator_indices
        for g in range(self.order):
            if class_of[g] >= 0:
                continue
            cid = len(classes)
            cls = [g]
            class_of[g] = cid
            i = 0
            while i < len(cls):
                x = cls[i]
                i += 1
                for s in gens:
                    y = self.conj(x, s)
                    if class_of[y] < 0:
                        class_of[y] = cid
                        cls.append(y)
            cls.sort()
            classes.append(cls)
        return classes, class_of

    # -- derived data -----------------------------------------------------

    @property
    def spectrum(self) -> set[int]:
        return set(self.element_orders)

    def elements_of_order(self, m: int) -> list[int]:
        return [g for g, o in enumerate(self.element_orders) if o == m]

    def order_statistics(self) -> dict[int, int]:
        return dict(sorted(Counter(self.element_orders).items()))

    def class_sizes(self) -> list[int]:
        return [len(c) for c in self.classes]

    def is_abelian(self) -> bool:
        return len(self.classes) == self.order

    def is_cyclic(self) -> bool:
        return self.order in self.element_orders

    def power_conjugate_bits(self, g: int) -> int:
        cached = self._pc_bits[g]
        if cached is None:
            bits = 0
            x = 0
            for _ in range(self.element_orders[g]):
                bits |= self.class_bits[self.class_of[x]]
                x = self.mul(x, g)
            self._pc_bits[g] = cached = bits
        return cached

    def closure_bits(self, gens: Iterable[int]) -> int:
        """Bitset of the subgroup generated by ``gens``."""
        gens = [g for g in dict.fromkeys(gens) if g != 0]
        bits = 1
        members = [0]
        i = 0
        table = self.table
        while i < len(members):
            x = members[i]
            i += 1
            row = table[x] if table is not None else None
            for s in gens:
                y = row[s] if row is not None else self.mul(x, s)
                if not (bits >> y) & 1:
                    bits |= 1 << y
                    members.append(y)
        return bits

    def generates(self, gens: Iterable[int]) -> bool:
        return self.closure_bits(gens).bit_count() == self.order

    def all_bits(self) -> int:
        return (1 << self.order) - 1

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<PermGroup{label} order={self.order} degree={self.degree}>"


# -- module-level operations -------------------------------------------------

def group_from_generators(degree: int, gens: Sequence[Sequence[int]], max_order: int = DEFAULT_MAX_ORDER,
                          name: str | None = None) -> PermGroup:
    return PermGroup(degree, gens, max_order=max_order, name=name)


def element_order(G: PermGroup, g: int) -> int:
    return G.element_orders[g]


def conjugacy_classes(G: PermGroup) -> list[list[int]]:
    return [list(c) for c in G.classes]


def closure(G: PermGroup, S: ElementSet | Iterable[int]) -> ElementSet:
    indices = list(S)
    return ElementSet(G, G.closure_bits(indices))


def is_generating(G: PermGroup, S: ElementSet | Iterable[int]) -> bool:
    return G.generates(list(S))


def power_conjugate_closure(G: PermGroup, g: int) -> ElementSet:
    """All conjugates of all powers of ``g`` (powers include ``g^0``)."""
    return ElementSet(G, G.power_conjugate_bits(g))


def center(G: PermGroup) -> ElementSet:
    return G.center


def commutator(G: PermGroup, a: int, b: int) -> int:
    """``a^-1 b^-1 a b``."""
    return G.product((G.inv(a), G.inv(b), a, b))


def derived_subgroup(G: PermGroup) -> ElementSet:
    comms = {commutator(G, a, b) for a in range(G.order) for b in G.generator_indices}
    # normal closure of the generator commutators is the derived subgroup
    bits = G.closure_bits(comms)
    while True:
        members = bits_to_indices(bits)
        extra = {G.conj(m, c) for m in members for c in G.generator_indices}
        new_bits = G.closure_bits(members + list(extra))
        if new_bits == bits:
            return ElementSet(G, bits)
        bits = new_bits


def abelian_invariants(G: PermGroup) -> tuple[int, ...]:
    """Invariants of G/G' as sorted prime powers, e.g. (2, 4, 3) -> (2, 3, 4)."""
    Dbits = derived_subgroup(G).bits
    m = G.order // Dbits.bit_count()
    # coset orders: least k with g^k in G'
    coset_orders = Counter()
    for g in range(G.order):
        k, x = 1, g
        while not (Dbits >> x) & 1:
            x = G.mul(x, g)
            k += 1
        coset_orders[k] += 1
    d = Dbits.bit_count()
    coset_orders = {k: v // d for k, v in coset_orders.items()}
    invariants = []
    for p in _prime_factors(m):
        # n_k = #{x : x^(p^k) = 1} = p^(sum_i min(k, e_i)) in the quotient
        logs = []
        k = 0
        while True:
            n_k = sum(v for o, v in coset_orders.items() if (p ** k) % o == 0)
            logs.append(_ilog(n_k, p))
            if k > 0 and logs[-1] == logs[-2]:
                break
            k += 1
        # ge[k] = number of cyclic factors of exponent > k
        ge = [logs[j + 1] - logs[j] for j in range(len(logs) - 1)] + [0]
        for j in range(len(ge) - 1):
            invariants.extend([p ** (j + 1)] * (ge[j] - ge[j + 1]))
    return tuple(sorted(invariants))


def _ilog(n: int, p: int) -> int:
    k = 0
    while n > 1:
        n //= p
        k += 1
    return k


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)
