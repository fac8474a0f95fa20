"""Pure arithmetic stage: dimension bounds, alpha vectors and candidate orders.

Everything is re-derived from two primitive constraints:

* ``alpha_i * (g_i - 1) = |G|`` with ``alpha_i`` taken from the admissible
  alpha table, and
* ``prod(g_i - 1) = |G|`` (equivalently ``prod(alpha_i) = |G|^(n-1)``),

together with the genus floor ``g_i >= floor``.  No real-number bounds are
used; every inequality is an exact integer comparison.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod

from .ramification import alpha_table, euler_number

ALLOWED_PRIMES = (2, 3, 5, 7)


def factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def alpha_values() -> set[int]:
    return set(alpha_table())


@dataclass(frozen=True)
class AlphaVector:
    n: int
    order: int
    alphas: tuple[int, ...]
    genera: tuple[int, ...]

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.alphas)) + "}"

    def check(self, table: set[int] | None = None) -> bool:
        table = alpha_values() if table is None else table
        return (len(self.alphas) == self.n == len(self.genera)
                and prod(self.alphas) == self.order ** (self.n - 1)
                and all(a * (g - 1) == self.order for a, g in zip(self.alphas, self.genera))
                and all(a in table for a in self.alphas)
                and euler_number(self.order, self.genera) == (-2) ** self.n)


@dataclass
class OrderCandidate:
    order: int
    n: int
    vectors: list[AlphaVector]
    factorization: dict[int, int]
    trail: list[str] = field(default_factory=list)


def _vector_from_divisors(ds: tuple[int, ...]) -> AlphaVector:
    order = prod(ds)
    # largest genus first: alphas ascending as genera descend
    ds = tuple(sorted(ds, reverse=True))
    return AlphaVector(len(ds), order, tuple(order // d for d in ds), tuple(d + 1 for d in ds))


def alpha_vectors(n: int, floor: int = 3, table: set[int] | None = None) -> list[AlphaVector]:
    """Every alpha vector of length n with all genera >= floor, ordered by |G|.

    Works on ``d_i = g_i - 1``: ``alpha_i = prod_{j != i} d_j``.  Since every
    alpha is at most ``max(table)``, the product of the n-1 smallest d is
    bounded, which makes the nondecreasing enumeration finite.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    table = alpha_values() if table is None else table
    amax = max(table)
    dmin = max(floor - 1, 1)
    out = []

    def rec(prefix: list[int], p: int) -> None:
        k = len(prefix)
        if k == n - 1:
            # the last (largest) d is bounded by every alpha_i, i < n, being <= amax
            if p not in table:
                return
            d = prefix[-1] if prefix else dmin
            while True:
                if any(p // prefix[i] * d > amax for i in range(k)):
                    break
                ds = tuple(prefix) + (d,)
                if all(prod(ds) // x in table for x in ds):
                    out.append(_vector_from_divisors(ds))
                d += 1
            return
        d = prefix[-1] if prefix else dmin
        while p * d ** (n - 1 - k) <= amax:
            prefix.append(d)
            rec(prefix, p * d)
            prefix.pop()
            d += 1

    rec([], 1)
    out.sort(key=lambda v: (v.order, v.genera))
    return out


def genus_vectors(order: int, n: int | None, floor: int = 2) -> list[tuple[int, ...]]:
    """Sorted genus vectors with entries >= floor and ``prod(g_i - 1) = order``.

    With ``n=None`` the length is free; genus-2 entries contribute a factor
    1 and can be padded arbitrarily, so they are left implicit and only the
    entries >= max(floor, 3) are returned.
    """
    out: list[tuple[int, ...]] = []
    dmin = max(floor - 1, 1)
    if n is None:
        dmin = max(dmin, 2)

    def rec(rest: int, lo: int, acc: list[int]) -> None:
        if n is not None and len(acc) == n:
            if rest == 1:
                out.append(tuple(d + 1 for d in acc))
            return
        if rest == 1 and n is None and acc:
            out.append(tuple(d + 1 for d in acc))
            return
        d = lo
        while d <= rest:
            if rest % d == 0:
                acc.append(d)
                rec(rest // d, d, acc)
                acc.pop()
            d += 1

    if order == 1 and n is None:
        return []
    rec(order, dmin, [])
    return sorted(out, key=lambda g: (len(g), g))


def dimension_bound(genus_floor: int) -> int | None:
    """Largest n allowed by the order/alpha squeeze, refined at the top end.

    With ``d = genus_floor - 1`` we have ``|G| >= d^n`` and
    ``|G|^(n-1) <= amax^n``, so ``d^(n(n-1)) <= amax^n``, i.e.
    ``d^(n-1) <= amax``.  For ``d = 1`` there is no bound (``None``).
    The raw bound ``n0`` is lowered by one when both escapes fail at n0: a
    vector with some ``d_i >= d + 1`` violates the squeeze, and the all-equal
    vector needs ``alpha = d^(n0-1)``, which is not in the table.
    """
    table = alpha_values()
    amax = max(table)
    d = genus_floor - 1
    if d <= 1:
        return None
    n = 2
    while d ** n <= amax:
        n += 1
    raw = n
    smallest_mixed = d ** (raw - 1) * (d + 1)
    if smallest_mixed ** (raw - 1) > amax ** raw and d ** (raw - 1) not in table:
        return raw - 1
    return raw


def raw_dimension_bound(genus_floor: int) -> int | None:
    d = genus_floor - 1
    if d <= 1:
        return None
    amax = max(alpha_values())
    n = 2
    while d ** n <= amax:
        n += 1
    return n


def prime_trail(order: int) -> list[str]:
    primes = sorted(factorize(order))
    trail = []
    if set(primes) <= set(ALLOWED_PRIMES):
        trail.append("lemma-5.1")
    if len(primes) <= 3:
        trail.append("lemma-5.2")
    trail.append({3: "lemma-5.3", 2: "lemma-5.4", 1: "lemma-5.6"}.get(len(primes), "unclassified"))
    return trail


def candidate_orders(n: int, floor: int = 3) -> dict[int, OrderCandidate]:
    """Orders admitting at least one alpha vector, each with its lemma trail."""
    out: dict[int, OrderCandidate] = {}
    for v in alpha_vectors(n, floor):
        c = out.get(v.order)
        if c is None:
            c = out[v.order] = OrderCandidate(v.order, n, [], factorize(v.order), prime_trail(v.order))
        c.vectors.append(v)
    return out


def _factorizations(order: int, parts: int, lo: int = 2) -> list[tuple[int, ...]]:
    if parts == 0:
        return [()] if order == 1 else []
    out = []
    d = lo
    while d ** parts <= order:
        if order % d == 0:
            out.extend((d,) + rest for rest in _factorizations(order // d, parts - 1, d))
        d += 1
    return out


def n6_arithmetic_gate() -> dict:
    """Exact-arithmetic facts that close the n = 6 case."""
    table = alpha_values()
    amax = max(table)
    n = 6
    lower = 2 ** n
    upper = 1
    while (upper + 1) ** (n - 1) <= amax ** n:
        upper += 1
    needs_genus3 = 3 ** n > upper
    fact96 = _factorizations(96, n)
    fact168 = _factorizations(168, n)
    facts = {
        "order_lower": lower,
        "order_upper": upper,
        "genus3_forced": needs_genus3,
        "min_all_genus_ge4": 3 ** n,
        "order96_factorizations": [list(f) for f in fact96],
        "order96_genus4_alpha": 96 // 3,
        "order96_alpha_in_table": (96 // 3) in table,
        "order168_six_factor_products": [list(f) for f in fact168],
        "alpha_vectors_n6": [str(v) for v in alpha_vectors(n)],
    }
    facts["passed"] = (lower == 64 and upper == 203 and needs_genus3
                       and all(3 in f for f in fact96) and not facts["order96_alpha_in_table"]
                       and not fact168)
    return facts
