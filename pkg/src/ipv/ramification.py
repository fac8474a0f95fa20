"""Exact calculus of genus-zero ramification types.

A ramification type is a sorted multiset ``[m1 <= ... <= mr]`` of branching
orders.  ``theta = -2 + sum(1 - 1/mj)`` and ``alpha = 2 / theta``.  A type is
*admissible* when ``theta > 0``, ``alpha`` is an integer and every ``mj``
divides ``alpha``.  Everything here is exact (``fractions.Fraction``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import prod
from typing import Iterable, Sequence

from .errors import NonIntegral, NonIntegralGenus, ThetaZero


@dataclass(frozen=True, order=True)
class RamType:
    orders: tuple[int, ...]

    def __init__(self, orders: Iterable[int]):
        orders = tuple(sorted(int(m) for m in orders))
        if not orders:
            raise ValueError("a ramification type needs at least one branching order")
        if any(m < 2 for m in orders):
            raise ValueError(f"branching orders must be >= 2: {orders}")
        object.__setattr__(self, "orders", orders)

    @property
    def r(self) -> int:
        return len(self.orders)

    @cached_property
    def theta(self) -> Fraction:
        return theta_of(self.orders)

    @property
    def alpha(self) -> Fraction:
        return alpha(self)

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.orders)) + "]"

    def __repr__(self) -> str:
        return f"RamType({str(self)})"


def theta_of(orders: Sequence[int]) -> Fraction:
    return -2 + sum((1 - Fraction(1, m) for m in orders), Fraction(0))


def theta(A: RamType | Sequence[int]) -> Fraction:
    return A.theta if isinstance(A, RamType) else theta_of(A)


def alpha(A: RamType | Sequence[int]) -> Fraction:
    t = theta(A)
    if t == 0:
        raise ThetaZero(f"theta of {A} is zero")
    return 2 / t


def is_admissible(A: RamType | Sequence[int], check_divisibility: bool = True) -> bool:
    orders = A.orders if isinstance(A, RamType) else tuple(A)
    t = theta_of(orders)
    if t <= 0:
        return False
    a = 2 / t
    if a.denominator != 1:
        return False
    return not check_divisibility or all(a.numerator % m == 0 for m in orders)


def length_bound() -> tuple[int, int]:
    """Return ``(r_max, r_first_empty)`` proving that admissible types have r <= r_max.

    Admissibility forces ``2 <= m_j <= alpha``, so ``theta <= 1``.  Since each
    summand ``1 - 1/m`` is at least 1/2, ``theta >= r/2 - 2``.  Hence any r with
    ``r/2 - 2 > 1`` is empty, and the lower bound only grows with r.
    """
    r = 1
    while Fraction(r, 2) - 2 <= 1:
        r += 1
    return r - 1, r


def _branch_limit(s: Fraction, k: int) -> Fraction | None:
    """Upper bound for the next entry m, given prefix sum s and k slots left.

    All remaining entries are >= m, and the largest entry divides alpha, so
    ``m * theta <= 2`` with ``theta >= s + k(1 - 1/m) - 2``, giving
    ``m (s + k - 2) <= k + 2``.  When ``s + k - 2 <= 0`` theta is negative for
    every completion, signalled by ``None``.
    """
    slack = s + k - 2
    if slack <= 0:
        return None
    return Fraction(k + 2) / slack


def enumerate_admissible_types(check_divisibility: bool = True) -> list[RamType]:
    """All admissible genus-zero types, ordered by length then lexicographically.

    ``check_divisibility=False`` exists only as a negative control: it keeps
    the same search bounds but stops requiring every m_j to divide alpha.
    """
    r_max, _ = length_bound()
    out: list[RamType] = []

    def extend(prefix: list[int], s: Fraction, r: int) -> None:
        k = r - len(prefix)
        if k == 0:
            if is_admissible(prefix, check_divisibility):
                out.append(RamType(prefix))
            return
        limit = _branch_limit(s, k)
        if limit is None:
            return
        lo = prefix[-1] if prefix else 2
        m = lo
        while m <= limit:
            prefix.append(m)
            extend(prefix, s + 1 - Fraction(1, m), r)
            prefix.pop()
            m += 1

    for r in range(1, r_max + 1):
        extend([], Fraction(0), r)
    return out


_TYPES_CACHE: list[RamType] | None = None


def admissible_types() -> list[RamType]:
    global _TYPES_CACHE
    if _TYPES_CACHE is None:
        _TYPES_CACHE = enumerate_admissible_types()
    return list(_TYPES_CACHE)


def alpha_table() -> dict[int, list[RamType]]:
    """Admissible alpha values mapped to their types."""
    table: dict[int, list[RamType]] = {}
    for A in admissible_types():
        table.setdefault(int(A.alpha), []).append(A)
    return dict(sorted(table.items()))


def genus_from_rh(order: int, A: RamType | Sequence[int]) -> int:
    """Genus g with ``2(g - 1) = order * theta(A)``."""
    twice = order * theta(A)
    if twice <= 0 or twice.denominator != 1 or twice.numerator % 2:
        raise NonIntegralGenus(f"order {order} * theta({A}) = {twice} is not a positive even integer")
    return 1 + twice.numerator // 2


def euler_number(order: int, genera: Sequence[int]) -> int:
    """``(-2)^n / order * prod(g_i - 1)`` as an exact integer."""
    num = (-2) ** len(genera) * prod(g - 1 for g in genera)
    if num % order:
        raise NonIntegral(f"{num} is not divisible by the group order {order}")
    return num // order


def types_for(order: int, alpha_target: int, element_orders: Iterable[int]) -> list[RamType]:
    """Admissible types with the given alpha whose entries all occur as element orders."""
    spectrum = set(element_orders)
    if alpha_target <= 0 or order % alpha_target:
        return []
    return [A for A in admissible_types()
            if A.alpha == alpha_target and set(A.orders) <= spectrum]
