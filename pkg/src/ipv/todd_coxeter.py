"""Todd-Coxeter coset enumeration over the trivial subgroup (HLT strategy).

Column ``2*i`` of the table holds the action of generator ``i`` and column
``2*i + 1`` the action of its inverse.  Cosets are numbered in definition
order; coincidences are processed immediately and exhaustively, and the
closed table is compacted so that live cosets are ``0 .. n-1`` in their
original relative order (coset 0 is the trivial subgroup itself).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CosetLimitExceeded, TableNotClosed
from .groups import PermGroup, group_from_generators
from .presentation import Presentation, Word, parse_presentation, parse_word

DEFAULT_MAX_COSETS = 10000


@dataclass
class CosetTable:
    generator_names: tuple[str, ...]
    rows: list[list[int | None]]
    live: int
    closed: bool
    defined: int = 0

    def action(self, gen: int) -> list[int]:
        return [row[2 * gen] for row in self.rows]


class _Enumerator:
    def __init__(self, presentation: Presentation, max_cosets: int):
        self.ngens = presentation.rank
        self.ncols = 2 * self.ngens
        self.max_cosets = max_cosets
        self.relators = [[2 * g + (0 if e == 1 else 1) for g, e in r] for r in presentation.relators]
        self.table: list[list[int | None]] = [[None] * self.ncols]
        self.p = [0]
        self.n_defined = 1

    def rep(self, c: int) -> int:
        p = self.p
        root = c
        while p[root] != root:
            root = p[root]
        while p[c] != root:
            p[c], c = root, p[c]
        return root

    def define(self, c: int, x: int) -> None:
        if len(self.table) >= self.max_cosets:
            raise CosetLimitExceeded(
                f"more than {self.max_cosets} cosets defined; group may be infinite or the limit too small")
        n = len(self.table)
        self.table.append([None] * self.ncols)
        self.p.append(n)
        self.n_defined += 1
        self.table[c][x] = n
        self.table[n][x ^ 1] = c

    def merge(self, k: int, l: int, queue: list[int]) -> None:
        k, l = self.rep(k), self.rep(l)
        if k != l:
            lo, hi = min(k, l), max(k, l)
            self.p[hi] = lo
            queue.append(hi)

    def coincidence(self, a: int, b: int) -> None:
        table = self.table
        queue: list[int] = []
        self.merge(a, b, queue)
        i = 0
        while i < len(queue):
            e = queue[i]
            i += 1
            for x in range(self.ncols):
                f = table[e][x]
                if f is None:
                    continue
                table[f][x ^ 1] = None
                e1, f1 = self.rep(e), self.rep(f)
                if table[e1][x] is not None:
                    self.merge(f1, table[e1][x], queue)
                elif table[f1][x ^ 1] is not None:
                    self.merge(e1, table[f1][x ^ 1], queue)
                else:
                    table[e1][x] = f1
                    table[f1][x ^ 1] = e1

    def scan_and_fill(self, c: int, w: list[int]) -> None:
        table = self.table
        f, b = c, c
        i, j = 0, len(w) - 1
        while True:
            while i <= j and table[f][w[i]] is not None:
                f = table[f][w[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and table[b][w[j] ^ 1] is not None:
                b = table[b][w[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                table[f][w[i]] = b
                table[b][w[i] ^ 1] = f
                return
            self.define(f, w[i])

    def run(self) -> None:
        c = 0
        while c < len(self.table):
            for w in self.relators:
                if self.p[c] != c:
                    break
                self.scan_and_fill(c, w)
            if self.p[c] == c:
                for x in range(self.ncols):
                    if self.p[c] != c:
                        break
                    if self.table[c][x] is None:
                        self.define(c, x)
            c += 1

    def compact(self) -> list[list[int | None]]:
        live = [c for c in range(len(self.table)) if self.p[c] == c]
        renumber = {c: i for i, c in enumerate(live)}
        return [[None if v is None else renumber[self.rep(v)] for v in self.table[c]] for c in live]


def todd_coxeter(P: Presentation | str, max_cosets: int = DEFAULT_MAX_COSETS) -> CosetTable:
    """Enumerate the cosets of the trivial subgroup of the presented group."""
    if isinstance(P, str):
        P = parse_presentation(P)
    if max_cosets < 1:
        raise ValueError("max_cosets must be >= 1")
    en = _Enumerator(P, max_cosets)
    en.run()
    rows = en.compact()
    closed = all(v is not None for row in rows for v in row)
    return CosetTable(P.generator_names, rows, len(rows), closed, en.n_defined)


def permutation_rep(T: CosetTable) -> tuple[int, list[tuple[int, ...]]]:
    if not T.closed:
        raise TableNotClosed("coset table has undefined entries")
    return T.live, [tuple(T.action(i)) for i in range(len(T.generator_names))]


def group_from_presentation(P: Presentation | str, max_cosets: int = DEFAULT_MAX_COSETS,
                            name: str | None = None) -> PermGroup:
    """Build the regular permutation representation of a finite presentation.

    The returned group keeps the presentation in ``G.presentation`` so that
    words in the original generator names can be evaluated with
    :func:`evaluate`.
    """
    if isinstance(P, str):
        P = parse_presentation(P)
    T = todd_coxeter(P, max_cosets)
    degree, gens = permutation_rep(T)
    G = group_from_generators(degree, gens, max_order=max(degree, 1), name=name)
    G.presentation = P
    return G


def evaluate_word(G: PermGroup, w: Word) -> int:
    """Element index of a word, letter ``i`` mapped to ``G.generators[i]``."""
    r = 0
    for g, e in w:
        x = G.generator_indices[g]
        r = G.mul(r, x if e == 1 else G.inv(x))
    return r


def evaluate(G: PermGroup, text: str) -> int:
    """Element index of a word written in the group's presentation generators."""
    P = getattr(G, "presentation", None)
    if P is None:
        raise ValueError("group was not built from a presentation")
    return evaluate_word(G, parse_word(text, P.generator_names))
