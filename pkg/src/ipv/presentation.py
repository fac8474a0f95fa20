"""Finite presentations: parsing, printing, and word evaluation.

Accepted syntax (ASCII canonical, Unicode angle brackets optional)::

    < x, y | x^4 = 1, y^3 = 1, x*y*x^-1 = y^-1 >
    < x, y, z, w | x^2 = y^2 = z^2 = w^3 = [x,y] = 1, z^x = z*y >

* ``u = v`` is stored as the relator ``u v^-1``; a chain ``u1 = u2 = ... = uk``
  yields the relators ``u1 uk^-1, ..., u(k-1) uk^-1``.
* ``[a, b]`` expands to ``a^-1 b^-1 a b``; ``a^b`` (non-integer exponent)
  expands to ``b^-1 a b``.
* ``*`` between terms is optional; an identifier that is not a declared
  generator is split greedily into declared generator names, so ``xyx^-1``
  reads as ``x*y*x^-1`` when ``x`` and ``y`` are generators.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .errors import ParseError, UnknownGenerator

# a word is a tuple of (generator index, +1 | -1) letters
Word = tuple


def reduce_word(letters) -> Word:
    out: list[tuple[int, int]] = []
    for g, e in letters:
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


def invert_word(w: Word) -> Word:
    return tuple((g, -e) for g, e in reversed(w))


def power_word(w: Word, k: int) -> Word:
    if k < 0:
        w, k = invert_word(w), -k
    return reduce_word(w * k)


def format_word(w: Word, names: Sequence[str]) -> str:
    if not w:
        return "1"
    parts = []
    i = 0
    while i < len(w):
        g, e = w[i]
        j = i
        while j < len(w) and w[j] == (g, e):
            j += 1
        k = (j - i) * e
        parts.append(names[g] if k == 1 else f"{names[g]}^{k}")
        i = j
    return "*".join(parts)


@dataclass(frozen=True)
class Presentation:
    generator_names: tuple[str, ...]
    relators: tuple[Word, ...]

    def __str__(self) -> str:
        rels = ", ".join(format_word(r, self.generator_names) for r in self.relators)
        return f"< {', '.join(self.generator_names)} | {rels} >"

    @property
    def rank(self) -> int:
        return len(self.generator_names)


_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<int>\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<sym>[<>|,=^*\[\](){}\-⟨⟩])
""", re.VERBOSE)


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "ws":
            for k, ch in enumerate(m.group(), start=pos):
                if ch == "\n":
                    line += 1
                    line_start = k + 1
        else:
            tok_text = m.group()
            tok_text = {"⟨": "<", "⟩": ">"}.get(tok_text, tok_text)
            toks.append(_Tok(kind, tok_text, line, pos - line_start + 1))
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - line_start + 1))
    return toks


class _Parser:
    def __init__(self, text: str, names: Sequence[str] | None = None):
        self.toks = _tokenize(text)
        self.i = 0
        self.names: list[str] = list(names or [])

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg: str, cls=ParseError):
        raise cls(msg, self.tok.line, self.tok.col)

    def accept(self, text: str) -> bool:
        if self.tok.kind == "sym" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> None:
        if not self.accept(text):
            self.error(f"expected {text!r}, found {self.tok.text or 'end of input'!r}")

    # pres := "<" names "|" rel ("," rel)* ">"
    def presentation(self) -> Presentation:
        self.expect("<")
        names = []
        while True:
            if self.tok.kind != "name":
                self.error("expected generator name")
            if self.tok.text in names:
                self.error(f"duplicate generator {self.tok.text!r}")
            names.append(self.tok.text)
            self.i += 1
            if not self.accept(","):
                break
        self.names = names
        self.expect("|")
        relators: list[Word] = []
        if not (self.tok.kind == "sym" and self.tok.text == ">"):
            relators.extend(self.relation())
            while self.accept(","):
                relators.extend(self.relation())
        self.expect(">")
        if self.tok.kind != "eof":
            self.error("trailing input after presentation")
        return Presentation(tuple(names), tuple(r for r in relators if r))

    # rel := word ("=" word)*
    def relation(self) -> list[Word]:
        sides = [self.word()]
        while self.accept("="):
            sides.append(self.word())
        if len(sides) == 1:
            return [sides[0]]
        last = invert_word(sides[-1])
        return [reduce_word(s + last) for s in sides[:-1]]

    # word := term+ | "1"
    def word(self) -> Word:
        letters: list = []
        n_terms = 0
        while True:
            if self.tok.kind == "int" and self.tok.text == "1" and n_terms == 0:
                self.i += 1
                return ()
            if not self._starts_term():
                break
            letters.extend(self.term())
            n_terms += 1
            self.accept("*")
        if n_terms == 0:
            self.error(f"expected a word, found {self.tok.text or 'end of input'!r}")
        return reduce_word(letters)

    def _starts_term(self) -> bool:
        t = self.tok
        return t.kind == "name" or (t.kind == "sym" and t.text in "[(")

    # term := atom ("^" (int | atom))*
    def term(self) -> Word:
        head: Word = ()
        base = self.atom()
        if len(base) > 1 and self.toks[self.i - 1].kind == "name" and self.tok.text == "^":
            # juxtaposed names: an exponent binds to the last generator only
            head, base = base[:-1], base[-1:]
        while self.accept("^"):
            braced = self.accept("{")
            if self.tok.kind == "int" or (self.tok.kind == "sym" and self.tok.text == "-"):
                sign = -1 if self.accept("-") else 1
                if self.tok.kind != "int":
                    self.error("expected integer exponent")
                k = sign * int(self.tok.text)
                self.i += 1
                base = power_word(base, k)
            else:
                conj = self.atom()
                base = reduce_word(invert_word(conj) + base + conj)
            if braced:
                self.expect("}")
        return reduce_word(head + base)

    def atom(self) -> Word:
        t = self.tok
        if t.kind == "name":
            self.i += 1
            return self.split_name(t)
        if self.accept("["):
            a = self.word()
            self.expect(",")
            b = self.word()
            self.expect("]")
            return reduce_word(invert_word(a) + invert_word(b) + a + b)
        if self.accept("("):
            w = self.word()
            self.expect(")")
            return w
        self.error(f"unexpected {t.text or 'end of input'!r}")

    def split_name(self, t: _Tok) -> Word:
        text = t.text
        if text in self.names:
            return ((self.names.index(text), 1),)
        letters = []
        pos = 0
        by_length = sorted(self.names, key=len, reverse=True)
        while pos < len(text):
            for n in by_length:
                if text.startswith(n, pos):
                    letters.append((self.names.index(n), 1))
                    pos += len(n)
                    break
            else:
                raise UnknownGenerator(f"unknown generator in {text!r}", t.line, t.col)
        return tuple(letters)


def parse_presentation(text: str) -> Presentation:
    return _Parser(text).presentation()


def parse_word(text: str, names: Sequence[str]) -> Word:
    p = _Parser(text, names)
    w = p.word()
    if p.tok.kind != "eof":
        p.error("trailing input after word")
    return w
