"""Terms of the free binary algebra: parsing, printing, invariants, substitution.

A term is either a variable (:class:`Var`) or the meet of two terms
(:class:`Meet`).  Terms are immutable and hashable, so they can be used as
dictionary keys and shared freely.

The concrete syntax uses ``^`` for the meet, left-associative::

    x ^ y ^ z   ==   (x ^ y) ^ z
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

__all__ = [
    "Var",
    "Meet",
    "Term",
    "TermSyntaxError",
    "Invariants",
    "parse_term",
    "format_term",
    "term_invariants",
    "substitute",
    "compose",
    "variables",
    "leaves",
    "meet_all",
    "meet_all_right",
    "random_term",
]


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Meet:
    left: "Term"
    right: "Term"

    def __str__(self) -> str:
        return format_term(self)


Term = Var | Meet

_VAR_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")


class TermSyntaxError(ValueError):
    """Raised by :func:`parse_term`; ``pos`` is the 0-based offset of the problem."""

    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> Term:
        t = self.term()
        if self._peek():
            raise TermSyntaxError(f"unexpected {self._peek()!r}", self.text, self.pos)
        return t

    def term(self) -> Term:
        t = self.factor()
        while self._peek() == "^":
            self.pos += 1
            t = Meet(t, self.factor())
        return t

    def factor(self) -> Term:
        c = self._peek()
        if c == "(":
            self.pos += 1
            t = self.term()
            if self._peek() != ")":
                raise TermSyntaxError("expected ')'", self.text, self.pos)
            self.pos += 1
            return t
        m = _VAR_RE.match(self.text, self.pos)
        if m is None:
            what = repr(c) if c else "end of input"
            raise TermSyntaxError(f"expected variable or '(' but found {what}", self.text, self.pos)
        self.pos = m.end()
        return Var(m.group())


def parse_term(text: str) -> Term:
    """Parse ``text`` in the ``^``-grammar; raises :class:`TermSyntaxError`."""
    return _Parser(text).parse()


def format_term(t: Term) -> str:
    """Fully parenthesized rendering, e.g. ``((x^y)^z)``."""
    out: list[str] = []
    stack: list[Term | str] = [t]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            out.append(item)
        elif isinstance(item, Var):
            out.append(item.name)
        else:
            stack.extend([")", item.right, "^", item.left])
            out.append("(")
    return "".join(out)


@dataclass(frozen=True)
class Invariants:
    """Leftmost/rightmost letters, contents and 2-content of a term."""

    l: str
    r: str
    co: frozenset[str]
    co_l: frozenset[str]
    co_r: frozenset[str]
    co2: frozenset[tuple[str, str]]


def term_invariants(t: Term) -> Invariants:
    if isinstance(t, Var):
        x = t.name
        return Invariants(x, x, frozenset({x}), frozenset(), frozenset(), frozenset({(x, x)}))
    a = term_invariants(t.left)
    b = term_invariants(t.right)
    # a leaf child contributes its letter to the left/right content
    co_l = a.co_l | b.co_l | ({t.left.name} if isinstance(t.left, Var) else set())
    co_r = a.co_r | b.co_r | ({t.right.name} if isinstance(t.right, Var) else set())
    return Invariants(
        l=a.l,
        r=b.r,
        co=a.co | b.co,
        co_l=frozenset(co_l),
        co_r=frozenset(co_r),
        co2=a.co2 | b.co2 | {(a.l, b.r)},
    )


def substitute(t: Term, s: Mapping[str, Term]) -> Term:
    """Replace every variable ``x`` by ``s[x]``; variables not in ``s`` are kept."""
    if isinstance(t, Var):
        return s.get(t.name, t)
    return Meet(substitute(t.left, s), substitute(t.right, s))


def compose(s1: Mapping[str, Term], s2: Mapping[str, Term]) -> dict[str, Term]:
    """The substitution "first ``s1``, then ``s2``"."""
    out = {x: substitute(v, s2) for x, v in s1.items()}
    for x, v in s2.items():
        out.setdefault(x, v)
    return out


def leaves(t: Term) -> list[str]:
    """Variable occurrences from left to right."""
    out: list[str] = []
    stack = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, Var):
            out.append(u.name)
        else:
            stack.append(u.right)
            stack.append(u.left)
    return out


def variables(t: Term) -> frozenset[str]:
    return frozenset(leaves(t))


def _as_term(u: Term | str) -> Term:
    return Var(u) if isinstance(u, str) else u


def meet_all(*us: Term | str) -> Term:
    """``(∧ u1 u2 ... un) = (...((u1 ∧ u2) ∧ u3) ... ) ∧ un``."""
    if not us:
        raise ValueError("meet_all needs at least one term")
    t = _as_term(us[0])
    for u in us[1:]:
        t = Meet(t, _as_term(u))
    return t


def meet_all_right(*us: Term | str) -> Term:
    """``(un ... u1 ∧) = un ∧ (... ∧ (u2 ∧ u1))``; arguments are given as ``un, ..., u1``."""
    if not us:
        raise ValueError("meet_all_right needs at least one term")
    t = _as_term(us[-1])
    for u in reversed(us[:-1]):
        t = Meet(_as_term(u), t)
    return t


def random_term(rng: random.Random, size: int, alphabet: Sequence[str] | Iterable[str]) -> Term:
    """A uniformly shaped random term with ``size`` leaves over ``alphabet``."""
    alphabet = list(alphabet)
    if size < 1:
        raise ValueError("size must be positive")
    if size == 1:
        return Var(rng.choice(alphabet))
    k = rng.randint(1, size - 1)
    return Meet(random_term(rng, k, alphabet), random_term(rng, size - k, alphabet))
