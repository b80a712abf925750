"""Finite binary algebras given by Cayley tables, used as identity oracles."""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product
from typing import Mapping, Sequence

import numpy as np

from .term import Term, Var, parse_term, variables

__all__ = [
    "AlgebraError",
    "FiniteAlgebra",
    "AxiomResult",
    "AXIOMS",
    "evaluate",
    "evaluate_all",
    "check_axioms",
    "find_counterexample",
    "satisfies_identity",
    "rees_product",
    "e2",
    "load_algebra",
    "dump_algebra",
]


class AlgebraError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteAlgebra:
    """``table[i][j]`` is the index of ``elements[i] ∧ elements[j]``."""

    elements: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.elements)
        if n == 0:
            raise AlgebraError("an algebra needs at least one element")
        if len(set(self.elements)) != n:
            raise AlgebraError("element names must be distinct")
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise AlgebraError(f"table must be {n}x{n}")
        for row in self.table:
            for x in row:
                if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < n:
                    raise AlgebraError(f"table entry {x!r} is not an element index")

    @classmethod
    def from_rows(cls, elements: Sequence[str], rows: Sequence[Sequence[int]]) -> "FiniteAlgebra":
        return cls(tuple(str(e) for e in elements), tuple(tuple(r) for r in rows))

    def __len__(self) -> int:
        return len(self.elements)

    def index(self, name: str) -> int:
        try:
            return self.elements.index(name)
        except ValueError:
            raise AlgebraError(f"no element named {name!r}") from None

    def op(self, i: int, j: int) -> int:
        return self.table[i][j]

    def array(self) -> np.ndarray:
        return np.array(self.table, dtype=np.int64)


def _postorder(t: Term) -> list[Term]:
    out, stack = [], [(t, False)]
    while stack:
        u, done = stack.pop()
        if isinstance(u, Var) or done:
            out.append(u)
        else:
            stack.append((u, True))
            stack.append((u.right, False))
            stack.append((u.left, False))
    return out


def _eval(t: Term, table, lookup):
    # values are ints or numpy arrays; the same walk serves both
    vals: dict[int, object] = {}
    for u in _postorder(t):
        if isinstance(u, Var):
            vals[id(u)] = lookup(u.name)
        else:
            vals[id(u)] = table[vals[id(u.left)], vals[id(u.right)]]
    return vals[id(t)]


def evaluate(m: FiniteAlgebra, t: Term, assignment: Mapping[str, int]) -> int:
    """Index of the value of ``t`` under ``assignment``."""

    def lookup(x: str) -> int:
        if x not in assignment:
            raise AlgebraError(f"variable {x!r} is unbound")
        v = assignment[x]
        if not 0 <= v < len(m):
            raise AlgebraError(f"{x!r} is assigned {v}, not an element index")
        return v

    return int(_eval(t, m.array(), lookup))


def _grid(m: FiniteAlgebra, names: Sequence[str]) -> dict[str, np.ndarray]:
    # row-major order: lexicographic by variable name, last variable fastest
    n, k = len(m), len(names)
    if k == 0:
        return {}
    cols = np.indices((n,) * k).reshape(k, -1)
    return dict(zip(names, cols))


def evaluate_all(m: FiniteAlgebra, t: Term, names: Sequence[str]) -> np.ndarray:
    """Values of ``t`` over every assignment of ``names``, in lexicographic order."""
    grid = _grid(m, names)
    size = len(m) ** len(names)

    def lookup(x: str):
        if x not in grid:
            raise AlgebraError(f"variable {x!r} is unbound")
        return grid[x]

    out = _eval(t, m.array(), lookup)
    return np.broadcast_to(np.asarray(out), (size,))


def find_counterexample(m: FiniteAlgebra, u: Term, v: Term) -> dict[str, str] | None:
    """First assignment (in lexicographic order) separating ``u`` and ``v``."""
    names = sorted(variables(u) | variables(v))
    diff = np.flatnonzero(evaluate_all(m, u, names) != evaluate_all(m, v, names))
    if diff.size == 0:
        return None
    idx = np.unravel_index(int(diff[0]), (len(m),) * len(names))
    return {x: m.elements[int(i)] for x, i in zip(names, idx)}


def satisfies_identity(m: FiniteAlgebra, u: Term, v: Term) -> bool:
    return find_counterexample(m, u, v) is None


def _axiom(lhs: str, rhs: str) -> tuple[Term, Term]:
    return parse_term(lhs), parse_term(rhs)


AXIOMS: dict[str, tuple[Term, Term]] = {
    "PS1": _axiom("x^x", "x"),
    "PS2": _axiom("(x^y)^(x^z)", "(x^y)^z"),
    "PS3": _axiom("((x^y)^(x^z))^(x^w)", "(x^y)^((x^z)^(x^w))"),
    "PS2'": _axiom("(z^x)^(y^x)", "z^(y^x)"),
    "PS3'": _axiom("(w^x)^((z^x)^(y^x))", "((w^x)^(z^x))^(y^x)"),
}


@dataclass(frozen=True)
class AxiomResult:
    name: str
    holds: bool
    counterexample: dict[str, str] | None


def check_axioms(m: FiniteAlgebra) -> list[AxiomResult]:
    report = []
    for name, (u, v) in AXIOMS.items():
        cex = find_counterexample(m, u, v)
        report.append(AxiomResult(name, cex is None, cex))
    return report


# E2 is the set of idempotents of the Rees matrix semigroup
# M0({1}; {1,2}, {1,2}; P) under the meet e ∧ f defined by
# (e]_R ∩ (f]_L = (e ∧ f]_≤.

_SANDWICH = ((1, 1), (1, 0))  # indexed [lambda][i]


def rees_product(a, b, sandwich=_SANDWICH):
    """Product in a Rees matrix semigroup over the trivial group; ``None`` is zero."""
    if a is None or b is None:
        return None
    (i, lam), (j, mu) = a, b
    return (i, mu) if sandwich[lam - 1][j - 1] else None


def _name(e) -> str:
    return "0" if e is None else f"e{e[0]}{e[1]}"


def e2() -> FiniteAlgebra:
    """The four idempotents of the five-element semigroup ``A2`` under ``∧``."""
    semigroup = [None] + list(product((1, 2), (1, 2)))
    idem = [e for e in semigroup if rees_product(e, e) == e]

    def mul(a, b):
        return rees_product(a, b)

    def below(e):
        return {h for h in idem if h == mul(e, h) == mul(h, e)}

    table = []
    for e in idem:
        row = []
        for f in idem:
            target = {g for g in idem if g == mul(e, g) and g == mul(g, f)}
            (g,) = [g for g in idem if below(g) == target]
            row.append(idem.index(g))
        table.append(row)
    return FiniteAlgebra.from_rows([_name(e) for e in idem], table)


def load_algebra(text: str) -> FiniteAlgebra:
    try:
        data = json.loads(text)
        return FiniteAlgebra.from_rows(data["elements"], data["table"])
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise AlgebraError(f"malformed algebra JSON: {exc}") from None


def dump_algebra(m: FiniteAlgebra) -> str:
    return json.dumps({"elements": list(m.elements), "table": [list(r) for r in m.table]})

