"""Strict pseudosemilattices: the identity test, basis pairs and witness graphs."""

from __future__ import annotations

from dataclasses import dataclass

from .bigraph import L, R, BiTree, GraphError, co2, zigzag
from .order import compare, embed
from .rewrite import NormalForm
from .term import Meet, Term, Var, term_invariants

__all__ = [
    "BasisPair",
    "FAMILIES",
    "equal_sps",
    "sps_signature",
    "covers",
    "is_elementary",
    "family_pair",
    "family_graphs",
    "word_from_graph",
    "some_word",
    "lambda_graph",
    "lambda_witness",
]

FAMILIES = ("A", "C", "M", "N")


def sps_signature(t: Term) -> tuple[str, frozenset[tuple[str, str]], str]:
    inv = term_invariants(t)
    return inv.l, inv.co2, inv.r


def equal_sps(u: Term, v: Term) -> bool:
    """Decide whether ``u ≈ v`` holds in every strict pseudosemilattice."""
    return sps_signature(u) == sps_signature(v)


def covers(upper: NormalForm, lower: NormalForm) -> bool:
    """``lower < upper`` with no normal form strictly in between."""
    if upper == lower or not compare(lower, upper).leq:
        return False
    small, big = upper.graph, lower.graph
    image = embed(small, big, small.left_root, big.left_root)
    core = frozenset(image.values())
    full = frozenset(big.ids)
    # every intermediate element is a subtree of ``big`` containing the image of ``small``
    seen = {full}
    frontier = [full]
    while frontier:
        verts = frontier.pop()
        sub = big.without(full - verts)
        for v in verts - core:
            if sub.degree(v) != 1:
                continue
            smaller = verts - {v}
            if smaller in seen or smaller == core:
                continue
            seen.add(smaller)
            candidate = big.without(full - smaller)
            try:
                NormalForm.of(candidate)
                return False
            except GraphError:
                frontier.append(smaller)
    return True


def is_elementary(upper: NormalForm, lower: NormalForm) -> bool:
    big = lower.graph
    if co2(upper.graph) != co2(big) or big.labels(L) & big.labels(R):
        return False
    if not covers(upper, lower):
        return False
    image = embed(upper.graph, big, upper.graph.left_root, big.left_root)
    extra = [v for v in big.ids if v not in image.values()]
    if len(extra) != 1 or big.degree(extra[0]) != 1:
        return False
    (w,) = big.neighbors(extra[0])
    return w in (big.left_root, big.right_root)


@dataclass(frozen=True)
class BasisPair:
    n: int
    family: str
    upper: NormalForm
    lower: NormalForm
    upper_word: Term | None = None
    lower_word: Term | None = None


def _x(i: int) -> str:
    return f"x{i}"


def family_graphs(family: str, n: int) -> tuple[BiTree, BiTree]:
    """``(upper, lower)`` zig-zag paths of one of the four basis families."""
    family = family.upper()
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
    if n < 2:
        raise ValueError("n must be at least 2")
    if family in ("C", "N") and n < 3:
        # the path would repeat x1 two steps apart and fold away
        raise ValueError(f"family {family} needs n >= 3")
    top = _x(2 * n)
    if family in ("A", "M"):
        body = [_x(i) for i in range(1, 2 * n + 1)] + [_x(1)]
    else:
        body = [_x(i) for i in range(1, 2 * n - 1)] + [_x(1), top]
    first = R if family in ("A", "C") else L
    lower = zigzag([top] + body, first, roots=(1, 2))
    upper = zigzag(body, L if first == R else R, roots=(0, 1))
    return upper, lower


def family_pair(family: str, n: int) -> BasisPair:
    upper, lower = family_graphs(family, n)
    return BasisPair(
        n=n,
        family=family.upper(),
        upper=NormalForm.of(upper),
        lower=NormalForm.of(lower),
        upper_word=word_from_graph(upper),
        lower_word=word_from_graph(lower),
    )


def _word(g: BiTree, lv: int, rv: int, cut: set[frozenset[int]], forced: bool) -> Term:
    cut = cut | {frozenset((lv, rv))}

    def part(root: int) -> Term:
        rest = [w for w in g.neighbors(root) if frozenset((root, w)) not in cut]
        if not rest:
            return Var(g.label(root))
        if forced and len(rest) > 1:
            raise GraphError(f"vertex {root} has degree greater than 2")
        nxt = rest[0]
        return _word(g, root, nxt, cut, forced) if g.side(root) == L else _word(g, nxt, root, cut, forced)

    return Meet(part(lv), part(rv))


def _check_birooted(g: BiTree) -> None:
    if not g.is_birooted:
        raise GraphError("the graph needs both roots set")


def word_from_graph(g: BiTree) -> Term:
    """The unique term whose graph is ``g``; every vertex must have degree at most 2."""
    _check_birooted(g)
    bad = [v for v in g.ids if g.degree(v) > 2]
    if bad:
        raise GraphError(f"vertex {bad[0]} has degree {g.degree(bad[0])}; a unique word needs degree <= 2")
    if g.is_singleton:
        return Var(g.vertices[0].label)
    return _word(g, g.left_root, g.right_root, set(), forced=True)


def some_word(g: BiTree) -> Term:
    """A term whose graph is ``g`` (lowest-id choices where several exist)."""
    _check_birooted(g)
    if g.is_singleton:
        return Var(g.vertices[0].label)
    return _word(g, g.left_root, g.right_root, set(), forced=False)


def lambda_graph(n: int, k: int) -> BiTree:
    """``k`` consecutive copies of the path ``x1 ... x(2n+2)``, rooted at the first edge."""
    if n < 1 or k < 1:
        raise ValueError("n and k must be positive")
    copy = [_x(i) for i in range(1, 2 * n + 3)]
    return zigzag(copy * k, L, roots=(0, 1))


def lambda_witness(n: int, k: int) -> tuple[BiTree, Term]:
    g = lambda_graph(n, k)
    # raises if the chain were not already reduced
    NormalForm.of(g)
    return g, word_from_graph(g)

