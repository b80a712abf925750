"""Reduction of bipartite trees to normal form and the free-pseudosemilattice operation.

Two rewrite rules act on a bi-rooted tree:

* thorn deletion: drop a non-distinguished degree-1 vertex whose neighbor
  carries the same label;
* edge-folding: merge two equally labeled neighbors of a vertex (a merged
  root stays a root).

The result of applying them to exhaustion is independent of the order; the
deterministic engine folds first (lowest ids first) and deletes thorns after.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass, field

from . import canon
from .bigraph import (
    L,
    R,
    BiTree,
    GraphError,
    build,
    delta,
    fold_pairs,
    is_reduced,
    meet_raw,
    project,
    thorns,
)
from .term import Term

__all__ = [
    "NormalForm",
    "fold",
    "reduce",
    "reduce_randomized",
    "theta",
    "wedge",
    "wedge_by_projections",
    "canonical_key",
    "equal_ps",
    "is_reduced",
]


canonical_key = canon.canonical_key


@dataclass(frozen=True)
class NormalForm:
    """A reduced bi-rooted tree; equality and hashing go through ``key``."""

    graph: BiTree = field(compare=False)
    key: str

    @classmethod
    def of(cls, g: BiTree) -> "NormalForm":
        if not g.is_birooted or not is_reduced(g):
            raise GraphError("not a reduced bi-rooted tree")
        return cls(g, g.key)

    @property
    def l(self) -> str:
        return self.graph.l

    @property
    def r(self) -> str:
        return self.graph.r

    def __len__(self) -> int:
        return len(self.graph.vertices)

    def __repr__(self) -> str:
        return f"NormalForm({self.key})"


def fold(g: BiTree) -> BiTree:
    """Apply edge-foldings until none is possible (no thorn deletion)."""
    adj = {v: set(g.neighbors(v)) for v in g.ids}
    label = {v: g.label(v) for v in g.ids}
    lv, rv = g.left_root, g.right_root
    heap = list(adj)
    heapq.heapify(heap)
    while heap:
        v = heapq.heappop(heap)
        if v not in adj:
            continue
        first: dict[str, int] = {}
        pair = None
        for w in sorted(adj[v]):
            if label[w] in first:
                pair = (first[label[w]], w)
                break
            first[label[w]] = w
        if pair is None:
            continue
        a, b = pair  # merge b into a
        for w in adj.pop(b):
            adj[w].discard(b)
            if w != v:
                adj[w].add(a)
                adj[a].add(w)
        if lv == b:
            lv = a
        if rv == b:
            rv = a
        heapq.heappush(heap, a)
        heapq.heappush(heap, v)
    vertices = tuple(g.vertex(v) for v in g.ids if v in adj)
    edges = frozenset(e for e in ((a, b) for a in adj for b in adj[a]) if g.side(e[0]) == L)
    return g.replace(vertices=vertices, edges=edges, left_root=lv, right_root=rv)


def _delete_thorns(g: BiTree) -> BiTree:
    while True:
        doomed = [v for v, _ in thorns(g) if v != g.left_root and v != g.right_root]
        if not doomed:
            return g
        g = g.without(doomed[:1])


def _double(label: str) -> BiTree:
    return build([(L, label), (R, label)], [(0, 1)], 0, 1)


def reduce(g: BiTree) -> NormalForm:
    """Reduced form of a bi-rooted tree; ``•x`` reduces to the edge ``x=x``."""
    if not g.is_birooted:
        raise GraphError("reduce needs both roots set")
    if g.is_singleton:
        return NormalForm.of(_double(g.vertices[0].label))
    return NormalForm.of(_delete_thorns(fold(g)).compact())


def _merge(g: BiTree, a: int, b: int) -> BiTree:
    """One edge-folding: identify vertex ``b`` with ``a``."""
    edges = set()
    for x, y in g.edges:
        x, y = (a if x == b else x), (a if y == b else y)
        edges.add((x, y))
    return BiTree(
        tuple(v for v in g.vertices if v.id != b),
        frozenset(edges),
        a if g.left_root == b else g.left_root,
        a if g.right_root == b else g.right_root,
    )


def reduce_randomized(g: BiTree, rng: random.Random) -> NormalForm:
    """Reduce by picking uniformly among all applicable rule instances at each step.

    Slow on purpose; exists to check that the result does not depend on the order.
    """
    if g.is_singleton:
        return reduce(g)
    while True:
        steps: list[tuple[str, int, int]] = []
        for _, a, b in fold_pairs(g):
            steps.append(("fold", a, b) if rng.random() < 0.5 else ("fold", b, a))
        for v, _ in thorns(g):
            if v != g.left_root and v != g.right_root:
                steps.append(("thorn", v, v))
        if not steps:
            return NormalForm.of(g.compact())
        kind, a, b = rng.choice(steps)
        g = _merge(g, a, b) if kind == "fold" else g.without([a])


def theta(t: Term) -> NormalForm:
    """Normal form of a term in the free pseudosemilattice."""
    return reduce(delta(t))


def wedge(a: NormalForm, b: NormalForm) -> NormalForm:
    return reduce(meet_raw(a.graph, b.graph))


def wedge_by_projections(a: NormalForm, b: NormalForm) -> NormalForm:
    """``a ∧ b`` as the fold-only closure of ``ˡa`` joined to ``bʳ`` at the roots."""
    la, rb = project(a.graph, "l"), project(b.graph, "r")
    off = max(la.ids) + 1
    rb = rb.shifted(off - min(rb.ids))
    edges = set(la.edges) | set(rb.edges) | {(la.left_root, rb.right_root)}
    joined = BiTree(la.vertices + rb.vertices, frozenset(edges), la.left_root, rb.right_root)
    return NormalForm.of(fold(joined).compact())


def equal_ps(u: Term, v: Term) -> bool:
    """Decide whether ``u ≈ v`` holds in every pseudosemilattice."""
    return theta(u) == theta(v)

