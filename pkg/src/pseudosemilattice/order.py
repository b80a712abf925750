"""Green's-type relations on normal forms, computed by rooted-subtree tests.

For reduced ``a`` and ``b``:

* ``b ≤_R a``  iff ``ˡa`` is a left-rooted subtree of ``ˡb``;
* ``b ≤_L a``  iff ``aʳ`` is a right-rooted subtree of ``bʳ``;
* ``b ≤ a``    iff ``a`` is a bi-rooted subtree of ``b``.

Reduced trees are fold-free, so the neighbors of any vertex carry distinct
labels and an embedding anchored at one vertex, if it exists, is found by a
single deterministic descent.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bigraph import L, R, BiTree, UnrootedTree, Vertex, hat, project
from .rewrite import NormalForm

__all__ = [
    "OrderRecord",
    "compare",
    "embed",
    "enumerate_class",
    "class_size",
    "connected",
    "enumerate_component",
    "component_of",
    "component_size",
    "component_leq",
    "witness_below",
    "count_embeddings",
    "is_paired",
]


@dataclass(frozen=True)
class OrderRecord:
    """Relations of ``b`` to ``a`` as returned by ``compare(b, a)``."""

    leq_r: bool
    leq_l: bool
    leq: bool
    r_eq: bool
    l_eq: bool


def embed(small: BiTree, big: BiTree, anchor: int, image: int) -> dict[int, int] | None:
    """Side- and label-preserving embedding of ``small`` into ``big`` sending ``anchor`` to ``image``.

    ``big`` must be fold-free.  Returns the vertex map, or ``None``.
    """
    if small.side(anchor) != big.side(image) or small.label(anchor) != big.label(image):
        return None
    mapping = {anchor: image}
    used = {image}
    stack = [anchor]
    while stack:
        v = stack.pop()
        by_label = {big.label(w): w for w in big.neighbors(mapping[v])}
        for w in small.neighbors(v):
            if w in mapping:
                continue
            target = by_label.get(small.label(w))
            if target is None or target in used:
                return None
            mapping[w] = target
            used.add(target)
            stack.append(w)
    return mapping


def _birooted_embedding(small: BiTree, big: BiTree) -> dict[int, int] | None:
    m = embed(small, big, small.left_root, big.left_root)
    if m is None or m.get(small.right_root) != big.right_root:
        return None
    return m


def compare(b: NormalForm, a: NormalForm) -> OrderRecord:
    la, lb = project(a.graph, "l"), project(b.graph, "l")
    ra, rb = project(a.graph, "r"), project(b.graph, "r")
    return OrderRecord(
        leq_r=embed(la, lb, la.left_root, lb.left_root) is not None,
        leq_l=embed(ra, rb, ra.right_root, rb.right_root) is not None,
        leq=_birooted_embedding(a.graph, b.graph) is not None,
        r_eq=la == lb,
        l_eq=ra == rb,
    )


def is_paired(g: BiTree, v: int) -> bool:
    """Adjacent to a vertex with the same label."""
    return any(g.label(w) == g.label(v) for w in g.neighbors(v))


def _attach_thorn(g: BiTree, v: int) -> BiTree:
    """``g`` plus a new equally labeled leaf on ``v``; the pair becomes the distinguished edge."""
    new = max(g.ids) + 1
    side = R if g.side(v) == L else L
    edge = (v, new) if side == R else (new, v)
    lv, rv = edge
    return BiTree(g.vertices + (Vertex(new, side, g.label(v)),), g.edges | {edge}, lv, rv)


def _rooted_at(g: BiTree, lv: int, rv: int) -> NormalForm:
    return NormalForm.of(g.replace(left_root=lv, right_root=rv).compact())


def enumerate_class(a: NormalForm, side: str) -> set[NormalForm]:
    """The R-class (``side="R"``) or L-class (``side="L"``) of ``a``."""
    side = side.upper()
    if side not in (L, R):
        raise ValueError("side must be 'R' or 'L'")
    if side == R:
        p = project(a.graph, "l")
        fixed = p.left_root
    else:
        p = project(a.graph, "r")
        fixed = p.right_root
    out = set()
    for w in p.neighbors(fixed):
        out.add(_rooted_at(p, fixed, w) if side == R else _rooted_at(p, w, fixed))
    if not is_paired(p, fixed):
        out.add(NormalForm.of(_attach_thorn(p, fixed).compact()))
    return out


def class_size(a: NormalForm, side: str) -> int:
    """Size of the R- or L-class from the degree of the fixed root."""
    g = a.graph
    v = g.left_root if side.upper() == R else g.right_root
    return g.degree(v) if is_paired(g, v) else g.degree(v) + 1


def connected(a: NormalForm, b: NormalForm) -> bool:
    return hat(a.graph) == hat(b.graph)


def component_of(d: UnrootedTree) -> set[NormalForm]:
    """All normal forms whose hat is ``d``."""
    if d.is_singleton:
        x = d.vertices[0]
        return {NormalForm.of(_attach_thorn(BiTree((Vertex(0, L, x.label),), frozenset(), 0, None), 0))}
    out = {_rooted_at(d, a, b) for a, b in d.edges}
    for v in d.ids:
        if not is_paired(d, v):
            out.add(NormalForm.of(_attach_thorn(d, v).compact()))
    return out


def enumerate_component(a: NormalForm) -> set[NormalForm]:
    return component_of(hat(a.graph))


def component_size(a: NormalForm) -> int:
    """Non-paired vertices plus edges of ``a``."""
    g = a.graph
    return sum(1 for v in g.ids if not is_paired(g, v)) + len(g.edges)


def _anchored_embeddings(d: BiTree, c: BiTree) -> list[dict[int, int]]:
    c0 = c.vertices[0]
    found = []
    for v in d.vertices:
        m = embed(c, d, c0.id, v.id)
        if m is not None:
            found.append(m)
    return found


def component_leq(d: UnrootedTree, c: UnrootedTree) -> bool:
    """``d ⊴ c``: ``c`` occurs in ``d`` as a bipartite subgraph."""
    if c.is_singleton:
        x = c.vertices[0].label
        return any(v.label == x for v in d.vertices)
    if d.is_singleton:
        return False
    return bool(_anchored_embeddings(d, c))


def count_embeddings(d: UnrootedTree, c: UnrootedTree) -> int:
    """Number of realizations of ``c`` inside ``d``.

    For a single vertex ``c = •x`` an adjacent pair of ``x``-vertices counts
    once and every non-paired ``x``-vertex counts once.
    """
    if c.is_singleton:
        x = c.vertices[0].label
        if d.is_singleton:
            return int(d.vertices[0].label == x)
        pairs = sum(1 for a, b in d.edges if d.label(a) == x and d.label(b) == x)
        lone = sum(1 for v in d.ids if d.label(v) == x and not is_paired(d, v))
        return pairs + lone
    if d.is_singleton:
        return 0
    return len(_anchored_embeddings(d, c))


def witness_below(d: UnrootedTree, b: NormalForm) -> NormalForm | None:
    """An element with hat ``d`` lying below ``b``, or ``None`` if ``d ⋬ hat(b)``."""
    gamma = hat(b.graph)
    if not component_leq(d, gamma):
        return None
    g = b.graph
    if d.is_singleton:
        return b
    if gamma.is_singleton:
        # b is x=x; any x-vertex of d will do
        anchor = next(v.id for v in d.vertices if v.label == g.l)
    else:
        phi = _anchored_embeddings(d, gamma)[0]
        if g.left_root in phi and g.right_root in phi:
            return _rooted_at(d, phi[g.left_root], phi[g.right_root])
        # exactly one root is the tip of a thorn; anchor at the other one
        anchor = phi[g.left_root] if g.left_root in phi else phi[g.right_root]
    for w in d.neighbors(anchor):
        if d.label(w) == d.label(anchor):
            lv, rv = (anchor, w) if d.side(anchor) == L else (w, anchor)
            return _rooted_at(d, lv, rv)
    return NormalForm.of(_attach_thorn(d, anchor).compact())
