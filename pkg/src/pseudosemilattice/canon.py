"""Canonical string encodings of labeled bipartite trees.

Classical bottom-up rooted-tree encoding: a vertex encodes as its side, its
label and the sorted encodings of its children.  The anchor depends on which
roots are marked: the distinguished edge, the single root, or the center.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from .bigraph import BiTree


def encode_from(g: "BiTree", root: int, parent: int | None = None) -> str:
    """Encoding of the subtree hanging at ``root`` when the edge to ``parent`` is cut."""
    order = [root]
    up = {root: parent}
    i = 0
    while i < len(order):
        v = order[i]
        i += 1
        for w in g.neighbors(v):
            if w != up[v]:
                up[w] = v
                order.append(w)
    enc: dict[int, str] = {}
    for v in reversed(order):
        kids = sorted(enc.pop(w) for w in g.neighbors(v) if w != up[v])
        enc[v] = f"{g.side(v)}{g.label(v)}({','.join(kids)})"
    return enc[root]


def centers(g: "BiTree") -> list[int]:
    """The one or two central vertices, found by peeling leaves."""
    degree = {v: len(g.neighbors(v)) for v in g.ids}
    remaining = len(degree)
    layer = [v for v, d in degree.items() if d <= 1]
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for w in g.neighbors(v):
                degree[w] -= 1
                if degree[w] == 1:
                    nxt.append(w)
        layer = nxt
    return sorted(layer)


def canonical_key(g: "BiTree") -> str:
    lv, rv = g.left_root, g.right_root
    if len(g.vertices) == 1:
        (v,) = g.vertices
        if lv is not None and rv is not None:
            return f"B•{v.label}"
        if lv is None and rv is None:
            # a singleton of C(X) has no side
            return f"U•{v.label}"
    if lv is not None and rv is not None:
        return f"B[{encode_from(g, lv, rv)}|{encode_from(g, rv, lv)}]"
    if lv is not None:
        return f"L[{encode_from(g, lv)}]"
    if rv is not None:
        return f"R[{encode_from(g, rv)}]"
    return "U[" + min(encode_from(g, c) for c in centers(g)) + "]"
