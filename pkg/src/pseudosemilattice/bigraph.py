"""Labeled bipartite trees with distinguished roots and the algebra built on them.

A :class:`BiTree` has left (``"L"``) and right (``"R"``) vertices.  Elements of
the binary algebra carry both roots, which are adjacent (the distinguished
edge) except for the single-vertex graph of a variable.  Left-rooted and
right-rooted trees keep only one root; :class:`UnrootedTree` keeps none.

Graphs compare equal when they are isomorphic (labels, sides and roots
respected); vertex ids are only handles.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from . import canon
from .term import Meet, Term, Var, term_invariants

__all__ = [
    "L",
    "R",
    "Vertex",
    "BiTree",
    "UnrootedTree",
    "GraphError",
    "singleton",
    "build",
    "zigzag",
    "meet_raw",
    "delta",
    "gamma_contract",
    "graph_substitute",
    "skeleton",
    "project",
    "hat",
    "reroot",
    "thorns",
    "fold_pairs",
    "is_reduced",
    "co2",
    "to_json",
    "from_json",
    "to_dot",
]

L = "L"
R = "R"
_OTHER = {L: R, R: L}


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Vertex:
    id: int
    side: str
    label: str


@dataclass(frozen=True, eq=False)
class BiTree:
    vertices: tuple[Vertex, ...]
    edges: frozenset[tuple[int, int]]  # (left id, right id)
    left_root: int | None = None
    right_root: int | None = None

    def __post_init__(self) -> None:
        self._validate()

    def _validate(self) -> None:
        by_id = self._by_id
        if not by_id:
            raise GraphError("a tree needs at least one vertex")
        if len(by_id) != len(self.vertices):
            raise GraphError("duplicate vertex ids")
        for v in self.vertices:
            if v.side not in (L, R):
                raise GraphError(f"vertex {v.id}: side must be 'L' or 'R'")
            if not v.label:
                raise GraphError(f"vertex {v.id}: empty label")
        for a, b in self.edges:
            if a not in by_id or b not in by_id:
                raise GraphError(f"edge ({a}, {b}) references an unknown vertex")
            if by_id[a].side != L or by_id[b].side != R:
                raise GraphError(f"edge ({a}, {b}) must join a left vertex to a right vertex")
        if len(self.edges) != len(self.vertices) - 1:
            raise GraphError("not a tree: wrong number of edges")
        seen = {self.vertices[0].id}
        stack = [self.vertices[0].id]
        while stack:
            for w in self.neighbors(stack.pop()):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != len(self.vertices):
            raise GraphError("not a tree: disconnected")
        lv, rv = self.left_root, self.right_root
        for r in (lv, rv):
            if r is not None and r not in by_id:
                raise GraphError(f"root {r} is not a vertex")
        if len(self.vertices) == 1:
            return
        if lv is not None and by_id[lv].side != L:
            raise GraphError("left root must be a left vertex")
        if rv is not None and by_id[rv].side != R:
            raise GraphError("right root must be a right vertex")
        if lv is not None and rv is not None and (lv, rv) not in self.edges:
            raise GraphError("the two roots must be adjacent")

    @cached_property
    def _by_id(self) -> dict[int, Vertex]:
        return {v.id: v for v in self.vertices}

    @cached_property
    def _adj(self) -> dict[int, tuple[int, ...]]:
        adj: dict[int, list[int]] = {v.id: [] for v in self.vertices}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return {v: tuple(sorted(ws)) for v, ws in adj.items()}

    @cached_property
    def key(self) -> str:
        """Canonical encoding; equal iff the graphs are isomorphic."""
        return canon.canonical_key(self)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BiTree):
            return NotImplemented
        return self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.key})"

    @property
    def ids(self) -> list[int]:
        return [v.id for v in self.vertices]

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def label(self, v: int) -> str:
        return self._by_id[v].label

    def side(self, v: int) -> str:
        return self._by_id[v].side

    def vertex(self, v: int) -> Vertex:
        return self._by_id[v]

    @property
    def is_singleton(self) -> bool:
        return len(self.vertices) == 1

    @property
    def is_birooted(self) -> bool:
        return self.left_root is not None and self.right_root is not None

    def labels(self, side: str) -> frozenset[str]:
        return frozenset(v.label for v in self.vertices if v.side == side)

    @property
    def l(self) -> str:
        return self.label(self.left_root)

    @property
    def r(self) -> str:
        return self.label(self.right_root)

    def replace(self, **changes) -> "BiTree":
        fields = dict(
            vertices=self.vertices,
            edges=self.edges,
            left_root=self.left_root,
            right_root=self.right_root,
        )
        fields.update(changes)
        cls = BiTree if fields["left_root"] is not None or fields["right_root"] is not None else UnrootedTree
        return cls(**fields)

    def shifted(self, offset: int) -> "BiTree":
        """Same graph with every id increased by ``offset``."""
        def mv(i):
            return None if i is None else i + offset
        return self.replace(
            vertices=tuple(Vertex(v.id + offset, v.side, v.label) for v in self.vertices),
            edges=frozenset((a + offset, b + offset) for a, b in self.edges),
            left_root=mv(self.left_root),
            right_root=mv(self.right_root),
        )

    def relabeled(self, mapping: Mapping[str, str]) -> "BiTree":
        return self.replace(
            vertices=tuple(Vertex(v.id, v.side, mapping.get(v.label, v.label)) for v in self.vertices)
        )

    def without(self, drop: Iterable[int]) -> "BiTree":
        """Delete vertices (and incident edges); roots among them are unset."""
        drop = set(drop)
        return self.replace(
            vertices=tuple(v for v in self.vertices if v.id not in drop),
            edges=frozenset(e for e in self.edges if e[0] not in drop and e[1] not in drop),
            left_root=None if self.left_root in drop else self.left_root,
            right_root=None if self.right_root in drop else self.right_root,
        )

    def compact(self) -> "BiTree":
        """Renumber ids 0..n-1 in breadth-first order from the roots."""
        start = [r for r in (self.left_root, self.right_root) if r is not None] or [self.vertices[0].id]
        order: list[int] = []
        for s in start:
            if s not in order:
                order.append(s)
        i = 0
        while i < len(order):
            for w in self.neighbors(order[i]):
                if w not in order:
                    order.append(w)
            i += 1
        new = {old: k for k, old in enumerate(order)}

        def mv(i):
            return None if i is None else new[i]
        return self.replace(
            vertices=tuple(Vertex(new[v], self.side(v), self.label(v)) for v in order),
            edges=frozenset((new[a], new[b]) for a, b in self.edges),
            left_root=mv(self.left_root),
            right_root=mv(self.right_root),
        )


class UnrootedTree(BiTree):
    """A tree with no marked roots (the image of :func:`hat`)."""

    def _validate(self) -> None:
        if self.left_root is not None or self.right_root is not None:
            raise GraphError("an unrooted tree has no roots")
        super()._validate()


def singleton(label: str) -> BiTree:
    """``Δ(x)``: one vertex serving as both roots."""
    return BiTree((Vertex(0, L, label),), frozenset(), 0, 0)


def build(
    vertices: Sequence[tuple[str, str]],
    edges: Iterable[tuple[int, int]],
    left_root: int | None = None,
    right_root: int | None = None,
) -> BiTree:
    """Build from ``(side, label)`` pairs indexed 0..n-1 and index edges in any order."""
    vs = tuple(Vertex(i, side, label) for i, (side, label) in enumerate(vertices))
    es = set()
    for a, b in edges:
        if vs[a].side == R:
            a, b = b, a
        es.add((a, b))
    cls = BiTree if left_root is not None or right_root is not None else UnrootedTree
    return cls(vs, frozenset(es), left_root, right_root)


def zigzag(labels: Sequence[str], first_side: str, roots: tuple[int, int] | None = None) -> BiTree:
    """A path whose sides alternate starting with ``first_side``.

    ``roots`` gives the positions of the two distinguished vertices (in any
    order); ``None`` leaves the path unrooted.
    """
    sides = [first_side if i % 2 == 0 else _OTHER[first_side] for i in range(len(labels))]
    lv = rv = None
    if roots is not None:
        i, j = roots
        lv, rv = (i, j) if sides[i] == L else (j, i)
    return build(list(zip(sides, labels)), [(i, i + 1) for i in range(len(labels) - 1)], lv, rv)


def _join(parts: Sequence[BiTree]) -> tuple[list[Vertex], set[tuple[int, int]], list[int]]:
    """Disjoint union with ids shifted part by part; returns the per-part offsets."""
    vertices: list[Vertex] = []
    edges: set[tuple[int, int]] = set()
    offsets = []
    nxt = 0
    for p in parts:
        offsets.append(nxt - min(p.ids))
        q = p.shifted(offsets[-1])
        vertices.extend(q.vertices)
        edges |= q.edges
        nxt = max(q.ids) + 1
    return vertices, edges, offsets


def _require_birooted(g: BiTree, what: str) -> None:
    if not g.is_birooted:
        raise GraphError(f"{what} needs both roots set")


def meet_raw(a: BiTree, b: BiTree) -> BiTree:
    """``a ⊓ b``: left-rooted ``a``, right-rooted ``b`` and a new edge between the roots."""
    _require_birooted(a, "meet_raw")
    _require_birooted(b, "meet_raw")
    la, rb = project(a, L), project(b, R)
    vertices, edges, (oa, ob) = _join([la, rb])
    lv, rv = a.left_root + oa, b.right_root + ob
    edges.add((lv, rv))
    return BiTree(tuple(vertices), frozenset(edges), lv, rv)


def delta(t: Term) -> BiTree:
    """The graph of a term; ``delta(u ^ v) == meet_raw(delta(u), delta(v))``."""
    if isinstance(t, Var):
        return singleton(t.name)
    vertices: list[Vertex] = []
    edges: set[tuple[int, int]] = set()

    def grow(u: Term, side: str) -> int:
        # root of the left-rooted (side L) or right-rooted (side R) graph of u
        if isinstance(u, Var):
            vertices.append(Vertex(len(vertices), side, u.name))
            return len(vertices) - 1
        a = grow(u.left, L)
        b = grow(u.right, R)
        edges.add((a, b))
        return a if side == L else b

    lv = grow(t.left, L)
    rv = grow(t.right, R)
    edges.add((lv, rv))
    return BiTree(tuple(vertices), frozenset(edges), lv, rv)


def gamma_contract(t: Term) -> BiTree:
    """The graph of ``t`` obtained by contracting segments of its parse tree.

    Every non-root node of the parse tree is a left or a right child.  A left
    node belongs to the segment of its leftmost leaf, a right node to the
    segment of its rightmost leaf; segments become vertices, and parse-tree
    edges between different segments become graph edges.
    """
    if isinstance(t, Var):
        raise GraphError("gamma_contract needs a term with at least two leaves")
    # parse tree as flat arrays; node 0 is the root
    nodes: list[Term] = [t]
    parent: list[int] = [-1]
    kind: list[str] = ["root"]
    i = 0
    while i < len(nodes):
        u = nodes[i]
        if isinstance(u, Meet):
            for child, k in ((u.left, L), (u.right, R)):
                nodes.append(child)
                parent.append(i)
                kind.append(k)
        i += 1
    children: dict[int, list[int]] = {}
    for n in range(1, len(nodes)):
        children.setdefault(parent[n], []).append(n)

    def extreme_leaf(n: int, k: str) -> int:
        while n in children:
            n = children[n][0 if k == L else 1]
        return n

    segment = {n: extreme_leaf(n, kind[n]) for n in range(1, len(nodes))}
    leaf_ids = sorted(set(segment.values()))
    index = {leaf: j for j, leaf in enumerate(leaf_ids)}
    vertices = [(kind[leaf], nodes[leaf].name) for leaf in leaf_ids]
    edges = set()
    for n in range(1, len(nodes)):
        p = parent[n]
        if p != 0 and segment[p] != segment[n]:
            edges.add((index[segment[p]], index[segment[n]]))
    root_l = index[segment[children[0][0]]]
    root_r = index[segment[children[0][1]]]
    edges.add((root_l, root_r))
    return build(vertices, edges, root_l, root_r)


def graph_substitute(g: BiTree, pieces: Mapping[str, BiTree]) -> BiTree:
    """Graph of ``uψ`` from ``g = Δ(u)`` and ``pieces[x] = Δ(xψ)``."""
    _require_birooted(g, "graph_substitute")
    missing = sorted({v.label for v in g.vertices} - set(pieces))
    if missing:
        raise GraphError(f"no piece for label(s) {', '.join(missing)}")
    if g.is_singleton:
        return pieces[g.vertices[0].label]
    parts = []
    roots = []
    for v in g.vertices:
        piece = pieces[v.label]
        _require_birooted(piece, f"piece for {v.label!r}")
        if v.side == L:
            parts.append(project(piece, L))
            roots.append(piece.left_root)
        else:
            parts.append(project(piece, R))
            roots.append(piece.right_root)
    vertices, edges, offsets = _join(parts)
    new_root = {v.id: roots[k] + offsets[k] for k, v in enumerate(g.vertices)}
    for a, b in g.edges:
        edges.add((new_root[a], new_root[b]))
    return BiTree(tuple(vertices), frozenset(edges), new_root[g.left_root], new_root[g.right_root])


def skeleton(u: Term, s: Mapping[str, Term]) -> BiTree:
    """``Δ(u)`` with each left label ``x`` replaced by ``l(xψ)`` and each right label by ``r(xψ)``."""
    g = delta(u)
    inv = {x: term_invariants(s.get(x, Var(x))) for x in {v.label for v in g.vertices}}
    vs = []
    for v in g.vertices:
        # the lone vertex of Δ(x) is both roots; its label follows the left convention
        new = inv[v.label].l if v.side == L else inv[v.label].r
        vs.append(Vertex(v.id, v.side, new))
    return g.replace(vertices=tuple(vs))


def thorns(g: BiTree) -> list[tuple[int, int]]:
    """All thorns as ``(degree-1 vertex, its neighbor)`` pairs."""
    out = []
    for v in g.ids:
        ns = g.neighbors(v)
        if len(ns) == 1 and g.label(ns[0]) == g.label(v):
            out.append((v, ns[0]))
    return out


def fold_pairs(g: BiTree) -> list[tuple[int, int, int]]:
    """Applicable edge-foldings as ``(center, a, b)`` with ``a < b`` equally labeled neighbors."""
    out = []
    for v in g.ids:
        seen: dict[str, list[int]] = {}
        for w in g.neighbors(v):
            seen.setdefault(g.label(w), []).append(w)
        for ws in seen.values():
            for i in range(len(ws)):
                for j in range(i + 1, len(ws)):
                    out.append((v, ws[i], ws[j]))
    return out


def _is_root(g: BiTree, v: int) -> bool:
    return v == g.left_root or v == g.right_root


def is_reduced(g: BiTree) -> bool:
    """Fold-free and free of non-essential thorns."""
    if g.is_singleton:
        return False
    return not fold_pairs(g) and all(_is_root(g, v) for v, _ in thorns(g))


def co2(g: BiTree) -> frozenset[tuple[str, str]]:
    """2-content: ``(x, x)`` for each label plus the label pair of every edge."""
    pairs = {(v.label, v.label) for v in g.vertices}
    pairs |= {(g.label(a), g.label(b)) for a, b in g.edges}
    return frozenset(pairs)


def project(g: BiTree, mode: str) -> BiTree:
    """Rooted projections.

    ``"L"``/``"R"`` keep only the left/right root.  ``"l"``/``"r"`` act on
    reduced graphs and also drop the thorn formed by the other root.
    """
    if mode not in ("L", "R", "l", "r"):
        raise ValueError(f"unknown projection mode {mode!r}")
    _require_birooted(g, "project")
    if mode in ("l", "r") and not is_reduced(g):
        raise GraphError(f"projection {mode!r} needs a reduced graph")
    keep, drop = (g.left_root, g.right_root) if mode in ("L", "l") else (g.right_root, g.left_root)
    side = L if mode in ("L", "l") else R
    if g.is_singleton:
        v = g.vertices[0]
        vs = (Vertex(v.id, side, v.label),)
        return BiTree(vs, frozenset(), keep if side == L else None, keep if side == R else None)
    if mode in ("l", "r") and g.degree(drop) == 1 and g.label(drop) == g.label(keep):
        g = g.without([drop])
    if side == L:
        return g.replace(right_root=None, left_root=keep)
    return g.replace(left_root=None, right_root=keep)


def hat(g: BiTree) -> UnrootedTree:
    """Unmark the roots and remove the thorns; the graph ``x=x`` becomes ``•x``."""
    if g.is_singleton:
        v = g.vertices[0]
        return UnrootedTree((Vertex(v.id, L, v.label),), frozenset())
    if g.is_birooted and not is_reduced(g):
        raise GraphError("hat needs a reduced graph")
    t = g.replace(left_root=None, right_root=None)
    while not t.is_singleton:
        ts = thorns(t)
        if not ts:
            break
        t = t.without([ts[0][0]])
    return t if isinstance(t, UnrootedTree) else UnrootedTree(t.vertices, t.edges)


def reroot(g: BiTree, lv: int, rv: int) -> BiTree:
    """Move the distinguished pair of a reduced graph to the adjacent pair ``(lv, rv)``."""
    if g.side(lv) != L or g.side(rv) != R:
        raise GraphError("reroot needs a left vertex and a right vertex")
    if (lv, rv) not in g.edges:
        raise GraphError(f"vertices {lv} and {rv} are not adjacent")
    out = g.replace(left_root=lv, right_root=rv)
    if not is_reduced(out):
        raise GraphError("moving the roots leaves a non-essential thorn")
    return out


# ----------------------------------------------------------------------------
# serialization


def to_json(g: BiTree) -> str:
    return json.dumps(
        {
            "vertices": [{"id": v.id, "side": v.side, "label": v.label} for v in g.vertices],
            "edges": sorted([a, b] for a, b in g.edges),
            "left_root": g.left_root,
            "right_root": g.right_root,
        }
    )


def from_json(text: str | dict) -> BiTree:
    try:
        data = json.loads(text) if isinstance(text, str) else text
        vs = tuple(Vertex(int(v["id"]), str(v["side"]), str(v["label"])) for v in data["vertices"])
        sides = {v.id: v.side for v in vs}
        es = set()
        for a, b in data["edges"]:
            a, b = int(a), int(b)
            es.add((a, b) if sides.get(a) == L else (b, a))
        lv, rv = data.get("left_root"), data.get("right_root")
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphError(f"malformed graph JSON: {exc}") from exc
    cls = BiTree if lv is not None or rv is not None else UnrootedTree
    return cls(vs, frozenset(es), lv, rv)


def to_dot(g: BiTree, name: str = "G") -> str:
    """Graphviz source: left vertices on the bottom rank, right vertices on top."""
    lines = [f"graph {name} {{", "  rankdir=BT;", "  node [shape=circle];"]
    for side in (L, R):
        ids = [v for v in g.vertices if v.side == side]
        if not ids:
            continue
        rank = "min" if side == L else "max"
        lines.append(f"  {{ rank={rank};")
        for v in ids:
            extra = ", peripheries=2" if _is_root(g, v.id) and not g.is_birooted else ""
            lines.append(f'    v{v.id} [label="{v.label}"{extra}];')
        lines.append("  }")
    for a, b in sorted(g.edges):
        style = " [penwidth=2]" if (a, b) == (g.left_root, g.right_root) else ""
        lines.append(f"  v{a} -- v{b}{style};")
    lines.append("}")
    return "\n".join(lines)
