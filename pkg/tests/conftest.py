import random

import networkx as nx
import pytest
from hypothesis import strategies as st

from pseudosemilattice.bigraph import BiTree, build
from pseudosemilattice.term import Meet, Term, Var, random_term


def var_names(k: int) -> list[str]:
    return ["x", "y", "z", "w", "v", "u"][:k]


def terms(max_leaves: int = 8, alphabet: str = "xyz"):
    """Hypothesis strategy for terms over ``alphabet``."""
    leaf = st.sampled_from(list(alphabet)).map(Var)
    return st.recursive(leaf, lambda kids: st.builds(Meet, kids, kids), max_leaves=max_leaves)


def mirror(t: Term) -> Term:
    """Left-right dual of a term."""
    if isinstance(t, Var):
        return t
    return Meet(mirror(t.right), mirror(t.left))


def random_terms(seed: int, count: int, max_leaves: int, max_vars: int) -> list[Term]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        k = rng.randint(1, max_vars)
        out.append(random_term(rng, rng.randint(1, max_leaves), var_names(k)))
    return out


def to_nx(g: BiTree) -> nx.Graph:
    """Plain networkx copy with roots folded into node attributes."""
    h = nx.Graph()
    for v in g.vertices:
        h.add_node(v.id, tag=(v.side, v.label, v.id == g.left_root, v.id == g.right_root))
    h.add_edges_from(g.edges)
    return h


def isomorphic(a: BiTree, b: BiTree) -> bool:
    """Independent isomorphism oracle respecting sides, labels and roots."""
    return nx.is_isomorphic(to_nx(a), to_nx(b), node_match=lambda p, q: p["tag"] == q["tag"])


# worked example and its displayed graph
WORKED_U = "((x^(v^z))^x)^((v^z)^((v^w)^y))"


def worked_figure() -> BiTree:
    verts = [("L", "v"), ("L", "x"), ("L", "v"), ("L", "v"), ("R", "z"), ("R", "x"), ("R", "z"), ("R", "y"), ("R", "w")]
    edges = [(0, 4), (4, 1), (1, 5), (6, 2), (2, 7), (7, 3), (3, 8), (1, 7)]
    return build(verts, edges, 1, 7)


def substitution_figure() -> BiTree:
    verts = [
        ("L", "v"), ("L", "x"), ("L", "v"), ("L", "v"),
        ("R", "z"), ("R", "x"), ("R", "z"), ("R", "x"), ("R", "w"),
        ("L", "y"), ("L", "x"),
    ]
    edges = [(0, 4), (4, 1), (1, 5), (6, 2), (2, 7), (7, 3), (3, 8), (8, 10), (7, 9), (1, 7)]
    return build(verts, edges, 1, 7)


@pytest.fixture
def rng():
    return random.Random(20240611)


_criteria: dict[int, list] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            item.user_properties.append(("criterion", mark.args))


def pytest_runtest_logreport(report):
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    number, title = props["criterion"]
    entry = _criteria.setdefault(number, [title, True])
    if report.failed:
        entry[1] = False


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, ok = _criteria[number]
        terminalreporter.write_line(f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}")
