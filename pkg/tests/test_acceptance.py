"""End-to-end acceptance checks, one test per criterion.

A PASS/FAIL line per criterion is printed in the terminal summary.
"""

import random
from itertools import product

import pytest
from conftest import WORKED_U, isomorphic, mirror, random_terms, substitution_figure, var_names, worked_figure

from pseudosemilattice.bigraph import delta, gamma_contract, graph_substitute, hat, is_reduced, singleton
from pseudosemilattice.model import AXIOMS, check_axioms, e2, satisfies_identity
from pseudosemilattice.order import (
    class_size,
    compare,
    component_size,
    enumerate_class,
    enumerate_component,
    is_paired,
)
from pseudosemilattice.rewrite import canonical_key, equal_ps, reduce_randomized, theta, wedge
from pseudosemilattice.term import Var, meet_all, parse_term, random_term, substitute
from pseudosemilattice.variety import (
    FAMILIES,
    equal_sps,
    family_pair,
    is_elementary,
    lambda_witness,
    some_word,
    sps_signature,
)

P = parse_term
criterion = pytest.mark.criterion


def _random_substitution(rng, names, max_leaves=4, alphabet="xyzw"):
    return {x: random_term(rng, rng.randint(1, max_leaves), alphabet) for x in names}


@criterion(1, "worked figure")
def test_worked_figure():
    u = P(WORKED_U)
    g = delta(u)
    assert (len(g.vertices), len(g.edges)) == (9, 8)
    assert g.label(g.left_root) == "x" and g.label(g.right_root) == "y"
    assert isomorphic(g, worked_figure())
    assert isomorphic(gamma_contract(u), worked_figure())


@criterion(2, "substitution figure")
def test_substitution_figure():
    replaced = P("((x^(v^z))^x)^((v^z)^((v^(x^w))^(y^x)))")
    assert isomorphic(delta(replaced), substitution_figure())
    assert len(substitution_figure().vertices) == 11
    # the same graph by splicing a graph in place of a marker letter
    marked = P("((x^(v^z))^x)^((v^z)^p)")
    pieces = {x: singleton(x) for x in "vwxyz"}
    pieces["p"] = delta(P("(v^(x^w))^(y^x)"))
    assert isomorphic(graph_substitute(delta(marked), pieces), substitution_figure())


@criterion(3, "confluence of reduction")
def test_confluence():
    rng = random.Random(3)
    for _ in range(1000):
        t = random_term(rng, rng.randint(1, 40), var_names(rng.randint(1, 6)))
        g = delta(t)
        key = canonical_key(theta(t).graph)
        for _ in range(5):
            assert canonical_key(reduce_randomized(g, rng).graph) == key


def _ps_identities():
    x, y, z, w = (Var(c) for c in "xyzw")
    out = list(AXIOMS.values())
    out += [(P("(x^x)^(x^y)"), P("x^y")), (P("x^y"), P("(x^y)^(y^y)"))]
    for n in range(1, 6):
        ys = [f"y{i}" for i in range(1, n + 1)]
        out.append((meet_all("x", *ys), meet_all(*(P(f"x^{v}") for v in ys))))
    for n, k in product(range(1, 5), repeat=2):
        ys = [f"y{i}" for i in range(1, n + 1)]
        zs = [f"z{i}" for i in range(1, k + 1)]
        out.append((meet_all(meet_all("x", *ys), meet_all("x", *zs)), meet_all("x", *ys, *zs)))
    for n in range(1, 5):
        ys = [f"y{i}" for i in range(1, n + 1)]
        out.append((meet_all("x", *ys, "x", "z"), meet_all("x", *ys, "z")))
    out.append((meet_all(x, y, z, w), meet_all(x, z, y, w)))
    out.append((meet_all(x, y, z, y), meet_all(x, z, y)))
    return out + [(mirror(u), mirror(v)) for u, v in out]


@criterion(4, "free-model axiom suite")
def test_axiom_suite():
    identities = _ps_identities()
    assert len(identities) > 50
    for u, v in identities:
        assert equal_ps(u, v), (u, v)
    assert not equal_ps(P("x^(y^z)"), P("(x^y)^z"))
    assert not equal_ps(P("x^y"), P("y^x"))


def _pairs(seed, count, max_leaves=7, max_vars=3):
    pool = [theta(t) for t in random_terms(seed, 2 * count, max_leaves, max_vars)]
    return list(zip(pool[:count], pool[count:]))


@criterion(5, "Green's relations cross-check")
def test_green_cross_check():
    pairs = _pairs(5, 500)
    for a, b in pairs:
        rec = compare(b, a)
        back = compare(a, b)
        assert rec.leq_r == (wedge(a, b) == b)
        assert rec.leq_l == (wedge(b, a) == b)
        assert rec.leq == (rec.leq_r and rec.leq_l)
        assert rec.r_eq == (wedge(a, b) == b and wedge(b, a) == a)
        assert rec.l_eq == (wedge(b, a) == b and wedge(a, b) == a)
        assert rec.r_eq == (rec.leq_r and back.leq_r)

    for a, _ in pairs[:120]:
        for side, root in (("R", a.graph.left_root), ("L", a.graph.right_root)):
            g = a.graph
            expected = g.degree(root) if is_paired(g, root) else g.degree(root) + 1
            assert len(enumerate_class(a, side)) == class_size(a, side) == expected
        d = hat(a.graph)
        pq = 1 if d.is_singleton else sum(not is_paired(d, v) for v in d.ids) + len(d.edges)
        assert len(enumerate_component(a)) == component_size(a) == pq

    rng = random.Random(55)
    for _ in range(100):
        s = _random_substitution(rng, "xyz", 5, "xyzw")
        r1 = theta(substitute(P("(x^y)^z"), s))
        r2 = theta(substitute(P("(x^z)^y"), s))
        assert compare(r1, r2).r_eq
        l1 = theta(substitute(P("y^(z^x)"), s))
        l2 = theta(substitute(P("z^(y^x)"), s))
        assert compare(l1, l2).l_eq


@criterion(6, "commutation criterion")
def test_commutation():
    pairs = _pairs(6, 300)
    # force shared outer letters for half of the sample
    rng = random.Random(66)
    for _ in range(200):
        x, y = rng.choice("xyz"), rng.choice("xyz")
        mid = [random_term(rng, rng.randint(1, 5), "xyz") for _ in range(2)]
        pairs.append((theta(meet_all(Var(x), mid[0], Var(y))), theta(meet_all(Var(x), mid[1], Var(y)))))
    same = 0
    for a, b in pairs:
        commute = wedge(a, b) == wedge(b, a)
        assert commute == ((a.l, a.r) == (b.l, b.r))
        same += commute
    assert same >= 100


@criterion(7, "SPS basis witness")
def test_basis_witness():
    for n in (2, 3, 4):
        pair = family_pair("A", n)
        assert equal_sps(pair.upper_word, pair.lower_word)
        assert not equal_ps(pair.upper_word, pair.lower_word)
        assert is_elementary(pair.upper, pair.lower)
        assert (len(pair.upper), len(pair.lower)) == (2 * n + 1, 2 * n + 2)
    for family in FAMILIES:
        for n in (3, 4):
            pair = family_pair(family, n)
            assert is_elementary(pair.upper, pair.lower)


def _sps_equal_pairs(seed, count):
    buckets = {}
    for t in random_terms(seed, 4000, 7, 3):
        buckets.setdefault(sps_signature(t), []).append(t)
    pairs = [(a, b) for ts in buckets.values() for a, b in zip(ts, ts[1:]) if a != b]
    random.Random(seed).shuffle(pairs)
    return pairs[:count]


@criterion(8, "E2 oracle equivalence")
def test_e2_oracle():
    m = e2()
    assert all(r.holds for r in check_axioms(m))
    assert not satisfies_identity(m, P("(x^y)^z"), P("x^(y^z)"))
    pool = random_terms(8, 300, 8, 3)
    pairs = list(zip(pool[:150], pool[150:])) + _sps_equal_pairs(88, 150)
    assert len(pairs) == 300
    agree = [equal_sps(u, v) for u, v in pairs]
    assert agree == [satisfies_identity(m, u, v) for u, v in pairs]
    assert 100 < sum(agree) < 300


@criterion(9, "full invariance")
def test_full_invariance():
    rng = random.Random(9)
    ps_pairs = [(t, some_word(theta(t).graph)) for t in random_terms(90, 200, 8, 3)]
    sps_pairs = _sps_equal_pairs(91, 200)
    assert len(sps_pairs) == 200
    for u, v in ps_pairs:
        assert equal_ps(u, v)
        s = _random_substitution(rng, "xyz")
        assert equal_ps(substitute(u, s), substitute(v, s))
    for u, v in sps_pairs:
        assert equal_sps(u, v)
        s = _random_substitution(rng, "xyz")
        assert equal_sps(substitute(u, s), substitute(v, s))


@criterion(10, "lambda witness")
def test_lambda_witness():
    for n, k in product((1, 2, 3), repeat=2):
        g, m = lambda_witness(n, k)
        assert is_reduced(g)
        assert len(g.vertices) == k * (2 * n + 2)
        assert theta(m).graph == g
