from itertools import product

import numpy as np
import pytest
from conftest import terms
from hypothesis import given

from pseudosemilattice.model import (
    AlgebraError,
    FiniteAlgebra,
    check_axioms,
    dump_algebra,
    e2,
    evaluate,
    evaluate_all,
    find_counterexample,
    load_algebra,
    satisfies_identity,
)
from pseudosemilattice.term import parse_term, variables

P = parse_term


def table(n, f, names=None):
    names = names or [str(i) for i in range(n)]
    return FiniteAlgebra.from_rows(names, [[f(i, j) for j in range(n)] for i in range(n)])


LEFT_ZERO = table(2, lambda i, j: i, ["a", "b"])


def _a2():
    """A2 as 2x2 matrix units plus zero, multiplied as 0/1 matrices with the sandwich folded in."""
    zero = np.zeros((2, 2), dtype=int)
    sandwich = np.array([[1, 1], [1, 0]])
    elems = [zero]
    for i, lam in product(range(2), range(2)):
        m = np.zeros((2, 2), dtype=int)
        m[i, lam] = 1
        elems.append(m)

    def mul(a, b):
        c = (elems[a] @ sandwich @ elems[b]).clip(0, 1)
        return next(k for k, e in enumerate(elems) if (e == c).all())

    return elems, mul


def _meet_via_inverses():
    """e ∧ f as the unique idempotent in e·V(fe)·f, computed in A2."""
    elems, mul = _a2()
    n = len(elems)
    idem = [k for k in range(n) if mul(k, k) == k]

    def inverses(a):
        return [b for b in range(n) if mul(mul(a, b), a) == a and mul(mul(b, a), b) == b]

    out = {}
    for e, f in product(idem, idem):
        cands = {mul(mul(e, v), f) for v in inverses(mul(f, e))}
        found = [g for g in cands if mul(g, g) == g]
        assert len(found) == 1
        out[e, f] = found[0]
    return elems, idem, out


def test_e2_matches_inverse_oracle():
    m = e2()
    elems, idem, meet = _meet_via_inverses()
    assert len(idem) == len(m) == 4

    def name(k):
        if k == 0:
            return "0"
        i, lam = np.argwhere(elems[k])[0]
        return f"e{i + 1}{lam + 1}"

    for e, f in product(idem, idem):
        assert m.elements[m.op(m.index(name(e)), m.index(name(f)))] == name(meet[e, f])


def test_e2_shape():
    m = e2()
    z = m.index("0")
    assert set(m.elements) == {"0", "e11", "e12", "e21"}
    for i in range(4):
        assert m.op(i, i) == i
        assert m.op(z, i) == z == m.op(i, z)


def test_e2_axioms_and_nonassociativity():
    assert all(r.holds for r in check_axioms(e2()))
    assert not satisfies_identity(e2(), P("(x^y)^z"), P("x^(y^z)"))
    assert satisfies_identity(e2(), P("(x^y)^(x^z)"), P("(x^y)^z"))


def test_evaluate_examples():
    a, b = LEFT_ZERO.index("a"), LEFT_ZERO.index("b")
    assert evaluate(LEFT_ZERO, P("x^y"), {"x": a, "y": b}) == a
    for k in range(4):
        assert evaluate(e2(), P("x^x"), {"x": k}) == k
    with pytest.raises(AlgebraError):
        evaluate(LEFT_ZERO, P("x^y"), {"x": a})
    with pytest.raises(AlgebraError):
        evaluate(LEFT_ZERO, P("x"), {"x": 7})


def test_axiom_report():
    report = check_axioms(LEFT_ZERO)
    assert [r.name for r in report] == ["PS1", "PS2", "PS3", "PS2'", "PS3'"]
    assert all(r.holds and r.counterexample is None for r in report)

    const = table(2, lambda i, j: 0)
    ps1 = check_axioms(const)[0]
    assert not ps1.holds and ps1.counterexample == {"x": "1"}


def test_counterexample_is_lexicographically_first():
    m = e2()
    u, v = P("(x^y)^z"), P("x^(y^z)")
    names = sorted(variables(u) | variables(v))
    first = None
    for combo in product(range(len(m)), repeat=len(names)):
        a = dict(zip(names, combo))
        if evaluate(m, u, a) != evaluate(m, v, a):
            first = {x: m.elements[i] for x, i in a.items()}
            break
    assert find_counterexample(m, u, v) == first


@given(terms(8, "xyz"))
def test_vectorized_matches_pointwise(t):
    m = e2()
    names = sorted(variables(t))
    vec = evaluate_all(m, t, names)
    for k, combo in enumerate(product(range(len(m)), repeat=len(names))):
        assert vec[k] == evaluate(m, t, dict(zip(names, combo)))


def test_json_round_trip_and_errors():
    m = e2()
    assert load_algebra(dump_algebra(m)) == m
    for bad in ["{", '{"elements": ["a"]}', '{"elements": ["a"], "table": [[1]]}', '{"elements": ["a","a"], "table": [[0,0],[0,0]]}', "[1]"]:
        with pytest.raises(AlgebraError):
            load_algebra(bad)
    with pytest.raises(AlgebraError):
        FiniteAlgebra.from_rows(["a", "b"], [[0, 1]])
    with pytest.raises(AlgebraError):
        FiniteAlgebra.from_rows([], [])


def test_identities_with_a_bare_variable():
    assert satisfies_identity(LEFT_ZERO, P("x"), P("x^y"))
    assert not satisfies_identity(LEFT_ZERO, P("y"), P("x^y"))
