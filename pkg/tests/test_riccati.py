import pytest

from ppvgroup.catalog import example
from ppvgroup.engine.pipeline import normalize_equation
from ppvgroup.io.parser import parse_ratfunc
from ppvgroup.io.report import load_input
from ppvgroup.riccati.classify import classify_case
from ppvgroup.riccati.kovacic import (SplitQuadraticError, isoconstancy_directions, riccati_case3,
                                      riccati_quadratic, riccati_rational_solutions,
                                      verify_algebraic_riccati, verify_quadratic, verify_riccati)
from ppvgroup.riccati.local import laurent_at, local_data


def P(text, F):
    return parse_ratfunc(text, F)


U = "t1/x + (t1-t2)/(x-1)"


def _q(name):
    _, a1, a0, _ = load_input(example(name))
    return normalize_equation(a1, a0)[2]


def test_verify_riccati(F2, F0):
    u = P(U, F2)
    assert verify_riccati(u, u.dx() + u * u)
    assert verify_riccati(F0.zero, F0.zero)
    assert not verify_riccati(P("1/x", F0), P("1/x", F0))


def test_case1_worked_example(F2):
    q = _q("two-param")
    sols = riccati_rational_solutions(q)
    assert P(U, F2) in sols
    assert all(verify_riccati(u, q) for u in sols)


@pytest.mark.parametrize("q, want", [
    ("0", {"0", "1/x"}),
    ("2/x^2", {"2/x", "-1/x"}),
    ("-3/(16*x^2)", {"1/(4*x)", "3/(4*x)"}),
])
def test_case1_catalog(F0, q, want):
    sols = riccati_rational_solutions(P(q, F0))
    assert want <= {str(u) for u in sols}


def test_case1_none_for_airy(F0):
    assert riccati_rational_solutions(F0.x) == []


def test_quadratic_flags_case1_input(F0):
    with pytest.raises(SplitQuadraticError, match="precondition") as info:
        riccati_quadratic(P("2/x^2", F0))
    assert all(verify_riccati(u, P("2/x^2", F0)) for u in info.value.solutions)


def test_quadratic_case(F0):
    q = P("1/x - 3/(16*x^2)", F0)
    c2 = riccati_quadratic(q)
    assert c2 is not None
    assert verify_quadratic(c2.phi, c2.w2, q)
    assert c2.v == c2.w2.dx() / (c2.w2 * 2)
    # a wrong w2 must not pass
    assert not verify_quadratic(c2.phi, c2.w2 * 2, q)
    assert riccati_quadratic(F0.x) is None


@pytest.mark.parametrize("name, n, label", [
    ("tetrahedral", 4, "A4"), ("octahedral", 6, "S4"), ("icosahedral", 12, "A5"),
])
def test_case3(name, n, label):
    q = _q(name)
    c3 = riccati_case3(q)
    assert c3 is not None and c3.n == n
    assert verify_algebraic_riccati(c3.minpoly, q)
    tag = classify_case(q)
    assert tag.kind == "III" and tag.group_label == label


def test_case3_none_for_airy(F0):
    assert riccati_case3(F0.x) is None


@pytest.mark.parametrize("q, kind", [
    ("x", "IV"), ("0", "I"), ("2/x^2", "I"), ("1/x - 3/(16*x^2)", "II"), ("-3/(16*x^2)", "I"),
])
def test_classify(F0, q, kind):
    tag = classify_case(P(q, F0))
    assert tag.kind == kind
    assert all(verify_riccati(u, P(q, F0)) for u in tag.solutions)


def test_classify_worked_example():
    tag = classify_case(_q("two-param"))
    assert tag.kind == "I" and tag.complete and len(tag.solutions) == 1


def test_isoconstancy(F1):
    r = isoconstancy_directions(P("x", F1))
    assert len(r.directions) == 1
    r = isoconstancy_directions(P("t1*x", F1))
    assert len(r.directions) == 1
    assert r.witnesses[0] == P("x/(3*t1)", F1) * r.directions[0][0]


def test_isoconstancy_witnesses_verify(F2):
    q = _q("two-param")
    r = isoconstancy_directions(q)
    for c, f in zip(r.directions, r.witnesses):
        lhs = f.dx().dx().dx() - q * f.dx() * 4 - q.dx() * f * 2
        rhs = sum((q.dt(j) * cj for j, cj in enumerate(c, 1)), F2.zero) * -2
        assert lhs == rhs


def test_local_data(F1):
    q = P("t1/x^2 + 1/(x-1)", F1)
    ld = local_data(q)
    assert sorted(p.order for p in ld.poles) == [1, 2]
    low, coeffs = laurent_at(q, F1.zero, 2)
    assert low == -2 and coeffs[0] == F1.t(1)
