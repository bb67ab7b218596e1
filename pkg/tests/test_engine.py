import pytest

from ppvgroup.catalog import example
from ppvgroup.engine.pipeline import (CouplingDesc, Options, PipelineError, SemiInvariant, assemble_G,
                                      compute_B, compute_D, compute_unimodular_group, lambda_coupling_case2,
                                      lambda_coupling_case3, normalize_equation, run_pipeline,
                                      third_order_operator)
from ppvgroup.algebra.diffop import op_apply
from ppvgroup.groups.mult import compute_mult_group
from ppvgroup.io.parser import parse_ratfunc
from ppvgroup.io.report import load_input
from ppvgroup.testing import random_nonconstant, seeded


def P(text, F):
    return parse_ratfunc(text, F)


def _riccati_q(u):
    return u.dx() + u * u


def test_normalize_equation(F1):
    a1, a0 = P("2*t1/x", F1), P("1/x^2", F1)
    r1, r0, q = normalize_equation(a1, a0)
    assert r1 == P("-t1/x", F1)
    assert r0 == a0
    assert q == r1 * r1 - r1.dx() - r0


def test_third_order_operator_rejects_zero_q(F0):
    with pytest.raises(PipelineError, match="needs q"):
        third_order_operator(F0.zero, F0.zero, F0.zero)


def test_third_order_operator_kills_products(F1):
    # pick r0 so that y solves the second-order equation; L must then kill y
    rng = seeded(31)
    for _ in range(5):
        y = random_nonconstant(F1, rng)
        r1 = random_nonconstant(F1, rng)
        r0 = (r1 * y.dx() * 2 - y.dx().dx()) / y
        q = r1 * r1 - r1.dx() - r0
        if q.is_zero:
            continue
        L = third_order_operator(r1, r0, q)
        assert L.order == 3
        assert op_apply(L, y).is_zero


def test_compute_B_full(F2):
    _, a1, a0, _ = load_input(example("two-param"))
    H = compute_unimodular_group(normalize_equation(a1, a0)[2])
    assert H.B.kind == "full"


def test_compute_B_zero(F0):
    q = P("2/x^2", F0)
    u = P("2/x", F0)
    assert compute_B(q, u, compute_mult_group(u)).kind == "zero"


def test_compute_B_unresolved(F1):
    u = P("t1*x + 1/x", F1)
    q = _riccati_q(u)
    B = compute_B(q, u, compute_mult_group(u))
    assert B.kind == "unresolved"


def test_compute_B_rejects_non_solution(F0):
    with pytest.raises(PipelineError, match="Riccati"):
        compute_B(F0.x, F0.x, compute_mult_group(F0.x))


def test_compute_D(F1):
    assert compute_D(F1.zero).order == 1
    assert compute_D(P("1/(2*x)", F1)).order == 2
    assert not compute_D(P("t1/x", F1)).is_finite


def test_case2_dihedral_coupling(F0):
    v = P("-1/(2*x)", F0)
    D = compute_D(P("-1/(2*x)", F0))
    c = lambda_coupling_case2(v, P("-1/(2*x)", F0), D)
    assert c.kind == "DihedralCoupling" and c.k1 == 1
    assert lambda_coupling_case2(v, F0.zero, compute_D(F0.zero)).kind == "TrivialLambda"


def test_case2_infinite_D(F1):
    c = lambda_coupling_case2(P("1/x", F1), P("t1/x", F1), compute_D(P("t1/x", F1)))
    assert c.kind == "TrivialLambda" and c.skipped == ["D is infinite"]


def test_case3_couplings(F0):
    r1 = P("1/(4*x)", F0)
    D4 = compute_D(r1)
    assert D4.order == 4
    c = lambda_coupling_case3(D4, r1, [SemiInvariant("chi", 2, r1)])
    assert c.kind == "FiniteCoupling" and (c.k1, c.k2) == (1, 1)
    assert (c.witness.dx() / c.witness).is_zero
    # k2 must stay below s / order, so an order-4 character has no room
    assert lambda_coupling_case3(D4, r1, [SemiInvariant("chi", 4, r1)]).kind == "TrivialLambda"
    c = lambda_coupling_case3(D4, r1)
    assert c.kind == "TrivialLambda" and c.partial
    assert lambda_coupling_case3(compute_D(F0.zero), F0.zero).partial is None


def test_assemble_rejects_inconsistent_coupling(F0):
    H = compute_unimodular_group(F0.x)
    with pytest.raises(PipelineError, match="inconsistent with case IV"):
        assemble_G(H, compute_D(F0.zero), CouplingDesc("PowerCoupling", k1=1, k2=1))


def test_trivial_D_gives_H(F0):
    H = compute_unimodular_group(F0.x)
    G = assemble_G(H, compute_D(F0.zero), CouplingDesc("TrivialLambda"))
    assert G is H.group


def test_power_coupling_relation(F1):
    u = P("t1/x", F1)
    q = _riccati_q(u)
    rep = run_pipeline(F1.const(-2) * u, -q + u * u - u.dx())
    assert rep.r1 == u
    assert rep.coupling.kind == "PowerCoupling"
    assert (rep.coupling.k1, rep.coupling.k2) == (1, 1)
    assert "a = e" in rep.G.relations


def test_pipeline_airy(F0):
    rep = run_pipeline(F0.zero, -F0.x)
    assert rep.H.case.kind == "IV"
    assert rep.coupling.kind == "TrivialLambda"
    assert rep.G is rep.H.group
    assert rep.complete


def test_pipeline_worked_example():
    _, a1, a0, opts = load_input(example("two-param"))
    rep = run_pipeline(a1, a0, opts)
    assert rep.complete
    assert rep.coupling.kind == "MultMultCoupling"
    assert rep.G.membership == ["a in A", "b in B", "e in D"]
    assert len(rep.G.relations) == 2


def test_partial_without_semi_invariants():
    doc = example("tetrahedral")
    _, a1, a0, opts = load_input(doc)
    q = normalize_equation(a1, a0)[2]
    r1 = P("1/(4*x)", q.field)
    rep = run_pipeline(r1 * -2, r1 * r1 - r1.dx() - q, opts)
    assert rep.q == q
    assert rep.H.case.kind == "III"
    assert not rep.complete
    assert rep.partial_reasons == ["D is finite and no semi-invariants were supplied"]


def test_options_validate():
    with pytest.raises(PipelineError, match="max_theta_order"):
        Options(max_theta_order=-1).validate()
    with pytest.raises(PipelineError, match="lattice_search_bound"):
        Options(lattice_search_bound=0).validate()
    Options(max_theta_order=0).validate()
