"""Acceptance criteria 1-7.

Each ``criterion_N`` returns a list of ``Check`` records.  The pytest tests
assert on them and the terminal summary (see conftest.py) prints one
PASS/FAIL line per criterion.  ``python tests/test_acceptance.py`` prints the
same lines without pytest.

Criterion 1(a) compares against the coefficient of ``q`` exactly as printed
with the worked example.  That value is not reproducible from the printed
equation (nor from the corrected one), so the literal check fails; it is
kept as a strict expected failure and 1(a') checks the corrected value.
"""

from __future__ import annotations

import itertools
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List

import pytest

from ppvgroup.algebra.diffop import DiffOperator, op_compose
from ppvgroup.algebra.field import FunctionField, RatFunc
from ppvgroup.algebra.linalg import in_row_space
from ppvgroup.calculus.exactness import exactness_relation_space, is_exact
from ppvgroup.calculus.lattice import log_derivative_lattice
from ppvgroup.calculus.residues import is_log_derivative
from ppvgroup.catalog import example
from ppvgroup.engine.pipeline import (Options, SemiInvariant, compute_unimodular_group,
                                      normalize_equation, run_pipeline, third_order_operator)
from ppvgroup.groups.lindiff import LinDiffPoly, canonicalize_basis, canonicalize_polys
from ppvgroup.groups.mult import is_pi_constant
from ppvgroup.io.parser import parse_ratfunc
from ppvgroup.io.report import load_input
from ppvgroup.riccati.classify import classify_case
from ppvgroup.riccati.kovacic import verify_algebraic_riccati, verify_quadratic, verify_riccati
from ppvgroup.testing import random_nonconstant, random_poly, random_ratfunc, seeded

PRINTED_Q = "t1*(t1-1)*(1-2*x)/x^2 + (t1-t2)*(2*t1*x-t1-t2-1)/(x-1)^2"
# the x-term of the first summand carries (t1-t2) where the print has (t1-1)
CORRECTED_Q = "(t1*(t1-1) - 2*t1*(t1-t2)*x)/x^2 + (t1-t2)*(2*t1*x-t1-t2-1)/(x-1)^2"
U_TEXT = "t1/x + (t1-t2)/(x-1)"


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


def _load(name: str):
    field, a1, a0, opts = load_input(example(name))
    return field, a1, a0, opts


# ---------------------------------------------------------------------------
# criterion 1
# ---------------------------------------------------------------------------

def criterion_1a_literal() -> Check:
    F, a1, a0, _ = _load("two-param-as-printed")
    q = normalize_equation(a1, a0)[2]
    printed = parse_ratfunc(PRINTED_Q, F)
    diff = q - printed
    return Check("1(a) literal q", diff.is_zero, f"computed q - printed q = {diff}")


def _pair(F, p: Dict[int, int], q: Dict[int, int]):
    P = LinDiffPoly(F)
    Q = LinDiffPoly(F)
    for j, c in p.items():
        P = P + LinDiffPoly.var(F, j).scale(c)
    for j, c in q.items():
        Q = Q + LinDiffPoly.var(F, j).scale(c)
    return P, Q


def _same_rows(a, b) -> bool:
    ca, cb = canonicalize_basis(a), canonicalize_basis(b)
    return [(str(p), str(q)) for p, q in ca] == [(str(p), str(q)) for p, q in cb]


def criterion_1() -> List[Check]:
    F, a1, a0, opts = _load("two-param")
    rep = run_pipeline(a1, a0, opts)
    u = parse_ratfunc(U_TEXT, F)
    out = []

    want_q = parse_ratfunc(CORRECTED_Q, F)
    out.append(Check("1(a') corrected q", rep.q == want_q and rep.q == u.dx() + u * u, f"q = {rep.q}"))

    tag = rep.H.case
    out.append(Check("1(b) u", tag.kind == "I" and tag.u == u and verify_riccati(u, rep.q), f"u = {tag.u}"))

    expected = [LinDiffPoly.var(F, i, th) for i in (1, 2) for th in ((1, 0), (0, 1))]
    A, D = rep.H.A, rep.D
    ok_c = (not A.is_finite and not D.is_finite
            and [str(p) for p in canonicalize_polys([r.poly for r in A.relations])]
            == [str(p) for p in canonicalize_polys(expected)]
            and A.same_relations(D))
    out.append(Check("1(c) A and D", ok_c, "; ".join(str(r.poly) for r in A.relations)))

    out.append(Check("1(d) B full", rep.H.B.kind == "full", rep.H.B.kind))

    lat = log_derivative_lattice([u, -rep.r1])
    out.append(Check("1(e) trivial lattice", not lat.generators and rep.coupling.kind != "PowerCoupling",
                     str(lat.generators)))

    expected_pairs = [_pair(F, {1: 1, 2: 1}, {1: 1}), _pair(F, {2: -1}, {1: 1, 2: 1})]
    ours = [(pr.p, pr.q) for pr in rep.coupling.pairs]
    ok_f = rep.coupling.kind == "MultMultCoupling" and _same_rows(ours, expected_pairs)
    out.append(Check("1(f) coupling basis", ok_f, "; ".join(f"({p}, {q})" for p, q in ours)))

    # the displayed relations of G are p(a) = q(e) for the coupling pairs
    shown = [f"{p.render_applied('a')} = {q.render_applied('e')}" for p, q in ours]
    ok_g = (rep.G.shape == "[[e*a, e*b], [0, e*a^-1]]" and rep.G.relations == shown
            and _same_rows(ours, expected_pairs)
            and all(pr.witness is not None and pr.witness.is_zero for pr in rep.coupling.pairs))
    out.append(Check("1(g) G relations", ok_g, "; ".join(rep.G.relations)))
    return out


# ---------------------------------------------------------------------------
# criterion 2
# ---------------------------------------------------------------------------

def _large(r1: RatFunc, r0: RatFunc, q: RatFunc) -> DiffOperator:
    lq = q.dx() / q
    return DiffOperator(q.field, [
        r0.dx() - r1 * r0 - r0 * lq,
        r1 * r1 * 2 - r1.dx() * 2 + r0 + r1 * lq * 2,
        -(r1 * 3) - lq,
        1,
    ])


def _identities(r1: RatFunc, r0: RatFunc, u: RatFunc) -> bool:
    F = r1.field
    q = r1 * r1 - r1.dx() - r0
    if q.is_zero:
        return True
    left = DiffOperator(F, [-(r1 + q.dx() / q), 1])
    right = DiffOperator(F, [r0, -r1 * 2, 1])
    comp = op_compose(left, right)
    ok = comp == _large(r1, r0, q) and third_order_operator(r1, r0, q) == comp
    ric = op_compose(DiffOperator(F, [u, 1]), DiffOperator(F, [-u, 1]))
    return ok and ric == DiffOperator(F, [-(u.dx() + u * u), 0, 1])


def criterion_2() -> List[Check]:
    F = FunctionField(["t1"])
    rng = seeded(2)
    fails = 0
    for _ in range(100):
        if not _identities(random_ratfunc(F, rng), random_ratfunc(F, rng), random_ratfunc(F, rng)):
            fails += 1
    P, a1, a0, _ = _load("two-param")
    r1, r0, _ = normalize_equation(a1, a0)
    example_ok = _identities(r1, r0, parse_ratfunc(U_TEXT, P))
    return [Check("2 random instances", fails == 0, f"{fails} failures of 100"),
            Check("2 worked example", example_ok)]


# ---------------------------------------------------------------------------
# criterion 3
# ---------------------------------------------------------------------------

def criterion_3() -> List[Check]:
    F = FunctionField(["t1"])
    rng = seeded(3)
    fails = 0
    for _ in range(500):
        f = random_nonconstant(F, rng)
        g = f.dx()
        w = is_exact(g)
        lw = is_log_derivative(g / f)
        if w is None or w.dx() != g or lw is None or lw.dx() / lw != g / f:
            fails += 1
    x, t1 = F.x, F.t(1)
    return [Check("3 round trips", fails == 0, f"{fails} failures of 500"),
            Check("3 1/x not exact", is_exact(x.inv()) is None),
            Check("3 t1/x not a log-derivative", is_log_derivative(t1 / x) is None)]


# ---------------------------------------------------------------------------
# criterion 4
# ---------------------------------------------------------------------------

def criterion_4() -> List[Check]:
    out = []
    P, a1, a0, _ = _load("two-param")
    q = normalize_equation(a1, a0)[2]
    tag = classify_case(q)
    out.append(Check("4 worked example is case I", tag.kind == "I"))
    sols = list(tag.solutions)

    F0 = FunctionField([])
    x = F0.x
    out.append(Check("4 Airy is case IV", classify_case(x).kind == "IV"))

    t0 = classify_case(F0.zero)
    out.append(Check("4 q = 0 is case I", t0.kind == "I"))
    sols += t0.solutions

    q2 = F0.const(2) / x ** 2
    h2 = compute_unimodular_group(q2)
    out.append(Check("4 q = 2/x^2 is case I with B = 0", h2.case.kind == "I" and h2.B.kind == "zero"))
    sols_q = [(u, q) for u in tag.solutions] + [(u, F0.zero) for u in t0.solutions]
    sols_q += [(u, q2) for u in h2.case.solutions]

    qd = parse_ratfunc("1/x - 3/(16*x^2)", F0)
    td = classify_case(qd)
    c2 = td.quadratic
    ok2 = td.kind == "II" and verify_quadratic(c2.phi, c2.w2, qd) and c2.v == c2.w2.dx() / (c2.w2 * 2)
    out.append(Check("4 case II verified in K[w]/(w^2 - w2)", ok2, f"w2 = {c2.w2 if c2 else None}"))

    ok3 = True
    for name, n in (("tetrahedral", 4), ("octahedral", 6), ("icosahedral", 12)):
        _, b1, b0, _ = _load(name)
        q3 = normalize_equation(b1, b0)[2]
        t3 = classify_case(q3)
        ok3 &= t3.kind == "III" and t3.finite.n == n and verify_algebraic_riccati(t3.finite.minpoly, q3)
    out.append(Check("4 finite cases n = 4, 6, 12", ok3))

    bad = [str(u) for u, qq in sols_q if not verify_riccati(u, qq)]
    out.append(Check("4 emitted Riccati solutions verify", not bad and len(sols_q) >= 5, ", ".join(bad)))
    return out


# ---------------------------------------------------------------------------
# criterion 5
# ---------------------------------------------------------------------------

def _equation(r1: RatFunc, q: RatFunc):
    """(a1, a0) whose normal form has the given r1 and q."""
    return -r1 * 2, r1 * r1 - r1.dx() - q


def coupling_suite() -> List[tuple]:
    F0 = FunctionField([])
    F1 = FunctionField(["t1"])
    P0 = lambda s: parse_ratfunc(s, F0)  # noqa: E731
    P1 = lambda s: parse_ratfunc(s, F1)  # noqa: E731
    suite = []

    u = P1("t1/x")
    suite.append(("main (i) power", _equation(u, u.dx() + u * u), None, "I", "PowerCoupling"))

    _, a1, a0, opts = _load("two-param")
    suite.append(("main (ii) multiplicative", (a1, a0), opts, "I", "MultMultCoupling"))

    u = P1("1/x + 1/(x-1)")
    suite.append(("main (iii) additive", _equation(P1("t1*(2/x - 2/(x-1))"), u.dx() + u * u),
                  None, "I", "AddMultCoupling"))

    u = P0("x")
    suite.append(("main (iv) trivial", _equation(P0("1/(3*x)"), u.dx() + u * u), None, "I", "TrivialLambda"))

    qd0, qd1 = P0("1/x - 3/(16*x^2)"), P1("1/x - 3/(16*x^2)")
    suite.append(("dihedral (i)", _equation(P0("-1/(2*x)"), qd0), None, "II", "DihedralCoupling"))
    suite.append(("dihedral (ii)", _equation(P1("t1/x"), qd1), None, "II", "TrivialLambda"))

    _, _, b0, _ = _load("tetrahedral")
    qt0 = -b0
    qt1 = P1(str(qt0))
    suite.append(("finite, D infinite", _equation(P1("t1/x"), qt1), None, "III", "TrivialLambda"))
    r1 = P0("1/(4*x)")
    semi = Options(semi_invariants=[SemiInvariant("chi", 2, r1)])
    suite.append(("finite, D finite with semi-invariant", _equation(r1, qt0), semi, "III", "FiniteCoupling"))

    suite.append(("sl2", _equation(P1("t1/x"), P1("x")), None, "IV", "TrivialLambda"))
    return suite


BRANCHES = ("PowerCoupling", "MultMultCoupling", "AddMultCoupling", "DihedralCoupling",
            "FiniteCoupling", "TrivialLambda")


def _criteria_hold(rep) -> bool:
    """The consequences each fired branch must satisfy."""
    C, A, B, D = rep.coupling, rep.H.A, rep.H.B, rep.D
    if C.kind not in BRANCHES:
        return False
    if C.kind == "PowerCoupling":
        f = is_log_derivative(rep.H.case.u * C.k1 - rep.r1 * C.k2)
        return (A.is_finite and D.is_finite or A.same_relations(D)) and f is not None and C.k1 and C.k2
    if C.kind == "MultMultCoupling":
        return not is_pi_constant(A) and not is_pi_constant(D) and bool(C.pairs)
    if C.kind == "AddMultCoupling":
        return A.within_pm1() and B.kind != "zero" and not is_pi_constant(D) and bool(C.pairs)
    if C.kind == "DihedralCoupling":
        v = rep.H.case.quadratic.v
        return D.is_finite and D.order == 2 * C.k1 and is_log_derivative(v - rep.r1 * C.k1) is not None
    if C.kind == "FiniteCoupling":
        return D.is_finite and C.witness is not None
    if rep.H.case.kind == "I":
        # every case-I test ran and reported why it did not fire
        return sum(s.startswith(("(i)", "(ii)", "(iii)")) for s in C.skipped) >= 2
    return True


def criterion_5() -> List[Check]:
    out = []
    for label, (a1, a0), opts, case, branch in coupling_suite():
        rep = run_pipeline(a1, a0, opts)
        ok = rep.H.case.kind == case and rep.coupling.kind == branch and _criteria_hold(rep)
        out.append(Check(f"5 {label}", ok, f"case {rep.H.case.kind}, {rep.coupling.kind}"))
    return out


# ---------------------------------------------------------------------------
# criterion 6
# ---------------------------------------------------------------------------

def criterion_6() -> List[Check]:
    F = FunctionField(["t1"])
    rng = seeded(6)
    qs = []
    while len(qs) < 10:
        u = random_nonconstant(F, rng, deg=1)
        q = u.dx() + u * u
        if not q.is_zero:
            qs.append(q)
    while len(qs) < 20:
        qs.append(random_nonconstant(F, rng))
    fails = []
    for q in qs:
        rep = run_pipeline(F.zero, -q)
        ok = (rep.D.is_finite and rep.D.order == 1 and rep.coupling.kind == "TrivialLambda"
              and rep.G.render() == rep.H.group.render())
        if not ok:
            fails.append(str(q))
    return [Check("6 unimodular degeneration", not fails, f"{len(fails)} failures of 20")]


# ---------------------------------------------------------------------------
# criterion 7
# ---------------------------------------------------------------------------

def _simple_part(F, rng, poles, den: int) -> RatFunc:
    acc = F.zero
    for p in rng.sample(poles, 2):
        acc = acc + F.const(Fraction(rng.randint(-3, 3), den)) / p
    return acc


def criterion_7() -> List[Check]:
    F = FunctionField(["t1"])
    x = F.x
    poles = [x, x - 1, x + 2, x - F.t(1)]
    rng = seeded(7)

    lat_fail = 0
    for _ in range(50):
        gs = [_simple_part(F, rng, poles, rng.choice([1, 2, 3]))
              + (random_poly(F, rng, 1, 0) / rng.choice(poles)).dx() for _ in range(2)]
        lat = log_derivative_lattice(gs)
        for k in itertools.product(range(-3, 4), repeat=2):
            oracle = is_log_derivative(gs[0] * k[0] + gs[1] * k[1]) is not None
            lat_fail += oracle != lat.contains(k)

    ex_fail = 0
    for _ in range(50):
        base = [_simple_part(F, rng, poles, 1) for _ in range(2)]
        gs = [base[0] * rng.randint(-1, 1) + base[1] * rng.randint(-1, 1)
              + (random_poly(F, rng, 1, 1) / rng.choice(poles)).dx() for _ in range(3)]
        ers = exactness_relation_space(gs)
        for c in itertools.product((-1, 0, 1), repeat=3):
            g = gs[0] * c[0] + gs[1] * c[1] + gs[2] * c[2]
            oracle = is_exact(g) is not None
            vec = [F.const(v) for v in c]
            claimed = not any(c) or (bool(ers.basis) and in_row_space(vec, ers.basis, 3, F.zero))
            ex_fail += oracle != claimed
    return [Check("7 lattice vs brute force", lat_fail == 0, f"{lat_fail} disagreements"),
            Check("7 exactness space vs brute force", ex_fail == 0, f"{ex_fail} disagreements")]


# ---------------------------------------------------------------------------
# pytest entry points and the per-criterion summary
# ---------------------------------------------------------------------------

CRITERIA: Dict[int, Callable[[], List[Check]]] = {
    1: lambda: [criterion_1a_literal()] + criterion_1(),
    2: criterion_2, 3: criterion_3, 4: criterion_4,
    5: criterion_5, 6: criterion_6, 7: criterion_7,
}

# filled while the tests run; conftest.py prints it
RESULTS: Dict[int, List[Check]] = {}


def summary_line(n: int, checks: List[Check]) -> str:
    bad = [c for c in checks if not c.ok]
    if not bad:
        return f"criterion {n}: PASS ({len(checks)} check{'' if len(checks) == 1 else 's'})"
    return f"criterion {n}: FAIL " + "; ".join(f"[{c.name}: {c.detail}]" for c in bad)


def _assert_all(checks: List[Check]) -> None:
    bad = [f"{c.name}: {c.detail}" for c in checks if not c.ok]
    assert not bad, "\n".join(bad)


@pytest.mark.xfail(strict=True, reason="the printed q does not follow from the printed equation; see 1(a')")
def test_criterion_1a_literal_printed_q():
    c = criterion_1a_literal()
    RESULTS.setdefault(1, []).insert(0, c)
    assert c.ok, c.detail


def test_criterion_1_worked_example():
    checks = criterion_1()
    RESULTS.setdefault(1, []).extend(checks)
    _assert_all(checks)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 7])
def test_criterion(n):
    checks = CRITERIA[n]()
    RESULTS[n] = checks
    _assert_all(checks)


def main() -> int:
    failed = 0
    for n, fn in CRITERIA.items():
        checks = fn()
        print(summary_line(n, checks))
        failed += any(not c.ok for c in checks)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
