"""From Dx^2 Y + a1 Dx Y + a0 Y = 0 to its parameterized Picard-Vessiot group.

The group G sits in H x D, where H is the group of the unimodular equation
Dx^2 y = q y and D the group of Dx z = r1 z; G is determined by the three of
them together with the common quotient through which they are glued
(the coupling).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from math import gcd
from typing import List, Optional, Sequence, Tuple

from .. import assumptions
from ..algebra.diffop import DiffOperator, op_compose
from ..algebra.field import RatFunc
from ..calculus.exactness import exactness_relation_space
from ..calculus.lattice import log_derivative_lattice
from ..calculus.residues import is_log_derivative
from ..groups.coupling import (CouplingPair, coupling_relations, coupling_relations_additive)
from ..groups.mult import (AddGroupDesc, DEFAULT_FINITE_ORDER_BOUND, DEFAULT_MAX_THETA_ORDER,
                           MultGroupDesc, compute_mult_group, is_pi_constant)
from ..riccati.classify import CaseTag, classify_case
from ..riccati.kovacic import isoconstancy_directions, verify_riccati

DEFAULT_LATTICE_BOUND = 25


class PipelineError(ValueError):
    pass


@dataclass
class SemiInvariant:
    label: str
    order: int
    v: RatFunc


@dataclass
class Options:
    max_theta_order: int = DEFAULT_MAX_THETA_ORDER
    finite_order_bound: int = DEFAULT_FINITE_ORDER_BOUND
    lattice_search_bound: int = DEFAULT_LATTICE_BOUND
    semi_invariants: Optional[List[SemiInvariant]] = None
    assume: List[str] = dc_field(default_factory=list)

    def validate(self) -> None:
        for name in ("max_theta_order", "finite_order_bound", "lattice_search_bound"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool) or v < (0 if name == "max_theta_order" else 1):
                raise PipelineError(f"option {name} must be a {'non-negative' if name == 'max_theta_order' else 'positive'} integer")


@dataclass
class GroupDesc:
    shape: str
    membership: List[str]
    relations: List[str] = dc_field(default_factory=list)

    def render(self) -> str:
        lines = [self.shape, "where " + ", ".join(self.membership)]
        lines += ["  " + r for r in self.relations]
        return "\n".join(lines)


@dataclass
class HDesc:
    case: CaseTag
    A: Optional[MultGroupDesc] = None
    B: Optional[AddGroupDesc] = None
    finite_group: Optional[str] = None
    pi_prime: List[List[RatFunc]] = dc_field(default_factory=list)
    pi_prime_witnesses: List[RatFunc] = dc_field(default_factory=list)
    group: Optional[GroupDesc] = None


@dataclass
class CouplingDesc:
    kind: str  # PowerCoupling | MultMultCoupling | AddMultCoupling | DihedralCoupling | FiniteCoupling | TrivialLambda
    k1: Optional[int] = None
    k2: Optional[int] = None
    label: Optional[str] = None
    witness: Optional[RatFunc] = None
    pairs: List[CouplingPair] = dc_field(default_factory=list)
    lattice: List[List[int]] = dc_field(default_factory=list)
    skipped: List[str] = dc_field(default_factory=list)
    partial: Optional[str] = None


@dataclass
class PPVReport:
    a1: RatFunc
    a0: RatFunc
    r1: RatFunc
    r0: RatFunc
    q: RatFunc
    H: HDesc
    D: MultGroupDesc
    coupling: CouplingDesc
    G: GroupDesc
    assumptions: List[str]
    partial_reasons: List[str]
    options: Options

    @property
    def complete(self) -> bool:
        return not self.partial_reasons


# ---------------------------------------------------------------------------
# normalization and the third-order operator
# ---------------------------------------------------------------------------

def normalize_equation(a1: RatFunc, a0: RatFunc) -> Tuple[RatFunc, RatFunc, RatFunc]:
    r1 = -a1 / 2
    r0 = a0
    q = r1 * r1 - r1.dx() - r0
    return r1, r0, q


def third_order_operator(r1: RatFunc, r0: RatFunc, q: RatFunc) -> DiffOperator:
    """Operator annihilating zeta*eta, zeta*xi and zeta."""
    if q.is_zero:
        raise PipelineError("third-order operator needs q ≠ 0")
    fld = q.field
    lq = q.dx() / q
    L = DiffOperator(fld, [
        r0.dx() - r1 * r0 - r0 * lq,
        r1 * r1 * 2 - r1.dx() * 2 + r0 + r1 * lq * 2,
        -(r1 * 3 + lq),
        fld.one,
    ])
    left = DiffOperator(fld, [-(r1 + lq), fld.one])
    right = DiffOperator(fld, [r0, -r1 * 2, fld.one])
    if op_compose(left, right) != L:
        raise AssertionError("third-order operator does not factor as expected")
    return L


# ---------------------------------------------------------------------------
# H, B and D
# ---------------------------------------------------------------------------

def compute_B(q: RatFunc, u: RatFunc, A: MultGroupDesc, tag: Optional[CaseTag] = None) -> AddGroupDesc:
    if not verify_riccati(u, q):
        raise PipelineError("u does not solve the Riccati equation")
    if tag is None:
        tag = classify_case(q)
    if len(tag.solutions) >= 2 or tag.family_dim >= 1:
        return AddGroupDesc("zero", facts=["two rational Riccati solutions: the non-parameterized unipotent part is 0"])
    fld = q.field
    facts = ["the non-parameterized unipotent part is Ga"]
    if fld.m == 0:
        return AddGroupDesc("full", facts=facts)
    ers = exactness_relation_space([u.dt(j) for j in range(1, fld.m + 1)])
    if ers.dim == 0:
        facts.append("no nonzero parametric derivation maps u into Dx(K)")
        return AddGroupDesc("full", facts=facts)
    for c in ers.basis:
        facts.append("derivation with exact image of u: " + " + ".join(
            f"({v})*D{j}" for j, v in enumerate(c, 1) if not v.is_zero))
    facts.append(f"A is {'' if is_pi_constant(A) else 'not '}Pi-constant")
    return AddGroupDesc("unresolved", facts=facts)


def _h_group(tag: CaseTag, pi_prime: Sequence[Sequence[RatFunc]]) -> GroupDesc:
    if tag.kind == "I":
        return GroupDesc("[[a, b], [0, a^-1]]", ["a in A", "b in B"])
    if tag.kind == "II":
        return GroupDesc("[[a, 0], [0, a^-1]] or [[0, a], [-a^-1, 0]]", ["a in A"])
    if tag.kind == "III":
        return GroupDesc(f"{tag.group_label}^SL2", ["sigma in H"])
    return GroupDesc("M", [f"M in SL2(F^Pi'), Pi' = {_render_dirs(pi_prime, tag)}"])


def _render_dirs(dirs: Sequence[Sequence[RatFunc]], tag=None) -> str:
    if not dirs:
        return "{}"
    out = []
    for c in dirs:
        out.append(" + ".join(
            (f"D{j}" if v.is_one else f"({v})*D{j}") for j, v in enumerate(c, 1) if not v.is_zero))
    return "span{" + ", ".join(out) + "}"


def compute_unimodular_group(q: RatFunc, opts: Optional[Options] = None) -> HDesc:
    opts = opts or Options()
    tag = classify_case(q)
    h = HDesc(tag)
    if tag.kind == "I":
        u = tag.u
        h.A = compute_mult_group(u, opts.max_theta_order, opts.finite_order_bound)
        h.B = compute_B(q, u, h.A, tag)
    elif tag.kind == "II":
        h.A = compute_mult_group(tag.quadratic.v, opts.max_theta_order, opts.finite_order_bound)
    elif tag.kind == "III":
        h.finite_group = tag.group_label
    else:
        iso = isoconstancy_directions(q)
        h.pi_prime = iso.directions
        h.pi_prime_witnesses = iso.witnesses
    h.group = _h_group(tag, h.pi_prime)
    return h


def compute_D(r1: RatFunc, opts: Optional[Options] = None) -> MultGroupDesc:
    opts = opts or Options()
    return compute_mult_group(r1, opts.max_theta_order, opts.finite_order_bound)


# ---------------------------------------------------------------------------
# couplings
# ---------------------------------------------------------------------------

def _power_ok(k1: int, A: MultGroupDesc) -> bool:
    if A.is_finite:
        return k1 % A.order != 0
    return k1 != 0


def _power_coupling(u: RatFunc, r1: RatFunc, A: MultGroupDesc, bound: int) -> Optional[CouplingDesc]:
    lat = log_derivative_lattice([u, -r1])
    gens = lat.generators
    if not gens or not any(_power_ok(g[0], A) for g in gens):
        return None
    best = None
    rng = range(-bound, bound + 1)
    for cs in itertools.product(rng, repeat=len(gens)):
        k1 = sum(c * g[0] for c, g in zip(cs, gens))
        k2 = sum(c * g[1] for c, g in zip(cs, gens))
        if not _power_ok(k1, A):
            continue
        if k1 < 0:
            k1, k2 = -k1, -k2
        key = (gcd(k1, k2), k1, abs(k2), -k2)
        if best is None or key < best[0]:
            best = (key, k1, k2)
    _, k1, k2 = best
    f = is_log_derivative(u * k1 - r1 * k2)
    if f is None:
        raise AssertionError("power coupling witness missing")
    rels = [[k1, k2]] + [g for g in gens
                         if _power_ok(g[0], A) and g not in ([k1, k2], [-k1, -k2])]
    return CouplingDesc("PowerCoupling", k1=k1, k2=k2, witness=f, lattice=rels)


def lambda_coupling_case1(u: RatFunc, A: MultGroupDesc, B: AddGroupDesc, r1: RatFunc,
                          D: MultGroupDesc, opts: Optional[Options] = None) -> CouplingDesc:
    opts = opts or Options()
    skipped: List[str] = []
    pc = _power_coupling(u, r1, A, opts.lattice_search_bound)
    if pc is not None:
        _check(A.is_finite and D.is_finite or A.same_relations(D),
               "power coupling needs A, D both finite or with the same relations")
        return pc
    skipped.append("(i) no admissible (k1, k2) in the logarithmic-derivative lattice")
    a_const, d_const = is_pi_constant(A), is_pi_constant(D)
    if not A.within_pm1():
        skipped.append("(iii) not applicable: A is not contained in {1, -1}")
        if a_const or d_const:
            skipped.append("(ii) skipped: " + ("A" if a_const else "D") + " is Pi-constant")
        else:
            pairs = coupling_relations(u, r1, opts.max_theta_order)
            if pairs:
                return CouplingDesc("MultMultCoupling", pairs=pairs, skipped=skipped)
            skipped.append("(ii) no coupling pairs up to the truncation order")
    else:
        skipped.append("(ii) not applicable: A is contained in {1, -1}")
        if B.kind == "zero":
            skipped.append("(iii) skipped: B = 0")
        elif d_const:
            skipped.append("(iii) skipped: D is Pi-constant")
        else:
            f = is_log_derivative(u * 2)
            if f is None:
                raise AssertionError("2u is not a logarithmic derivative although A ⊆ {1, -1}")
            pairs = coupling_relations_additive(f.inv(), r1, B, opts.max_theta_order)
            if pairs:
                return CouplingDesc("AddMultCoupling", pairs=pairs, skipped=skipped, witness=f)
            skipped.append("(iii) no coupling pairs up to the truncation order")
    return CouplingDesc("TrivialLambda", skipped=skipped)


def lambda_coupling_case2(v: RatFunc, r1: RatFunc, D: MultGroupDesc) -> CouplingDesc:
    if D.is_finite and D.order % 2 == 0:
        k = D.order // 2
        f = is_log_derivative(v - r1 * k)
        if f is not None:
            return CouplingDesc("DihedralCoupling", k1=k, witness=f)
        return CouplingDesc("TrivialLambda", skipped=[f"v - {k}*r1 is not a logarithmic derivative"])
    if D.is_finite:
        return CouplingDesc("TrivialLambda", skipped=["D is finite of odd order"])
    return CouplingDesc("TrivialLambda", skipped=["D is infinite"])


def lambda_coupling_case3(D: MultGroupDesc, r1: RatFunc,
                          semi_invariants: Optional[Sequence[SemiInvariant]] = None) -> CouplingDesc:
    if not D.is_finite:
        return CouplingDesc("TrivialLambda", skipped=["D is infinite and connected"])
    if D.order == 1:
        return CouplingDesc("TrivialLambda", skipped=["D is trivial"])
    if not semi_invariants:
        return CouplingDesc("TrivialLambda", partial="D is finite and no semi-invariants were supplied")
    s = D.order
    for si in semi_invariants:
        for k1 in range(1, si.order):
            for k2 in range(1, s // si.order):
                f = is_log_derivative(si.v * k1 - r1 * k2)
                if f is not None:
                    return CouplingDesc("FiniteCoupling", k1=k1, k2=k2, label=si.label, witness=f)
    return CouplingDesc("TrivialLambda", skipped=["no semi-invariant is coupled with r1"])


def _check(cond: bool, msg: str) -> None:
    if not cond:
        raise AssertionError(msg)


# ---------------------------------------------------------------------------
# assembly
# ---------------------------------------------------------------------------

def assemble_G(H: HDesc, D: MultGroupDesc, coupling: CouplingDesc) -> GroupDesc:
    kind = H.case.kind
    allowed = {
        "I": {"PowerCoupling", "MultMultCoupling", "AddMultCoupling", "TrivialLambda"},
        "II": {"DihedralCoupling", "TrivialLambda"},
        "III": {"FiniteCoupling", "TrivialLambda"},
        "IV": {"TrivialLambda"},
    }[kind]
    if coupling.kind not in allowed:
        raise PipelineError(f"{coupling.kind} is inconsistent with case {kind}")
    if D.is_finite and D.order == 1 and coupling.kind == "TrivialLambda":
        return H.group
    rels: List[str] = []
    if kind == "I":
        g = GroupDesc("[[e*a, e*b], [0, e*a^-1]]", ["a in A", "b in B", "e in D"], rels)
        if coupling.kind == "PowerCoupling":
            for k1, k2 in coupling.lattice:
                rels.append(f"{_pw('a', k1)} = {_pw('e', k2)}")
        elif coupling.kind == "MultMultCoupling":
            for pr in coupling.pairs:
                rels.append(f"{pr.p.render_applied('a')} = {pr.q.render_applied('e')}")
        elif coupling.kind == "AddMultCoupling":
            for pr in coupling.pairs:
                rels.append(f"{pr.p.render_applied('b')} = {pr.q.render_applied('e')}")
        return g
    if kind == "II":
        g = GroupDesc("e*[[a, 0], [0, a^-1]] or e*[[0, a], [-a^-1, 0]]", ["a in A", "e in D"], rels)
        if coupling.kind == "DihedralCoupling":
            k = coupling.k1
            rels.append(f"{_pw('e', k)} = 1 on the diagonal component")
            rels.append(f"{_pw('e', k)} = -1 on the anti-diagonal component")
        return g
    if kind == "III":
        g = GroupDesc(f"(sigma, e) in {H.finite_group}^SL2 x D", ["sigma in H", "e in D"], rels)
        if coupling.kind == "FiniteCoupling":
            rels.append(f"{_pw(coupling.label + '(sigma)', coupling.k1)} = {_pw('e', coupling.k2)}")
        return g
    return GroupDesc("e*M", H.group.membership + ["e in D"], rels)


def _pw(sym: str, k: int) -> str:
    if k == 1:
        return sym
    if "(" in sym:
        sym = f"({sym})" if not sym.endswith(")") else sym
    return f"{sym}^{k}" if k >= 0 else f"{sym}^({k})"


def run_pipeline(a1: RatFunc, a0: RatFunc, opts: Optional[Options] = None) -> PPVReport:
    opts = opts or Options()
    opts.validate()
    with assumptions.collecting(opts.assume) as notes:
        r1, r0, q = normalize_equation(a1, a0)
        if not q.is_zero:
            third_order_operator(r1, r0, q)
        H = compute_unimodular_group(q, opts)
        D = compute_D(r1, opts)
        kind = H.case.kind
        if kind == "I":
            C = lambda_coupling_case1(H.case.u, H.A, H.B, r1, D, opts)
        elif kind == "II":
            C = lambda_coupling_case2(H.case.quadratic.v, r1, D)
        elif kind == "III":
            C = lambda_coupling_case3(D, r1, opts.semi_invariants)
        else:
            C = CouplingDesc("TrivialLambda", skipped=["SL2 has no nontrivial abelian quotient"])
        _consistency(q, H, D, C)
        G = assemble_G(H, D, C)
        partial: List[str] = []
        if not H.case.complete:
            partial += H.case.notes
        if H.B is not None and H.B.kind == "unresolved":
            partial.append("B is unresolved")
        if C.partial:
            partial.append(C.partial)
        for desc, name in ((H.A, "A"), (D, "D")):
            if desc is not None and desc.is_finite and desc.order > opts.finite_order_bound:
                partial.append(f"{name} has order {desc.order} above finite_order_bound")
    return PPVReport(a1, a0, r1, r0, q, H, D, C, G, list(notes), partial, opts)


def _consistency(q: RatFunc, H: HDesc, D: MultGroupDesc, C: CouplingDesc) -> None:
    A = H.A
    if C.kind == "MultMultCoupling":
        _check(not is_pi_constant(A) and not is_pi_constant(D),
               "multiplicative coupling with a Pi-constant group")
        _check(not A.within_pm1(), "multiplicative coupling with A inside {1, -1}")
    if C.kind == "AddMultCoupling":
        _check(A.within_pm1() and H.B.kind != "zero" and not is_pi_constant(D),
               "additive coupling outside its range")
    for pr in C.pairs:
        _check(pr.witness is not None, "coupling pair without witness")
    if H.case.kind == "I":
        for u in H.case.solutions:
            _check(verify_riccati(u, q), "Riccati solution failed verification")
