"""Pairs (p, q) coupling the data of the unimodular equation with r1."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence

from ..algebra.field import RatFunc
from ..algebra.linalg import in_row_space, reduce_modulo, rref
from ..calculus.exactness import exactness_relation_space, is_exact
from .lindiff import LinDiffPoly, Term, apply_lindiff, family_values, terms_for
from .mult import AddGroupDesc, DEFAULT_MAX_THETA_ORDER


class PreconditionError(ValueError):
    pass


@dataclass
class CouplingPair:
    p: LinDiffPoly
    q: LinDiffPoly
    witness: RatFunc


def _solve_pairs(left: List[RatFunc], pc: List[Term], dr: List[RatFunc], qc: List[Term],
                 p_trivial: Optional[List[List[RatFunc]]]) -> List[List[RatFunc]]:
    """Echelon basis of the exact pairs modulo the trivial ones.

    ``left`` holds the values of the p-columns.  Trivial pairs are (P, 0) for
    P in ``p_trivial`` (computed from ``left`` when None) and (0, Q) for every
    Q with Q(dr) exact.
    """
    fld = (left + dr)[0].field
    n, k = len(pc), len(qc)
    right = family_values(dr, qc)
    ers = exactness_relation_space(left + [-v for v in right])
    if not ers.basis:
        return []
    zero = fld.zero
    trivial: List[List[RatFunc]] = []
    if p_trivial is None:
        p_trivial = exactness_relation_space(left).basis
    trivial += [list(v) + [zero] * k for v in p_trivial]
    trivial += [[zero] * n + list(v) for v in exactness_relation_space(right).basis]
    T, piv = rref(trivial, n + k, zero) if trivial else ([], [])
    rest = []
    for v in ers.basis:
        r = reduce_modulo(v, T, piv)
        if any(r):
            rest.append(r)
    if not rest:
        return []
    return rref(rest, n + k, zero)[0]


def coupling_relations(u: RatFunc, r1: RatFunc,
                       max_theta_order: int = DEFAULT_MAX_THETA_ORDER) -> List[CouplingPair]:
    """Basis of (p, q) with p(Du) - q(Dr1) exact, modulo A-relations x D-relations."""
    fld = u.field
    m = fld.m
    if m == 0:
        return []
    cols = terms_for(m, max_theta_order)
    du = [u.dt(j) for j in range(1, m + 1)]
    dr = [r1.dt(j) for j in range(1, m + 1)]
    left = family_values(du, cols)
    rows = _solve_pairs(left, cols, dr, cols, None)
    a_rel = exactness_relation_space(left).basis
    n = len(cols)
    out = []
    for r in rows:
        p = LinDiffPoly.from_vector(fld, cols, r[:n])
        q = LinDiffPoly.from_vector(fld, cols, r[n:])
        if p.is_zero or (a_rel and in_row_space(r[:n], a_rel, n, fld.zero)):
            raise AssertionError("coupling pair with trivial image in A")
        f = is_exact(apply_lindiff(p, du) - apply_lindiff(q, dr))
        if f is None:
            raise AssertionError("coupling pair failed verification")
        out.append(CouplingPair(p, q, f))
    return out


def coupling_relations_additive(eta2inv: RatFunc, r1: RatFunc, B: AddGroupDesc,
                                max_theta_order: int = DEFAULT_MAX_THETA_ORDER) -> List[CouplingPair]:
    """Basis of (p, q) with p(eta^-2) - q(Dr1) exact, p nontrivial on B."""
    if B.kind == "zero":
        raise PreconditionError("precondition: B ≠ 0")
    fld = eta2inv.field
    m = fld.m
    pc = terms_for(m, max_theta_order, single=True)
    qc = terms_for(m, max_theta_order) if m else []
    dr = [r1.dt(j) for j in range(1, m + 1)]
    left = family_values({0: eta2inv}, pc)
    brel = [p.vector(pc) for p in B.relations] if B.kind == "relations" else []
    if m == 0:
        out = []
        f = is_exact(eta2inv)
        if f is not None:
            out.append(CouplingPair(LinDiffPoly.var(fld, 0), LinDiffPoly(fld), f))
        return out
    rows = _solve_pairs(left, pc, dr, qc, brel)
    n = len(pc)
    out = []
    for r in rows:
        p = LinDiffPoly.from_vector(fld, pc, r[:n])
        q = LinDiffPoly.from_vector(fld, qc, r[n:])
        if p.is_zero or (brel and in_row_space(r[:n], brel, n, fld.zero)):
            raise AssertionError("coupling pair with trivial image in B")
        f = is_exact(apply_lindiff(p, {0: eta2inv}) - apply_lindiff(q, dr))
        if f is None:
            raise AssertionError("coupling pair failed verification")
        out.append(CouplingPair(p, q, f))
    return out
