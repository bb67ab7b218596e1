"""Membership in Dx(K) and the F0-space of exact linear combinations."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence

from ..algebra.field import RatFunc
from ..algebra.linalg import nullspace
from ..algebra.poly import lcm
from ..algebra.upoly import UPoly
from .hermite import hermite_reduce


def is_exact(g: RatFunc) -> Optional[RatFunc]:
    """f with Dx(f) = g, or None."""
    h = hermite_reduce(g)
    if not h.residual.is_zero:
        return None
    if h.rational_part.dx() != g:
        raise AssertionError("exactness witness failed verification")
    return h.rational_part


@dataclass(frozen=True)
class ExactnessRelationSpace:
    basis: List[List[RatFunc]]
    witnesses: List[RatFunc]

    @property
    def dim(self) -> int:
        return len(self.basis)


def exactness_relation_space(gs: Sequence[RatFunc]) -> ExactnessRelationSpace:
    """Basis over F0 of ``{c : sum c_i g_i in Dx(K)}`` with witnesses."""
    gs = list(gs)
    if not gs:
        raise ValueError("empty family")
    fld = gs[0].field
    n = len(gs)
    reds = [hermite_reduce(g) for g in gs]
    # residuals are F0-linear in g; compare them over a common denominator
    R = fld.ring
    S = R.one
    for h in reds:
        if not h.residual.is_zero:
            S = lcm(S, h.residual.den)
    cols = []
    for h in reds:
        r = h.residual
        if r.is_zero:
            cols.append({})
            continue
        N = r.num * S.exact_div(r.den)
        cols.append({e: c for e, c in N.coeffs_in(0).items()})
    degs = sorted({e for col in cols for e in col})
    one = R.one
    rows = []
    for e in degs:
        rows.append([RatFunc(fld, col[e], one) if e in col else fld.zero for col in cols])
    basis = nullspace(rows, n, fld.zero) if rows else _identity(fld, n)
    witnesses = []
    for c in basis:
        w = fld.zero
        target = fld.zero
        for ci, h, g in zip(c, reds, gs):
            if not ci.is_zero:
                w = w + ci * h.rational_part
                target = target + ci * g
        if w.dx() != target:
            raise AssertionError("exactness relation witness failed verification")
        witnesses.append(w)
    return ExactnessRelationSpace(basis, witnesses)


def _identity(fld, n: int) -> List[List[RatFunc]]:
    return [[fld.one if i == j else fld.zero for j in range(n)] for i in range(n)]
