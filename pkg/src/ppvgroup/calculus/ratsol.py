"""Rational solutions of linear ODEs with coefficients in K.

:func:`rational_solution_family` solves ``L(f) = sum_j c_j * rhs_j`` jointly
for ``f`` in K and constants ``c`` in F0, which is what the isoconstancy test
needs; :func:`rational_solutions` is the single right-hand side case.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from ..algebra.diffop import DiffOperator, op_apply, op_compose
from ..algebra.field import FunctionField, RatFunc
from ..algebra.introots import integer_roots_param
from ..algebra.linalg import nullspace
from ..algebra.poly import lcm
from ..algebra.upoly import (UPoly, interpolate, join_ratfunc, resultant, split_ratfunc,
                             squarefree_part, upoly_gcd)


def _clear(field: FunctionField, values: Sequence[RatFunc]) -> List[UPoly]:
    R = field.ring
    L = R.one
    for v in values:
        if not v.is_zero:
            L = lcm(L, v.den)
    return [UPoly.from_poly(field, v.num * L.exact_div(v.den)) if not v.is_zero
            else UPoly.zero(field) for v in values]


def _refine(pieces: List[UPoly], p: UPoly) -> List[UPoly]:
    """Split pieces until p has the same valuation at every root of each piece."""
    if p.is_zero:
        return pieces
    out: List[UPoly] = []
    stack = list(pieces)
    while stack:
        P = stack.pop()
        q = p
        split = False
        while True:
            g = upoly_gcd(P, q)
            if g.deg() <= 0:
                break
            if g.deg() < P.deg():
                stack.append(g)
                stack.append(P.exact_quo(g))
                split = True
                break
            q = q.exact_quo(P)
        if not split:
            out.append(P)
    return out


def _valuation(p: UPoly, P: UPoly) -> int:
    v = 0
    while True:
        q, r = p.divmod(P)
        if not r.is_zero:
            return v
        p = q
        v += 1


def _falling(mu: int, i: int) -> int:
    out = 1
    for k in range(i):
        out *= mu - k
    return out


def _indicial_norm(coeffs: Sequence[UPoly], P: UPoly) -> Tuple[UPoly, int]:
    """Norm over the roots of P of the indicial polynomial, and the shift s."""
    fld = P.field
    vals = [(_valuation(a, P) if not a.is_zero else None) for a in coeffs]
    s = max(i - v for i, v in enumerate(vals) if v is not None)
    dP = P.diff()
    terms = []
    for i, (a, v) in enumerate(zip(coeffs, vals)):
        if v is not None and i - v == s:
            b = a
            for _ in range(v):
                b = b.exact_quo(P)
            terms.append((i, (b * dP ** v) % P))
    top = max(i for i, _ in terms)
    npts = P.deg() * top + 1
    pts = list(range(npts))
    values = []
    for mu in pts:
        acc = UPoly.zero(fld)
        for i, c in terms:
            f = _falling(mu, i)
            if f:
                acc = acc + c.scale(fld.const(f))
        values.append(resultant(P, acc))
    return interpolate(fld, pts, values), s


def _indicial_infinity(coeffs: Sequence[UPoly]) -> Tuple[UPoly, int]:
    fld = coeffs[0].field if coeffs else None
    s = max(a.deg() - k for k, a in enumerate(coeffs) if not a.is_zero)
    # sum over the dominant terms of lc * d(d-1)...(d-k+1), as a polynomial in d
    acc = UPoly.zero(fld)
    X = UPoly.gen(fld)
    for k, a in enumerate(coeffs):
        if not a.is_zero and a.deg() - k == s:
            term = UPoly.const(fld, a.lc())
            for j in range(k):
                term = term * (X - UPoly.const(fld, j))
            acc = acc + term
    return acc, s


def denominator_bound(L: DiffOperator, rhss: Sequence[RatFunc]) -> UPoly:
    """A monic polynomial divisible by the denominator of every solution."""
    fld = L.field
    vals = _clear(fld, list(L.coeffs) + list(rhss))
    a = vals[:len(L.coeffs)]
    rs = vals[len(L.coeffs):]
    n = L.order
    rdens = []
    for r in rhss:
        if not r.is_zero:
            rdens.append(split_ratfunc(r)[1])
    sing = a[n]
    for d in rdens:
        sing = sing * d
    S = squarefree_part(sing)
    if S.deg() <= 0:
        return UPoly.one(fld)
    pieces = [S]
    for p in a:
        pieces = _refine(pieces, p)
    for d in rdens:
        pieces = _refine(pieces, d)
    Dn = UPoly.one(fld)
    for P in sorted(pieces, key=lambda p: (p.deg(), repr(p))):
        norm, s = _indicial_norm(a, P)
        cands = [mu for mu in integer_roots_param(norm)]
        for d in rdens:
            cands.append(s - _valuation(d, P))
        low = min(cands) if cands else 0
        if low < 0:
            Dn = Dn * P ** (-low)
    return Dn


@dataclass(frozen=True)
class FamilySolution:
    """One basis element: ``L(f) = sum_j c[j] * rhs_j``."""

    c: Tuple[RatFunc, ...]
    f: RatFunc


def rational_solution_family(L: DiffOperator, rhss: Sequence[RatFunc]) -> List[FamilySolution]:
    """Basis (reduced echelon in the c-then-f coordinates) of all (c, f)."""
    fld = L.field
    if L.is_zero:
        raise ValueError("zero operator")
    rhss = list(rhss)
    Dn = denominator_bound(L, rhss)
    inv_den = join_ratfunc(UPoly.one(fld), Dn)
    Lt = op_compose(L, DiffOperator(fld, [inv_den]))
    vals = _clear(fld, list(Lt.coeffs) + rhss)
    b = vals[:len(Lt.coeffs)]
    rs = vals[len(Lt.coeffs):]
    ind, s = _indicial_infinity(b)
    cands = [d for d in integer_roots_param(ind) if d >= 0]
    for r in rs:
        if not r.is_zero:
            cands.append(r.deg() - s)
    dmax = max(cands) if cands else -1
    r = len(rs)
    cols: List[UPoly] = [-x for x in rs]
    for d in range(dmax + 1):
        acc = UPoly.zero(fld)
        for k, bk in enumerate(b):
            ff = _falling(d, k)
            if ff and not bk.is_zero:
                acc = acc + (bk * ff).shift(d - k)
        cols.append(acc)
    ncols = len(cols)
    top = max((c.deg() for c in cols), default=-1)
    rows = [[c.coeff(e) for c in cols] for e in range(top + 1)]
    if rows:
        basis = nullspace(rows, ncols, fld.zero)
    else:
        basis = [[fld.one if i == j else fld.zero for j in range(ncols)] for i in range(ncols)]
    out = []
    for v in basis:
        F = UPoly(fld, v[r:])
        f = join_ratfunc(F, Dn)
        c = tuple(v[:r])
        lhs = op_apply(L, f)
        rhs = fld.zero
        for cj, rj in zip(c, rhss):
            if not cj.is_zero:
                rhs = rhs + cj * rj
        if lhs != rhs:
            raise AssertionError("rational solution failed verification")
        out.append(FamilySolution(c, f))
    return out


@dataclass(frozen=True)
class RationalSolutions:
    """``particular + span(kernel)``; ``particular`` is None when there is none."""

    particular: Optional[RatFunc]
    kernel: List[RatFunc]


def rational_solutions(L: DiffOperator, rhs: RatFunc) -> RationalSolutions:
    fam = rational_solution_family(L, [rhs])
    part = None
    kern = []
    for s in fam:
        if s.c[0].is_zero:
            kern.append(s.f)
        else:
            part = s.f / s.c[0]
    if rhs.is_zero:
        part = L.field.zero
    return RationalSolutions(part, kern)
