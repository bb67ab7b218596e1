"""Hermite reduction in K = F0(x)."""

from __future__ import annotations

from dataclasses import dataclass

from ..algebra.field import RatFunc
from ..algebra.upoly import UPoly, join_ratfunc, solve_bezout, split_ratfunc, upoly_gcd


@dataclass(frozen=True)
class HermiteResult:
    """``g = Dx(rational_part) + residual`` with ``residual`` proper and squarefree."""

    rational_part: RatFunc
    residual: RatFunc


def integrate_poly(p: UPoly) -> UPoly:
    fld = p.field
    return UPoly(fld, [fld.zero] + [c / (i + 1) for i, c in enumerate(p.c)])


def hermite_reduce(g: RatFunc) -> HermiteResult:
    fld = g.field
    if g.is_zero:
        return HermiteResult(fld.zero, fld.zero)
    A, D = split_ratfunc(g)
    Q, A = A.divmod(D)
    rational = integrate_poly(Q)
    gpart = fld.zero
    Dm = upoly_gcd(D, D.diff())
    Ds = D.exact_quo(Dm)
    # Mack's linear version: each pass lowers pole multiplicities by one
    while Dm.deg() > 0:
        Dm2 = upoly_gcd(Dm, Dm.diff())
        Dms = Dm.exact_quo(Dm2)
        lhs = -(Ds * Dm.diff()).exact_quo(Dm)
        B, C = solve_bezout(lhs, Dms, A)
        A = C - (B.diff() * Ds).exact_quo(Dms)
        gpart = gpart + join_ratfunc(B, Dm)
        Dm = Dm2
    Q2, A = A.divmod(Ds)
    if not Q2.is_zero:
        rational = rational + integrate_poly(Q2)
    residual = join_ratfunc(A, Ds)
    return HermiteResult(gpart + rational.to_ratfunc(), residual)
