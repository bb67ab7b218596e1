"""Rothstein-Trager residues and membership in the logarithmic derivatives of K."""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Tuple

from .. import assumptions
from ..algebra.field import RatFunc
from ..algebra.introots import integer_roots_q
from ..algebra.upoly import (UPoly, interpolate, join_ratfunc, resultant, split_ratfunc,
                             upoly_gcd)


class NotReducedError(ValueError):
    pass


def rt_resultant(a: UPoly, d: UPoly) -> UPoly:
    """res_x(d, a - z*d') as a polynomial in z, by evaluation and interpolation."""
    fld = a.field
    dd = d.diff()
    n = d.deg()
    pts = list(range(n + 1))
    vals = [resultant(d, a - dd.scale(fld.const(z))) for z in pts]
    return interpolate(fld, pts, vals)


def _proper_squarefree(r: RatFunc) -> Tuple[UPoly, UPoly]:
    a, d = split_ratfunc(r)
    if a.deg() >= d.deg() and not a.is_zero:
        raise NotReducedError("call hermite_reduce first")
    if upoly_gcd(d, d.diff()).deg() > 0:
        raise NotReducedError("call hermite_reduce first")
    return a, d


def residue_data(r: RatFunc) -> List[Tuple[UPoly, UPoly]]:
    """``[(d, R(z))]`` where the roots of R are the residues of r at the roots of d."""
    if r.is_zero:
        return []
    a, d = _proper_squarefree(r)
    return [(d, rt_resultant(a, d))]


def log_derivative_witness(a: UPoly, d: UPoly) -> Optional[RatFunc]:
    """For proper a/d with squarefree monic d: f with f'/f = a/d, or None."""
    fld = a.field
    if d.deg() <= 0:
        return fld.one if a.is_zero else None
    R = rt_resultant(a, d).monic()
    if not all(c.is_rational for c in R.c):
        if R.deg() == 1:
            assumptions.note(f"{-R.c[0]} is not an integer")
        return None
    roots = integer_roots_q([c.to_fraction() for c in R.c])
    if sum(roots.values()) != R.deg():
        return None
    dd = d.diff()
    num = UPoly.one(fld)
    den = UPoly.one(fld)
    for c in sorted(roots):
        if c == 0:
            continue
        piece = upoly_gcd(d, a - dd.scale(fld.const(c)))
        if c > 0:
            num = num * piece ** c
        else:
            den = den * piece ** (-c)
    return join_ratfunc(num, den)


def is_log_derivative(g: RatFunc) -> Optional[RatFunc]:
    """f in K with Dx(f)/f = g, or None when no such f exists."""
    fld = g.field
    if g.is_zero:
        return fld.one
    a, d = split_ratfunc(g)
    if a.deg() >= d.deg():
        return None
    if upoly_gcd(d, d.diff()).deg() > 0:
        return None
    f = log_derivative_witness(a, d)
    if f is not None and f.dx() != g * f:
        raise AssertionError("log-derivative witness failed verification")
    return f


def residues_rational(r: RatFunc) -> Optional[List[Fraction]]:
    """All residues when they are rational numbers, else None."""
    if r.is_zero:
        return []
    a, d = _proper_squarefree(r)
    R = rt_resultant(a, d).monic()
    if not all(c.is_rational for c in R.c):
        return None
    from ..algebra.introots import factor_q

    out: List[Fraction] = []
    for f in factor_q([c.to_fraction() for c in R.c]):
        if len(f) != 2:
            return None
        out.append(-f[0])
    return sorted(out)
