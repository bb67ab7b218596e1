"""Conversions to and from sympy, used for factorization over Q[x, t]."""

from __future__ import annotations

from typing import List, Optional, Tuple

import sympy

from .field import FunctionField, RatFunc
from .poly import Poly, sqrt_poly


def symbols(field: FunctionField):
    return sympy.symbols(("x",) + field.params) if field.m else (sympy.Symbol("x"),)


def to_sympy_poly(p: Poly, field: FunctionField) -> sympy.Poly:
    gens = symbols(field)
    return sympy.Poly.from_dict({e: c for e, c in p.items()}, *gens, domain="ZZ")


def from_sympy_poly(sp: sympy.Poly, field: FunctionField) -> Poly:
    return field.ring.from_exps({tuple(int(e) for e in k): int(v) for k, v in sp.as_dict().items()})


def to_sympy(f: RatFunc):
    gens = symbols(f.field)
    return to_sympy_poly(f.num, f.field).as_expr() / to_sympy_poly(f.den, f.field).as_expr()


def from_sympy(expr, field: FunctionField) -> RatFunc:
    gens = symbols(field)
    num, den = sympy.fraction(sympy.together(sympy.sympify(expr)))
    pn = sympy.Poly(num, *gens, domain="QQ")
    pd = sympy.Poly(den, *gens, domain="QQ")
    cn, pn = pn.clear_denoms(convert=True)
    cd, pd = pd.clear_denoms(convert=True)
    n = from_sympy_poly(pn, field)
    d = from_sympy_poly(pd, field)
    return field.from_polys(n * int(cd), d * int(cn))


def factor_poly(p: Poly, field: FunctionField) -> List[Tuple[Poly, int]]:
    """Irreducible factors over Q (primitive, positive leading coefficient)."""
    if p.is_const:
        return []
    _, facs = to_sympy_poly(p, field).factor_list()
    out = []
    for f, e in facs:
        q = from_sympy_poly(f, field)
        if q.lc() < 0:
            q = -q
        out.append((q, int(e)))
    out.sort(key=lambda fe: (fe[0].degree(0), fe[0].total_degree(), sorted(fe[0].terms.items())))
    return out


def sqrt_ratfunc(f: RatFunc) -> Optional[RatFunc]:
    """A square root in K, or None.  The sign is fixed by the leading coefficient."""
    if f.is_zero:
        return f
    n = sqrt_poly(f.num)
    if n is None:
        return None
    d = sqrt_poly(f.den)
    if d is None:
        return None
    return RatFunc(f.field, n, d)
