"""Integer roots of univariate polynomials whose coefficients lie in Q or F0."""

from __future__ import annotations

from fractions import Fraction
from math import lcm as ilcm
from typing import Dict, List, Sequence

import sympy

from .field import RatFunc
from .upoly import UPoly
from .poly import lcm

_Z = sympy.Symbol("z")


def _zz_poly(coeffs: Sequence[int]) -> sympy.Poly:
    return sympy.Poly(list(reversed(list(coeffs))), _Z, domain="ZZ")


def integer_roots_q(coeffs: Sequence[Fraction]) -> Dict[int, int]:
    """Integer roots with multiplicity of a nonzero polynomial over Q (low degree first)."""
    cs = [Fraction(c) for c in coeffs]
    den = 1
    for c in cs:
        den = ilcm(den, c.denominator)
    ints = [int(c * den) for c in cs]
    p = _zz_poly(ints)
    if p.is_zero:
        raise ValueError("zero polynomial has every integer as a root")
    out: Dict[int, int] = {}
    for f, e in p.factor_list()[1]:
        if f.degree() == 1:
            a, b = f.all_coeffs()
            if b % a == 0:
                r = int(-b // a)
                out[r] = out.get(r, 0) + e
    return out


def factor_q(coeffs: Sequence[Fraction]) -> List[List[Fraction]]:
    """Distinct monic irreducible factors over Q (low degree first)."""
    cs = [Fraction(c) for c in coeffs]
    den = 1
    for c in cs:
        den = ilcm(den, c.denominator)
    p = _zz_poly([int(c * den) for c in cs])
    out = []
    for f, _ in p.factor_list()[1]:
        fc = [Fraction(int(v)) for v in reversed(f.all_coeffs())]
        lead = fc[-1]
        out.append([v / lead for v in fc])
    out.sort(key=lambda f: (len(f), f))
    return out


def integer_roots_param(p: UPoly) -> List[int]:
    """Integer constants k with p(k) = 0 identically in the parameters.

    Writing p = sum_m t^m * p_m(z) with p_m in Z[z], these are the common
    integer roots of all the p_m.
    """
    if p.is_zero:
        raise ValueError("zero polynomial has every integer as a root")
    fld = p.field
    R = fld.ring
    L = R.one
    for c in p.c:
        if not c.is_zero:
            L = lcm(L, c.den)
    pieces: Dict[int, Dict[int, int]] = {}
    for e, c in enumerate(p.c):
        if c.is_zero:
            continue
        num = c.num * L.exact_div(c.den)
        for key, v in num.terms.items():
            pieces.setdefault(key, {})[e] = v
    g = None
    for _, poly in sorted(pieces.items()):
        deg = max(poly)
        sp = _zz_poly([poly.get(i, 0) for i in range(deg + 1)])
        g = sp if g is None else sympy.gcd(g, sp)
        if g.degree() == 0:
            return []
    roots = []
    for f, _ in g.factor_list()[1]:
        if f.degree() == 1:
            a, b = f.all_coeffs()
            if b % a == 0:
                roots.append(int(-b // a))
    return sorted(set(roots))
