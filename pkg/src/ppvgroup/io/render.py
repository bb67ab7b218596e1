"""Plain-text rendering of field elements and linear differential polynomials."""

from __future__ import annotations

from fractions import Fraction

from ..algebra.poly import Poly


def _names(field):
    return ("x",) + tuple(field.params)


def render_poly(p: Poly, names) -> str:
    if p.is_zero:
        return "0"
    parts = []
    for exps, c in p.items():
        mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, exps) if e)
        if not mono:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


def _is_atom(p: Poly) -> bool:
    """Single term with coefficient +-1 or a bare nonnegative integer."""
    if len(p.terms) != 1:
        return False
    (k, c), = p.terms.items()
    if k == 0:
        return c > 0
    return c == 1 and sum(1 for e in p.ring.unpack(k) if e) == 1


def render_ratfunc(f) -> str:
    names = _names(f.field)
    num = render_poly(f.num, names)
    if f.den.is_const and f.den.const_value() == 1:
        return num
    den = render_poly(f.den, names)
    if len(f.num.terms) > 1:
        num = f"({num})"
    if not _is_atom(f.den):
        den = f"({den})"
    return f"{num}/{den}"


def render_fraction(c: Fraction) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
