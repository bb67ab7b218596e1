"""The differential field K = Q(t1..tm)(x) and its derivations.

A :class:`RatFunc` is stored as a coprime pair of integer polynomials in
``Z[x, t1..tm]`` whose denominator has positive leading coefficient.  Such a
pair is unique for each field element, so equality and hashing are exact.
Elements free of ``x`` play the role of parameter scalars (the field F0).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Optional, Tuple, Union

from .poly import Poly, PolyRing, gcd

Number = Union[int, Fraction]

_FIELDS: Dict[Tuple[str, ...], "FunctionField"] = {}


class FunctionField:
    """Q(params)(x); cached per tuple of parameter names."""

    def __new__(cls, params: Iterable[str] = ()):
        params = tuple(params)
        fld = _FIELDS.get(params)
        if fld is not None:
            return fld
        if len(set(params)) != len(params) or "x" in params:
            raise ValueError(f"bad parameter names {params!r}")
        fld = object.__new__(cls)
        fld.params = params
        fld.m = len(params)
        fld.ring = PolyRing(fld.m + 1)
        fld.zero = RatFunc(fld, fld.ring.zero, fld.ring.one)
        fld.one = RatFunc(fld, fld.ring.one, fld.ring.one)
        _FIELDS[params] = fld
        return fld

    def __reduce__(self):
        return (FunctionField, (self.params,))

    def __repr__(self) -> str:
        return f"FunctionField({list(self.params)!r})"

    @property
    def x(self) -> "RatFunc":
        return RatFunc(self, self.ring.var(0), self.ring.one)

    def t(self, j: int) -> "RatFunc":
        """The parameter t_j, 1-based."""
        if not 1 <= j <= self.m:
            raise IndexError(f"no parameter t{j}")
        return RatFunc(self, self.ring.var(j), self.ring.one)

    def const(self, c: Number) -> "RatFunc":
        c = Fraction(c)
        return RatFunc(self, self.ring.const(c.numerator), self.ring.const(c.denominator))

    def from_polys(self, num: Poly, den: Poly) -> "RatFunc":
        return normalize(self, num, den)

    def coerce(self, v) -> "RatFunc":
        if isinstance(v, RatFunc):
            if v.field is not self:
                raise ValueError("elements of different fields")
            return v
        if isinstance(v, (int, Fraction)):
            return self.const(v)
        raise TypeError(f"cannot coerce {type(v).__name__} into {self!r}")


def normalize(field: FunctionField, num: Poly, den: Poly) -> "RatFunc":
    """Canonical coprime form of ``num/den``."""
    if den.is_zero:
        raise ZeroDivisionError("division by zero")
    if num.is_zero:
        return field.zero
    g = gcd(num, den)
    if not (g.is_const and g.const_value() == 1):
        num = num.exact_div(g)
        den = den.exact_div(g)
    if den.lc() < 0:
        num, den = -num, -den
    return RatFunc(field, num, den)


class RatFunc:
    """Immutable element of K in canonical form.  Use the field to build one."""

    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, field: FunctionField, num: Poly, den: Poly):
        self.field = field
        self.num = num
        self.den = den
        self._hash = None

    # -- predicates -----------------------------------------------------------
    def __bool__(self) -> bool:
        return not self.num.is_zero

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_one(self) -> bool:
        return self.num == self.den

    @property
    def has_x(self) -> bool:
        return self.num.has_var(0) or self.den.has_var(0)

    @property
    def is_param(self) -> bool:
        """True for elements of F0 (no x)."""
        return not self.has_x

    @property
    def is_rational(self) -> bool:
        """True for elements of Q."""
        return self.num.is_const and self.den.is_const

    def to_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("not a rational constant")
        return Fraction(self.num.const_value(), self.den.const_value())

    @property
    def is_polynomial(self) -> bool:
        return self.den.is_const

    def __eq__(self, other) -> bool:
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return self.num == c.numerator and self.den == c.denominator
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other) -> "RatFunc":
        o = self.field.coerce(other)
        if self.is_zero:
            return o
        if o.is_zero:
            return self
        a, b, c, d = self.num, self.den, o.num, o.den
        if b == d:
            return normalize(self.field, a + c, b)
        if b.is_const and d.is_const:
            return normalize(self.field, a * d + c * b, b * d)
        g = gcd(b, d)
        if g.is_const and g.const_value() == 1:
            n = a * d + c * b
            den = b * d
            if n.is_zero:
                return self.field.zero
            if den.lc() < 0:
                n, den = -n, -den
            return RatFunc(self.field, n, den)
        b1 = b.exact_div(g)
        d1 = d.exact_div(g)
        n = a * d1 + c * b1
        if n.is_zero:
            return self.field.zero
        h = gcd(n, g)
        if not (h.is_const and h.const_value() == 1):
            n = n.exact_div(h)
            g = g.exact_div(h)
        den = b1 * d1 * g
        if den.lc() < 0:
            n, den = -n, -den
        return RatFunc(self.field, n, den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(self.field, -self.num, self.den)

    def __sub__(self, other) -> "RatFunc":
        return self + (-self.field.coerce(other))

    def __rsub__(self, other) -> "RatFunc":
        return self.field.coerce(other) - self

    def __mul__(self, other) -> "RatFunc":
        o = self.field.coerce(other)
        if self.is_zero or o.is_zero:
            return self.field.zero
        a, b, c, d = self.num, self.den, o.num, o.den
        g1 = gcd(a, d)
        g2 = gcd(c, b)
        if not (g1.is_const and g1.const_value() == 1):
            a, d = a.exact_div(g1), d.exact_div(g1)
        if not (g2.is_const and g2.const_value() == 1):
            c, b = c.exact_div(g2), b.exact_div(g2)
        n, den = a * c, b * d
        if den.lc() < 0:
            n, den = -n, -den
        return RatFunc(self.field, n, den)

    __rmul__ = __mul__

    def inv(self) -> "RatFunc":
        if self.is_zero:
            raise ZeroDivisionError("division by zero")
        n, d = self.den, self.num
        if d.lc() < 0:
            n, d = -n, -d
        return RatFunc(self.field, n, d)

    def __truediv__(self, other) -> "RatFunc":
        return self * self.field.coerce(other).inv()

    def __rtruediv__(self, other) -> "RatFunc":
        return self.field.coerce(other) * self.inv()

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            return self.inv() ** (-n)
        # coprime pairs stay coprime under powers
        num, den = self.num ** n, self.den ** n
        return RatFunc(self.field, num, den)

    # -- derivations ------------------------------------------------------------
    def diff_var(self, i: int) -> "RatFunc":
        """Partial derivative with respect to ring variable i (0 is x)."""
        n, d = self.num, self.den
        dn = n.diff(i)
        dd = d.diff(i)
        if dd.is_zero:
            if dn.is_zero:
                return self.field.zero
            return normalize(self.field, dn, d)
        # d/(gcd(d, d')) keeps the denominator small before the final reduction
        g = gcd(d, dd)
        d1 = d.exact_div(g)
        top = dn * d1 - n * dd.exact_div(g)
        return normalize(self.field, top, d1 * d)

    def dx(self) -> "RatFunc":
        return self.diff_var(0)

    def dt(self, j: int) -> "RatFunc":
        return self.diff_var(j)

    def derive(self, d: "Derivation") -> "RatFunc":
        return d.apply(self)

    def __repr__(self) -> str:
        from ..io.render import render_ratfunc

        return f"RatFunc({render_ratfunc(self)})"

    def __str__(self) -> str:
        from ..io.render import render_ratfunc

        return render_ratfunc(self)


@dataclass(frozen=True)
class Derivation:
    """``MainX``, ``Param(j)`` or an F0-combination of the parametric derivations."""

    kind: str
    index: int = 0
    coeffs: Tuple[RatFunc, ...] = ()

    @staticmethod
    def main_x() -> "Derivation":
        return Derivation("x")

    @staticmethod
    def param(j: int) -> "Derivation":
        if j < 1:
            raise ValueError("parameter index is 1-based")
        return Derivation("param", j)

    @staticmethod
    def combo(coeffs: Iterable[RatFunc]) -> "Derivation":
        cs = tuple(coeffs)
        if not cs or all(c.is_zero for c in cs):
            raise ValueError("combination of derivations must be nonzero")
        if any(c.has_x for c in cs):
            raise ValueError("combination coefficients must be free of x")
        return Derivation("combo", 0, cs)

    def apply(self, f: RatFunc) -> RatFunc:
        if self.kind == "x":
            return f.dx()
        if self.kind == "param":
            if self.index > f.field.m:
                raise IndexError(f"no parameter t{self.index}")
            return f.dt(self.index)
        acc = f.field.zero
        for j, c in enumerate(self.coeffs, start=1):
            if not c.is_zero:
                acc = acc + c * f.dt(j)
        return acc

    def __str__(self) -> str:
        if self.kind == "x":
            return "Dx"
        if self.kind == "param":
            return f"D{self.index}"
        parts = [f"({c})*D{j}" for j, c in enumerate(self.coeffs, 1) if not c.is_zero]
        return " + ".join(parts)


def derive(f: RatFunc, d: Derivation) -> RatFunc:
    return d.apply(f)


def common_field(*values) -> Optional[FunctionField]:
    for v in values:
        if isinstance(v, RatFunc):
            return v.field
    return None
