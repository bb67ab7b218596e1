"""Univariate polynomials with coefficients in F0 = Q(t1..tm).

Coefficients are x-free :class:`RatFunc` values, stored low degree first with
no trailing zeros.  The indeterminate is ``x`` when converting to and from
:class:`RatFunc`; the same class also serves for polynomials in an auxiliary
variable such as the residue variable ``z``.
"""

from __future__ import annotations

from typing import List, Sequence, Tuple

from .field import FunctionField, RatFunc, normalize
from .poly import Poly, lcm


class UPoly:
    __slots__ = ("field", "c")

    def __init__(self, field: FunctionField, coeffs: Sequence[RatFunc]):
        c = list(coeffs)
        while c and c[-1].is_zero:
            c.pop()
        self.field = field
        self.c = tuple(c)

    # -- constructors -----------------------------------------------------------
    @classmethod
    def zero(cls, field: FunctionField) -> "UPoly":
        return cls(field, ())

    @classmethod
    def one(cls, field: FunctionField) -> "UPoly":
        return cls(field, (field.one,))

    @classmethod
    def const(cls, field: FunctionField, c) -> "UPoly":
        return cls(field, (field.coerce(c),))

    @classmethod
    def gen(cls, field: FunctionField) -> "UPoly":
        return cls(field, (field.zero, field.one))

    @classmethod
    def from_poly(cls, field: FunctionField, p: Poly) -> "UPoly":
        """A polynomial in Z[x, t] viewed in F0[x]."""
        parts = p.coeffs_in(0)
        if not parts:
            return cls.zero(field)
        one = field.ring.one
        out = [field.zero] * (max(parts) + 1)
        for e, c in parts.items():
            out[e] = RatFunc(field, c, one)
        return cls(field, out)

    # -- basic ---------------------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.c

    def deg(self) -> int:
        return len(self.c) - 1

    def lc(self) -> RatFunc:
        return self.c[-1] if self.c else self.field.zero

    def coeff(self, i: int) -> RatFunc:
        return self.c[i] if 0 <= i < len(self.c) else self.field.zero

    def __eq__(self, other) -> bool:
        return isinstance(other, UPoly) and self.c == other.c

    def __hash__(self) -> int:
        return hash(self.c)

    def __repr__(self) -> str:
        return f"UPoly({[str(c) for c in self.c]})"

    def __add__(self, o: "UPoly") -> "UPoly":
        a, b = self.c, o.c
        n = max(len(a), len(b))
        z = self.field.zero
        return UPoly(self.field, [(a[i] if i < len(a) else z) + (b[i] if i < len(b) else z)
                                  for i in range(n)])

    def __neg__(self) -> "UPoly":
        return UPoly(self.field, [-x for x in self.c])

    def __sub__(self, o: "UPoly") -> "UPoly":
        return self + (-o)

    def __mul__(self, o) -> "UPoly":
        if not isinstance(o, UPoly):
            return self.scale(self.field.coerce(o))
        if not self.c or not o.c:
            return UPoly.zero(self.field)
        out = [self.field.zero] * (len(self.c) + len(o.c) - 1)
        for i, a in enumerate(self.c):
            if a.is_zero:
                continue
            for j, b in enumerate(o.c):
                if not b.is_zero:
                    out[i + j] = out[i + j] + a * b
        return UPoly(self.field, out)

    __rmul__ = __mul__

    def scale(self, s: RatFunc) -> "UPoly":
        if s.is_zero:
            return UPoly.zero(self.field)
        if s.is_one:
            return self
        return UPoly(self.field, [x * s for x in self.c])

    def __pow__(self, n: int) -> "UPoly":
        r = UPoly.one(self.field)
        b = self
        while n:
            if n & 1:
                r = r * b
            n >>= 1
            if n:
                b = b * b
        return r

    def shift(self, k: int) -> "UPoly":
        """Multiply by the indeterminate to the power k."""
        if not self.c or k == 0:
            return self
        return UPoly(self.field, [self.field.zero] * k + list(self.c))

    def monic(self) -> "UPoly":
        if not self.c or self.c[-1].is_one:
            return self
        return self.scale(self.c[-1].inv())

    def divmod(self, b: "UPoly") -> Tuple["UPoly", "UPoly"]:
        if b.is_zero:
            raise ZeroDivisionError("division by zero polynomial")
        r = list(self.c)
        db = b.deg()
        if len(r) - 1 < db:
            return UPoly.zero(self.field), self
        inv = b.lc().inv()
        q = [self.field.zero] * (len(r) - db)
        for k in range(len(r) - 1 - db, -1, -1):
            top = r[k + db]
            if top.is_zero:
                continue
            f = top * inv
            q[k] = f
            for i in range(db + 1):
                if not b.c[i].is_zero:
                    r[k + i] = r[k + i] - f * b.c[i]
        return UPoly(self.field, q), UPoly(self.field, r[:db])

    def __mod__(self, b: "UPoly") -> "UPoly":
        return self.divmod(b)[1]

    def __floordiv__(self, b: "UPoly") -> "UPoly":
        return self.divmod(b)[0]

    def exact_quo(self, b: "UPoly") -> "UPoly":
        q, r = self.divmod(b)
        if not r.is_zero:
            raise ArithmeticError("inexact polynomial division")
        return q

    def diff(self) -> "UPoly":
        return UPoly(self.field, [c * i for i, c in enumerate(self.c)][1:])

    def dt(self, j: int) -> "UPoly":
        """Coefficient-wise partial derivative in t_j."""
        return UPoly(self.field, [c.dt(j) for c in self.c])

    def __call__(self, v: RatFunc) -> RatFunc:
        acc = self.field.zero
        for c in reversed(self.c):
            acc = acc * v + c
        return acc

    def eval_upoly(self, v: "UPoly") -> "UPoly":
        acc = UPoly.zero(self.field)
        for c in reversed(self.c):
            acc = acc * v + UPoly(self.field, (c,))
        return acc

    def taylor_shift(self, a: RatFunc) -> "UPoly":
        """p(X + a)."""
        c = list(self.c)
        n = len(c)
        for i in range(n):
            for k in range(n - 2, i - 1, -1):
                c[k] = c[k] + a * c[k + 1]
        return UPoly(self.field, c)

    def is_param_free(self) -> bool:
        return all(x.is_rational for x in self.c)

    # -- conversions -----------------------------------------------------------------
    def to_poly(self) -> Tuple[Poly, Poly]:
        """``(P, L)`` with ``self = P / L``, P in Z[x,t], L in Z[t]."""
        R = self.field.ring
        if not self.c:
            return R.zero, R.one
        L = R.one
        for c in self.c:
            if not c.is_zero:
                L = lcm(L, c.den)
        P = R.zero
        for e, c in enumerate(self.c):
            if not c.is_zero:
                P = P + (c.num * L.exact_div(c.den)).shift_var(0, e)
        return P, L

    def to_ratfunc(self) -> RatFunc:
        P, L = self.to_poly()
        return normalize(self.field, P, L)


# ---------------------------------------------------------------------------
# algorithms
# ---------------------------------------------------------------------------

def split_ratfunc(f: RatFunc) -> Tuple[UPoly, UPoly]:
    """Numerator and monic denominator of ``f`` as elements of F0[x]."""
    fld = f.field
    n = UPoly.from_poly(fld, f.num)
    d = UPoly.from_poly(fld, f.den)
    s = d.lc()
    if not s.is_one:
        inv = s.inv()
        n, d = n.scale(inv), d.scale(inv)
    return n, d


def join_ratfunc(n: UPoly, d: UPoly) -> RatFunc:
    if d.is_zero:
        raise ZeroDivisionError("division by zero")
    N, L1 = n.to_poly()
    D, L2 = d.to_poly()
    return normalize(n.field, N * L2, D * L1)


def upoly_gcd(a: UPoly, b: UPoly) -> UPoly:
    """Monic gcd over F0 (zero if both are zero)."""
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def upoly_xgcd(a: UPoly, b: UPoly) -> Tuple[UPoly, UPoly, UPoly]:
    """``(g, s, t)`` with ``s*a + t*b = g`` monic."""
    fld = a.field
    r0, r1 = a, b
    s0, s1 = UPoly.one(fld), UPoly.zero(fld)
    t0, t1 = UPoly.zero(fld), UPoly.one(fld)
    while not r1.is_zero:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero:
        return r0, s0, t0
    inv = r0.lc().inv()
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def solve_bezout(a: UPoly, b: UPoly, c: UPoly) -> Tuple[UPoly, UPoly]:
    """``(s, t)`` with ``s*a + t*b = c`` and ``deg s < deg b``; needs gcd(a,b) | c."""
    g, s, t = upoly_xgcd(a, b)
    q, r = c.divmod(g)
    if not r.is_zero:
        raise ArithmeticError("right-hand side not in the ideal")
    s, t = s * q, t * q
    if b.deg() > 0:
        k, s = s.divmod(b)
        t = t + k * a
    return s, t


def resultant(a: UPoly, b: UPoly) -> RatFunc:
    fld = a.field
    if a.is_zero or b.is_zero:
        return fld.zero
    acc = fld.one
    while True:
        da, db = a.deg(), b.deg()
        if db == 0:
            return acc * (b.lc() ** da)
        r = a % b
        if r.is_zero:
            return fld.zero
        dr = r.deg()
        f = b.lc() ** (da - dr)
        if (da * db) % 2:
            f = -f
        acc = acc * f
        a, b = b, r


def squarefree_factor(p: UPoly) -> List[Tuple[UPoly, int]]:
    """Yun's algorithm: monic, pairwise coprime squarefree factors, by multiplicity."""
    if p.is_zero:
        raise ValueError("squarefree factorization of zero")
    if p.deg() == 0:
        return []
    f = p.monic()
    df = f.diff()
    a = upoly_gcd(f, df)
    b = f.exact_quo(a)
    c = df.exact_quo(a)
    d = c - b.diff()
    out: List[Tuple[UPoly, int]] = []
    i = 1
    while b.deg() > 0:
        a = upoly_gcd(b, d)
        if a.deg() > 0:
            out.append((a, i))
        b = b.exact_quo(a)
        c = d.exact_quo(a)
        d = c - b.diff()
        i += 1
    return out


def squarefree_part(p: UPoly) -> UPoly:
    if p.deg() <= 0:
        return UPoly.one(p.field)
    return p.monic().exact_quo(upoly_gcd(p, p.diff()))


def interpolate(field: FunctionField, points: Sequence[int], values: Sequence[RatFunc]) -> UPoly:
    """Newton interpolation over F0 at distinct integer nodes."""
    n = len(points)
    coef = list(values)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (points[i] - points[i - j])
    acc = UPoly.zero(field)
    X = UPoly.gen(field)
    for i in range(n - 1, -1, -1):
        acc = acc * (X - UPoly.const(field, points[i])) + UPoly.const(field, coef[i])
    return acc
