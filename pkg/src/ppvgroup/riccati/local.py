"""Local data of q at its poles and at infinity, as used by Kovacic's algorithm."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import List, Optional, Tuple

from ..algebra.bridge import factor_poly, sqrt_ratfunc
from ..algebra.field import RatFunc
from ..algebra.upoly import UPoly, join_ratfunc, split_ratfunc, upoly_xgcd


def _series_div(num: List[RatFunc], den: List[RatFunc], n: int) -> List[RatFunc]:
    fld = den[0].field
    inv0 = den[0].inv()
    out: List[RatFunc] = []
    for k in range(n):
        acc = num[k] if k < len(num) else fld.zero
        for i in range(1, min(k, len(den) - 1) + 1):
            if not den[i].is_zero and not out[k - i].is_zero:
                acc = acc - den[i] * out[k - i]
        out.append(acc * inv0)
    return out


def _low(p: UPoly) -> int:
    for i, c in enumerate(p.c):
        if not c.is_zero:
            return i
    return -1


def laurent_at(q: RatFunc, c: RatFunc, n: int) -> Tuple[int, List[RatFunc]]:
    """``(e, [l_0, ..., l_{n-1}])`` with q = sum l_k (x-c)^(e+k)."""
    num, den = split_ratfunc(q)
    N = num.taylor_shift(c)
    D = den.taylor_shift(c)
    vn, vd = _low(N), _low(D)
    return vn - vd, _series_div(list(N.c[vn:]), list(D.c[vd:]), n)


def laurent_at_infinity(q: RatFunc, n: int) -> Tuple[int, List[RatFunc]]:
    """``(e, [l_0, ...])`` with q = sum l_k x^(e-k)."""
    num, den = split_ratfunc(q)
    return num.deg() - den.deg(), _series_div(list(reversed(num.c)), list(reversed(den.c)), n)


def series_sqrt(a: List[RatFunc]) -> Optional[List[RatFunc]]:
    s0 = sqrt_ratfunc(a[0])
    if s0 is None:
        return None
    out = [s0]
    inv = (s0 * 2).inv()
    for k in range(1, len(a)):
        acc = a[k]
        for i in range(1, k):
            acc = acc - out[i] * out[k - i]
        out.append(acc * inv)
    return out


@dataclass
class Pole:
    """A pole of q: an irreducible factor p of its denominator, with multiplicity."""

    factor: UPoly
    order: int
    root: Optional[RatFunc] = None
    # coefficient of (x-c)^-2 when it is the same element of F0 at every root
    b: Optional[RatFunc] = None

    @property
    def degree(self) -> int:
        return self.factor.deg()

    def log_part(self) -> RatFunc:
        """sum over the roots c of 1/(x - c), i.e. p'/p."""
        return join_ratfunc(self.factor.diff(), self.factor)


@dataclass
class LocalData:
    q: RatFunc
    poles: List[Pole]
    order_inf: Optional[int]  # None when q = 0
    notes: List[str] = dc_field(default_factory=list)

    def pole_orders(self) -> List[int]:
        return [p.order for p in self.poles]


def _uniform_b(q: RatFunc, p: UPoly) -> Optional[RatFunc]:
    """(q p^2 / p'^2) at the roots of p when it is one element of F0."""
    fld = q.field
    pp = p.to_ratfunc()
    Q = q * pp * pp
    n, d = split_ratfunc(Q)
    dp = p.diff()
    denom = (d * dp * dp) % p
    g, inv, _ = upoly_xgcd(denom, p)
    if g.deg() != 0:
        return None
    val = (n * inv) % p
    if val.deg() > 0:
        return None
    return val.coeff(0)


def local_data(q: RatFunc) -> LocalData:
    fld = q.field
    poles: List[Pole] = []
    if q.is_zero:
        return LocalData(q, [], None)
    for f, e in factor_poly(q.den, fld):
        if not f.has_var(0):
            continue
        up = UPoly.from_poly(fld, f).monic()
        pole = Pole(up, e)
        if up.deg() == 1:
            pole.root = -up.coeff(0)
        if e == 2:
            if pole.root is not None:
                pole.b = laurent_at(q, pole.root, 1)[1][0]
            else:
                pole.b = _uniform_b(q, up)
        poles.append(pole)
    num, den = split_ratfunc(q)
    return LocalData(q, poles, den.deg() - num.deg())
