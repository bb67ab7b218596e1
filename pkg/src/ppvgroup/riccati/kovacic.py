"""Kovacic's algorithm for Dx^2 y = q y over K = F0(x).

Parameters are treated generically: an exponent or degree that depends on the
parameters is never an integer, and each such use is recorded through
:mod:`ppvgroup.assumptions`.  Poles at irreducible factors of degree two or
more are handled when the local data is the same element of F0 at every
root; otherwise the affected search is marked incomplete.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

from .. import assumptions
from ..algebra.bridge import sqrt_ratfunc
from ..algebra.diffop import DiffOperator, op_apply
from ..algebra.field import FunctionField, RatFunc
from ..algebra.linalg import nullspace
from ..algebra.poly import lcm
from ..algebra.upoly import UPoly
from .local import LocalData, Pole, laurent_at, laurent_at_infinity, local_data, series_sqrt


def verify_riccati(u: RatFunc, q: RatFunc) -> bool:
    return u.dx() + u * u == q


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

def polynomial_solutions(L: DiffOperator, d: int) -> List[UPoly]:
    """Basis of the polynomials P of degree <= d with L(P) = 0."""
    fld = L.field
    if d < 0:
        return []
    X = fld.x
    cols = [op_apply(L, X ** k) for k in range(d + 1)]
    return _kernel_polys(fld, cols, d)


def _kernel_polys(fld: FunctionField, cols: Sequence[RatFunc], d: int) -> List[UPoly]:
    R = fld.ring
    den = R.one
    for c in cols:
        if not c.is_zero:
            den = lcm(den, c.den)
    ups = [UPoly.from_poly(fld, c.num * den.exact_div(c.den)) if not c.is_zero
           else UPoly.zero(fld) for c in cols]
    top = max((u.deg() for u in ups), default=-1)
    rows = [[u.coeff(e) for u in ups] for e in range(top + 1)]
    if not rows:
        basis = [[fld.one if i == j else fld.zero for j in range(d + 1)] for i in range(d + 1)]
    else:
        basis = nullspace(rows, d + 1, fld.zero)
    return [UPoly(fld, v) for v in basis]


def _as_int(v: RatFunc, what: str) -> Optional[int]:
    """The integer value of v, or None; parameter dependence is a generic non-integer."""
    if not v.is_rational:
        assumptions.note(f"{v} is not an integer ({what})")
        return None
    f = v.to_fraction()
    return f.numerator if f.denominator == 1 else None


def _sqrt_disc(b: RatFunc) -> Optional[RatFunc]:
    return sqrt_ratfunc(b * 4 + 1)


# ---------------------------------------------------------------------------
# case 1
# ---------------------------------------------------------------------------

@dataclass
class Case1Result:
    solutions: List[RatFunc]
    family_dim: int = 0
    complete: bool = True
    notes: List[str] = dc_field(default_factory=list)


def _pole_options_case1(q: RatFunc, p: Pole, notes: List[str]):
    """List of (omega part, alpha) for one pole; None if no rational solution can exist.

    Raises LookupError when the pole shape is outside what is handled.
    """
    fld = q.field
    lp = p.log_part()
    if p.order == 1:
        return [(lp, fld.one)]
    if p.order % 2:
        return None
    if p.order == 2:
        if p.b is None:
            raise LookupError("double pole with root-dependent leading coefficient")
        sq = _sqrt_disc(p.b)
        if sq is None:
            if p.degree > 1:
                raise LookupError("double pole exponent outside F0")
            return None
        half = Fraction(1, 2)
        opts = [(lp * (sq * half + half), sq * half + half),
                (lp * (-sq * half + half), -sq * half + half)]
        return opts
    if p.root is None:
        raise LookupError("higher-order pole at an irreducible factor of degree > 1")
    nu = p.order // 2
    c = p.root
    e, ell = laurent_at(q, c, nu + 1)
    sig = series_sqrt(ell[:nu])
    if sig is None:
        return None
    tau = fld.x - c
    part = fld.zero
    for k in range(nu - 1):
        part = part + sig[k] * tau ** (-nu + k)
    sq_coeff = fld.zero
    for i in range(nu - 1):
        j = nu - 1 - i
        if 0 <= j <= nu - 2:
            sq_coeff = sq_coeff + sig[i] * sig[j]
    b = ell[nu - 1] - sq_coeff
    a = sig[0]
    ap = (b / a + nu) / 2
    am = (-b / a + nu) / 2
    lin = tau.inv()
    return [(part + lin * ap, ap), (-part + lin * am, am)]


def _inf_options_case1(q: RatFunc, ld: LocalData):
    fld = q.field
    o = ld.order_inf
    if o is None or o > 2:
        return [(fld.zero, fld.zero), (fld.zero, fld.one)]
    if o == 2:
        b = laurent_at_infinity(q, 1)[1][0]
        sq = _sqrt_disc(b)
        if sq is None:
            return None
        half = Fraction(1, 2)
        return [(fld.zero, sq * half + half), (fld.zero, -sq * half + half)]
    if o % 2:
        return None
    nu = -o // 2
    e, ell = laurent_at_infinity(q, nu + 2)
    sig = series_sqrt(ell[:nu + 1])
    if sig is None:
        return None
    X = fld.x
    part = fld.zero
    for k in range(nu + 1):
        part = part + sig[k] * X ** (nu - k)
    sq_coeff = fld.zero
    for i in range(nu + 1):
        j = nu + 1 - i
        if 0 <= j <= nu:
            sq_coeff = sq_coeff + sig[i] * sig[j]
    b = ell[nu + 1] - sq_coeff
    a = sig[0]
    return [(part, (b / a - nu) / 2), (-part, (-b / a - nu) / 2)]


def _dedupe(opts):
    out = []
    for o in opts:
        if o not in out:
            out.append(o)
    return out


def riccati_case1(q: RatFunc, ld: Optional[LocalData] = None) -> Case1Result:
    fld = q.field
    ld = ld or local_data(q)
    res = Case1Result([])
    pole_opts = []
    for p in ld.poles:
        try:
            o = _pole_options_case1(q, p, res.notes)
        except LookupError as exc:
            res.complete = False
            res.notes.append(f"case 1 search skipped a pole: {exc}")
            return res
        if o is None:
            return res
        pole_opts.append(_dedupe(o))
    inf = _inf_options_case1(q, ld)
    if inf is None:
        return res
    inf = _dedupe(inf)
    seen: Dict[RatFunc, None] = {}
    for combo in itertools.product(*pole_opts, inf):
        *ps, (inf_part, a_inf) = combo
        d = a_inf
        for p, (_, a) in zip(ld.poles, ps):
            d = d - a * p.degree
        dv = _as_int(d, "Kovacic case 1 degree")
        if dv is None or dv < 0:
            continue
        omega = inf_part
        for _, (part, _) in zip(ld.poles, ps):
            omega = omega + part
        L = DiffOperator(fld, [omega.dx() + omega * omega - q, omega * 2, fld.one])
        Ps = polynomial_solutions(L, dv)
        if len(Ps) >= 2:
            res.family_dim = max(res.family_dim, len(Ps) - 1)
        for P in Ps:
            Pr = P.to_ratfunc()
            u = omega + Pr.dx() / Pr
            if not verify_riccati(u, q):
                raise AssertionError("Kovacic case 1 produced a non-solution")
            seen[u] = None
    res.solutions = sorted(seen, key=lambda u: (len(str(u)), str(u)))
    return res


def riccati_rational_solutions(q: RatFunc) -> List[RatFunc]:
    return riccati_case1(q).solutions


# ---------------------------------------------------------------------------
# case 2
# ---------------------------------------------------------------------------

class QuadElem:
    """a + b*w in K[w]/(w^2 - w2), with the derivation Dx(w) = v*w."""

    __slots__ = ("a", "b", "w2", "v")

    def __init__(self, a: RatFunc, b: RatFunc, w2: RatFunc, v: RatFunc):
        self.a, self.b, self.w2, self.v = a, b, w2, v

    def __add__(self, o: "QuadElem") -> "QuadElem":
        return QuadElem(self.a + o.a, self.b + o.b, self.w2, self.v)

    def __sub__(self, o: "QuadElem") -> "QuadElem":
        return QuadElem(self.a - o.a, self.b - o.b, self.w2, self.v)

    def __mul__(self, o: "QuadElem") -> "QuadElem":
        return QuadElem(self.a * o.a + self.b * o.b * self.w2,
                        self.a * o.b + self.b * o.a, self.w2, self.v)

    def dx(self) -> "QuadElem":
        return QuadElem(self.a.dx(), self.b.dx() + self.b * self.v, self.w2, self.v)

    @property
    def is_zero(self) -> bool:
        return self.a.is_zero and self.b.is_zero


def verify_quadratic(phi: RatFunc, w2: RatFunc, q: RatFunc) -> bool:
    """Check P_q(u) = 0 for u = (phi + w)/2 in K[w]/(w^2 - w2)."""
    fld = q.field
    v = w2.dx() / (w2 * 2)
    half = Fraction(1, 2)
    u = QuadElem(phi * half, fld.const(half), w2, v)
    r = u.dx() + u * u - QuadElem(q, fld.zero, w2, v)
    return r.is_zero


class SplitQuadraticError(ValueError):
    """The degree-2 candidate splits over K: the Riccati equation has rational solutions."""

    def __init__(self, *solutions: RatFunc):
        super().__init__("precondition: the Riccati equation has a rational solution (case I)")
        self.solutions = solutions


@dataclass
class Case2Result:
    w2: RatFunc
    v: RatFunc
    phi: RatFunc


def _e_sets_case2(q: RatFunc, ld: LocalData) -> Tuple[List[List[int]], List[int]]:
    sets = []
    for p in ld.poles:
        if p.order == 1:
            sets.append([4])
        elif p.order == 2:
            sets.append(_shifted(p.b, 2, [0, 2, -2], Fraction(1)))
        else:
            sets.append([p.order])
    o = ld.order_inf
    if o is None or o > 2:
        inf = [0, 2, 4]
    elif o == 2:
        b = laurent_at_infinity(q, 1)[1][0]
        inf = _shifted(b, 2, [0, 2, -2], Fraction(1))
    else:
        inf = [o]
    return sets, inf


def _shifted(b: Optional[RatFunc], base: int, ks: Sequence[int], scale: Fraction) -> List[int]:
    """{base + k*scale*sqrt(1+4b)} intersected with Z."""
    if b is None:
        return [base]
    sq = _sqrt_disc(b)
    if sq is None or not sq.is_rational:
        if sq is not None or not b.is_rational:
            assumptions.note(f"sqrt(1 + 4*({b})) is not rational")
        return [base]
    s = sq.to_fraction()
    out = []
    for k in ks:
        v = base + k * scale * s
        if v.denominator == 1 and int(v) not in out:
            out.append(int(v))
    return out


def riccati_quadratic(q: RatFunc, ld: Optional[LocalData] = None) -> Optional[Case2Result]:
    fld = q.field
    ld = ld or local_data(q)
    if not any(p.order == 2 or (p.order > 2 and p.order % 2) for p in ld.poles):
        return None
    sets, inf = _e_sets_case2(q, ld)
    for combo in itertools.product(*sets, inf):
        *es, e_inf = combo
        tot = e_inf - sum(e * p.degree for e, p in zip(es, ld.poles))
        if tot < 0 or tot % 2:
            continue
        d = tot // 2
        theta = fld.zero
        for e, p in zip(es, ld.poles):
            theta = theta + p.log_part() * Fraction(e, 2)
        t1 = theta.dx()
        L = DiffOperator(fld, [
            t1.dx() + theta * t1 * 3 + theta ** 3 - q * theta * 4 - q.dx() * 2,
            theta * theta * 3 + t1 * 3 - q * 4,
            theta * 3,
            fld.one,
        ])
        Ps = polynomial_solutions(L, d)
        if not Ps:
            continue
        Pr = Ps[0].to_ratfunc()
        phi = theta + Pr.dx() / Pr
        w2 = q * 4 - phi * phi - phi.dx() * 2
        if w2.is_zero:
            continue
        w = sqrt_ratfunc(w2)
        if w is not None:
            raise SplitQuadraticError((phi + w) / 2, (phi - w) / 2)
        if not verify_quadratic(phi, w2, q):
            raise AssertionError("Kovacic case 2 produced a non-solution")
        return Case2Result(w2, w2.dx() / (w2 * 2), phi)
    return None


# ---------------------------------------------------------------------------
# case 3
# ---------------------------------------------------------------------------

@dataclass
class Case3Result:
    n: int
    minpoly: List[RatFunc]  # coefficients of omega^0..omega^n


def riccati_case3(q: RatFunc, ld: Optional[LocalData] = None) -> Optional[Case3Result]:
    fld = q.field
    ld = ld or local_data(q)
    if any(p.order > 2 for p in ld.poles):
        return None
    o = ld.order_inf
    if o is not None and o < 2:
        return None
    b_inf = laurent_at_infinity(q, 1)[1][0] if o == 2 else fld.zero
    S = fld.one
    for p in ld.poles:
        S = S * p.factor.to_ratfunc()
    for n in (4, 6, 12):
        ks = list(range(-n // 2, n // 2 + 1))
        sc = Fraction(12, n)
        sets = []
        for p in ld.poles:
            sets.append([12] if p.order == 1 else _shifted(p.b, 6, ks, sc))
        inf = _shifted(b_inf, 6, ks, sc)
        for combo in itertools.product(*sets, inf):
            *es, e_inf = combo
            tot = Fraction(n, 12) * (e_inf - sum(e * p.degree for e, p in zip(es, ld.poles)))
            if tot < 0 or tot.denominator != 1:
                continue
            d = int(tot)
            theta = fld.zero
            for e, p in zip(es, ld.poles):
                theta = theta + p.log_part() * (Fraction(n, 12) * e)
            found = _case3_solve(q, n, d, theta, S)
            if found is not None:
                return Case3Result(n, found)
    return None


def _case3_chain(q: RatFunc, n: int, P: RatFunc, theta: RatFunc, S: RatFunc) -> List[RatFunc]:
    """[P_{-1}, P_0, ..., P_n] of the Kovacic recursion started at P_n = -P."""
    fld = q.field
    dS = S.dx()
    S2q = S * S * q
    Ps: Dict[int, RatFunc] = {n + 1: fld.zero, n: -P}
    for i in range(n, -1, -1):
        Pi = Ps[i]
        Ps[i - 1] = (-S * Pi.dx() + (dS * (n - i) - S * theta) * Pi
                     - S2q * Ps[i + 1] * ((n - i) * (i + 1)))
    return [Ps[i] for i in range(-1, n + 1)]


def _case3_solve(q, n, d, theta, S) -> Optional[List[RatFunc]]:
    fld = q.field
    X = fld.x
    chains = [_case3_chain(q, n, X ** k, theta, S) for k in range(d + 1)]
    basis = _kernel_polys(fld, [c[0] for c in chains], d)
    if not basis:
        return None
    a = basis[0]
    coeffs = []
    for i in range(n + 1):
        Pi = fld.zero
        for k, ak in enumerate(a.c):
            if not ak.is_zero:
                Pi = Pi + chains[k][i + 1] * ak
        coeffs.append(S ** i * Pi / factorial(n - i))
    return coeffs


def verify_algebraic_riccati(coeffs: Sequence[RatFunc], q: RatFunc) -> bool:
    """Every root of sum c_i w^i satisfies the Riccati equation (computed mod the polynomial)."""
    from ..algebra.upoly import upoly_xgcd

    fld = q.field
    F = UPoly(fld, list(coeffs)).monic()
    Fw = F.diff()
    Fx = UPoly(fld, [c.dx() for c in F.c])
    g, s, _ = upoly_xgcd(Fw, F)
    if g.deg() != 0:
        return False
    # for a root w: w' = -Fx(w)/Fw(w)
    wp = (-(Fx * s)) % F
    W = UPoly.gen(fld)
    r = (wp + W * W - UPoly(fld, [q])) % F
    return r.is_zero


# ---------------------------------------------------------------------------
# isoconstancy
# ---------------------------------------------------------------------------

@dataclass
class IsoconstancyResult:
    directions: List[List[RatFunc]]
    witnesses: List[RatFunc]


def isoconstancy_directions(q: RatFunc) -> IsoconstancyResult:
    """Directions c with a rational f solving f''' - 4 q f' - 2 q' f = -2 sum c_j D_j q."""
    from ..calculus.ratsol import rational_solution_family

    fld = q.field
    m = fld.m
    if m == 0:
        return IsoconstancyResult([], [])
    L = DiffOperator(fld, [-q.dx() * 2, -q * 4, fld.zero, fld.one])
    rhss = [-q.dt(j) * 2 for j in range(1, m + 1)]
    fam = rational_solution_family(L, rhss)
    dirs, wits = [], []
    for s in fam:
        if any(not c.is_zero for c in s.c):
            dirs.append(list(s.c))
            wits.append(s.f)
    return IsoconstancyResult(dirs, wits)
