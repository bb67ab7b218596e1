"""Sparse multivariate polynomials over the integers.

Monomials are packed into Python ints (see :mod:`ppvgroup._speedups`).
Variable 0 is the most significant exponent field, then variables
``n-1, ..., 1``; the total degree sits above all of them, so integer order
on packed keys is a graded order: total degree first, then variable 0, then
the higher-indexed variables.  In the rational function field the variables
are ``x, t1, ..., tm`` and this puts ``t1 < t2 < ... < tm``.
"""

from __future__ import annotations

from math import gcd as igcd, isqrt
from typing import Dict, Iterable, List, Optional, Tuple

from .._speedups import kernels as _K

BITS = 12
MAX_DEGREE = (1 << (BITS - 1)) - 1
HEU_GCD_TRIES = 6

_RINGS: Dict[int, "PolyRing"] = {}


class PolyRing:
    """Packing layout for polynomials in ``nvars`` variables."""

    __slots__ = ("nvars", "shifts", "units", "total_shift", "total_unit",
                 "mask", "guard", "zero", "one")

    def __new__(cls, nvars: int):
        ring = _RINGS.get(nvars)
        if ring is not None:
            return ring
        ring = object.__new__(cls)
        ring.nvars = nvars
        if nvars == 0:
            shifts: Tuple[int, ...] = ()
        else:
            shifts = (BITS * (nvars - 1),) + tuple(BITS * (j - 1) for j in range(1, nvars))
        ring.shifts = shifts
        ring.total_shift = BITS * nvars
        ring.total_unit = 1 << ring.total_shift
        ring.units = tuple((1 << s) + ring.total_unit for s in shifts)
        ring.mask = (1 << BITS) - 1
        g = 0
        for k in range(nvars + 1):
            g |= 1 << (BITS * k + BITS - 1)
        ring.guard = g
        ring.zero = Poly(ring, {})
        ring.one = Poly(ring, {0: 1})
        _RINGS[nvars] = ring
        return ring

    def __reduce__(self):
        return (PolyRing, (self.nvars,))

    def pack(self, exps: Iterable[int]) -> int:
        exps = tuple(exps)
        if len(exps) != self.nvars:
            raise ValueError("exponent vector has wrong length")
        tot = sum(exps)
        if tot > MAX_DEGREE or min(exps, default=0) < 0:
            raise OverflowError("exponent out of range")
        key = tot << self.total_shift
        for e, s in zip(exps, self.shifts):
            key |= e << s
        return key

    def unpack(self, key: int) -> Tuple[int, ...]:
        m = self.mask
        return tuple((key >> s) & m for s in self.shifts)

    def var_degree(self, key: int, i: int) -> int:
        return (key >> self.shifts[i]) & self.mask

    def total_degree(self, key: int) -> int:
        return key >> self.total_shift

    def const(self, c: int) -> "Poly":
        return Poly(self, {0: c} if c else {})

    def var(self, i: int) -> "Poly":
        return Poly(self, {self.units[i]: 1})

    def from_exps(self, terms: Dict[Tuple[int, ...], int]) -> "Poly":
        out: Dict[int, int] = {}
        for exps, c in terms.items():
            if c:
                k = self.pack(exps)
                out[k] = out.get(k, 0) + c
        return Poly(self, {k: c for k, c in out.items() if c})


class Poly:
    """Immutable sparse polynomial with integer coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Dict[int, int]):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- basic predicates -------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_const(self) -> bool:
        t = self.terms
        return not t or (len(t) == 1 and 0 in t)

    def const_value(self) -> int:
        if not self.is_const:
            raise ValueError("not a constant polynomial")
        return self.terms.get(0, 0)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.terms == other.terms
        if isinstance(other, int):
            return self.terms == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, int):
            return self.ring.const(other)
        raise TypeError(f"cannot combine Poly with {type(other).__name__}")

    def __add__(self, other) -> "Poly":
        o = self._coerce(other)
        return Poly(self.ring, _K.add(self.terms, o.terms))

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        o = self._coerce(other)
        return Poly(self.ring, _K.sub(self.terms, o.terms))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __neg__(self) -> "Poly":
        return Poly(self.ring, {k: -c for k, c in self.terms.items()})

    def __mul__(self, other) -> "Poly":
        if isinstance(other, int):
            return Poly(self.ring, _K.scale(self.terms, other))
        o = self._coerce(other)
        if self.terms and o.terms and self.total_degree() + o.total_degree() > MAX_DEGREE:
            raise OverflowError("polynomial degree exceeds packing limit")
        return Poly(self.ring, _K.mul(self.terms, o.terms))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def try_div(self, other: "Poly") -> Optional["Poly"]:
        """Exact quotient, or ``None`` when ``other`` does not divide ``self``."""
        q = _K.divexact(self.terms, other.terms, self.ring.guard)
        return None if q is None else Poly(self.ring, q)

    def exact_div(self, other: "Poly") -> "Poly":
        q = self.try_div(other)
        if q is None:
            raise ArithmeticError("inexact polynomial division")
        return q

    def div_int(self, c: int) -> "Poly":
        out = {}
        for k, v in self.terms.items():
            q, r = divmod(v, c)
            if r:
                raise ArithmeticError("inexact integer division")
            out[k] = q
        return Poly(self.ring, out)

    # -- structure ------------------------------------------------------------
    def lm(self) -> int:
        return max(self.terms)

    def lc(self) -> int:
        return self.terms[max(self.terms)] if self.terms else 0

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(self.terms) >> self.ring.total_shift

    def degree(self, i: int) -> int:
        if not self.terms:
            return -1
        s, m = self.ring.shifts[i], self.ring.mask
        return max((k >> s) & m for k in self.terms)

    def has_var(self, i: int) -> bool:
        s, m = self.ring.shifts[i], self.ring.mask
        return any((k >> s) & m for k in self.terms)

    def vars_present(self) -> List[int]:
        return [i for i in range(self.ring.nvars) if self.has_var(i)]

    def content(self) -> int:
        """Integer content, signed so that the primitive part has positive lc."""
        g = 0
        for c in self.terms.values():
            g = igcd(g, c)
            if g == 1:
                break
        if self.terms and self.lc() < 0:
            g = -g
        return g

    def primitive(self) -> "Poly":
        if not self.terms:
            return self
        c = self.content()
        return self if c == 1 else self.div_int(c)

    def max_norm(self) -> int:
        return max((abs(c) for c in self.terms.values()), default=0)

    def diff(self, i: int) -> "Poly":
        R = self.ring
        s, m, u = R.shifts[i], R.mask, R.units[i]
        out = {}
        for k, c in self.terms.items():
            e = (k >> s) & m
            if e:
                out[k - u] = c * e
        return Poly(R, out)

    def eval_var(self, i: int, value: int) -> "Poly":
        """Substitute the integer ``value`` for variable ``i``."""
        R = self.ring
        s, m, u = R.shifts[i], R.mask, R.units[i]
        out: Dict[int, int] = {}
        powers = {0: 1}
        for k, c in self.terms.items():
            e = (k >> s) & m
            p = powers.get(e)
            if p is None:
                p = powers[e] = value ** e
            kk = k - e * u
            out[kk] = out.get(kk, 0) + c * p
        return Poly(R, {k: c for k, c in out.items() if c})

    def coeffs_in(self, i: int) -> Dict[int, "Poly"]:
        """Split as ``sum_e c_e * v_i**e``; returns ``{e: c_e}`` with v_i stripped."""
        R = self.ring
        s, m, u = R.shifts[i], R.mask, R.units[i]
        groups: Dict[int, Dict[int, int]] = {}
        for k, c in self.terms.items():
            e = (k >> s) & m
            groups.setdefault(e, {})[k - e * u] = c
        return {e: Poly(R, t) for e, t in groups.items()}

    def shift_var(self, i: int, e: int) -> "Poly":
        """Multiply by ``v_i**e``."""
        if e == 0:
            return self
        du = e * self.ring.units[i]
        return Poly(self.ring, {k + du: c for k, c in self.terms.items()})

    def substitute(self, i: int, value: "Poly") -> "Poly":
        """Replace variable ``i`` by the polynomial ``value``."""
        parts = self.coeffs_in(i)
        if not parts:
            return self.ring.zero
        top = max(parts)
        acc = self.ring.zero
        for e in range(top, -1, -1):
            acc = acc * value
            c = parts.get(e)
            if c is not None:
                acc = acc + c
        return acc

    def items(self):
        """``(exponent tuple, coefficient)`` pairs in decreasing monomial order."""
        R = self.ring
        return [(R.unpack(k), self.terms[k]) for k in sorted(self.terms, reverse=True)]

    def __repr__(self) -> str:
        if not self.terms:
            return "Poly(0)"
        return "Poly(" + " + ".join(f"{c}*{e}" for e, c in self.items()) + ")"


def from_coeffs_in(ring: PolyRing, i: int, coeffs: Dict[int, Poly]) -> Poly:
    acc: Dict[int, int] = {}
    for e, c in coeffs.items():
        if c.terms:
            acc = _K.add(acc, c.shift_var(i, e).terms)
    return Poly(ring, acc)


# ---------------------------------------------------------------------------
# gcd
# ---------------------------------------------------------------------------

def _normalize_sign(p: Poly) -> Poly:
    return -p if p.terms and p.lc() < 0 else p


def gcd(f: Poly, g: Poly) -> Poly:
    """Greatest common divisor in Z[v_0..v_{n-1}], primitive with positive lc.

    A heuristic evaluation gcd runs first; its answer is accepted only after
    exact division checks.  Otherwise the recursive subresultant PRS decides.
    """
    if f.is_zero:
        return _normalize_sign(g)
    if g.is_zero:
        return _normalize_sign(f)
    if f is g or f == g:
        return _normalize_sign(f)
    cf, cg = abs(f.content()), abs(g.content())
    c = igcd(cf, cg)
    if f.is_const or g.is_const:
        return f.ring.const(c)
    f1, g1 = f.div_int(cf), g.div_int(cg)
    fv = f1.vars_present()
    if len(fv) == 1 and fv == g1.vars_present():
        h = _heugcd_dense(f1, g1, fv[0])
    else:
        h = _heugcd(f1, g1)
    if h is None:
        h = prs_gcd(f1, g1)
    h = _normalize_sign(h)
    return h * c if c != 1 else h


def lcm(f: Poly, g: Poly) -> Poly:
    if f.is_zero or g.is_zero:
        return f.ring.zero
    return _normalize_sign(f.exact_div(gcd(f, g)) * g)


def _content_gcd(f: Poly, parts: Iterable[Poly]) -> Poly:
    h = f
    for p in parts:
        h = gcd(h, p)
        if h.is_const and abs(h.const_value()) == 1:
            break
    return h


def _interpolate(h: Poly, xi: int, v: int) -> Poly:
    R = h.ring
    u = R.units[v]
    half = xi // 2
    out: Dict[int, int] = {}
    for key, c in h.terms.items():
        e = 0
        while c:
            r = c % xi
            if r > half:
                r -= xi
            if r:
                out[key + e * u] = r
            c = (c - r) // xi
            e += 1
    return Poly(R, out)


def _int_coeffs(p: Poly, v: int) -> List[int]:
    out = [0] * (p.degree(v) + 1)
    for key, c in p.terms.items():
        out[p.ring.var_degree(key, v)] = c
    return out


def _dense_divides(a: List[int], b: List[int]) -> bool:
    """True when b divides a in Z[v]; both lists are low-order first."""
    a = list(a)
    lb = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1]
        if c:
            q, r = divmod(c, lb)
            if r:
                return False
            for j, bj in enumerate(b):
                a[i + j] -= q * bj
    return not any(a)


def _heugcd_dense(f: Poly, g: Poly, v: int) -> Optional[Poly]:
    """Heuristic gcd of primitive polynomials in the single variable v."""
    a, b = _int_coeffs(f, v), _int_coeffs(g, v)
    if len(a) < len(b):
        a, b = b, a
    fn = max(abs(c) for c in a)
    gn = max(abs(c) for c in b)
    B = 2 * min(fn, gn) + 29
    xi = max(min(B, 99 * isqrt(B)), 2 * min(fn // abs(a[-1]), gn // abs(b[-1])) + 4)
    for _ in range(HEU_GCD_TRIES):
        fa = fb = 0
        for c in reversed(a):
            fa = fa * xi + c
        for c in reversed(b):
            fb = fb * xi + c
        h = igcd(fa, fb)
        if h:
            half = xi // 2
            digits = []
            while h:
                r = h % xi
                if r > half:
                    r -= xi
                digits.append(r)
                h = (h - r) // xi
            while digits and not digits[-1]:
                digits.pop()
            if digits:
                c = 0
                for d in digits:
                    c = igcd(c, d)
                if digits[-1] < 0:
                    c = -c
                digits = [d // c for d in digits]
                if len(digits) <= len(b) and _dense_divides(a, digits) and _dense_divides(b, digits):
                    u = f.ring.units[v]
                    return Poly(f.ring, {e * u: d for e, d in enumerate(digits) if d})
        xi = 73794 * xi * isqrt(isqrt(xi)) // 27011
    return None


def _heugcd(f: Poly, g: Poly, depth: int = 0) -> Optional[Poly]:
    """Heuristic gcd of nonzero polynomials; ``None`` means 'no luck'."""
    R = f.ring
    cf, cg = abs(f.content()), abs(g.content())
    c = igcd(cf, cg)
    if f.is_const or g.is_const:
        return R.const(c)
    f, g = f.div_int(cf), g.div_int(cg)
    fv, gv = set(f.vars_present()), set(g.vars_present())
    common = sorted(fv & gv)
    if not common:
        # no variable shared: the gcd is the integer content only
        return R.const(c)
    v = common[0]
    if fv != gv:
        # a variable absent from one side can only enter through the content
        only_f = fv - gv
        only_g = gv - fv
        if only_f:
            w = min(only_f)
            return _content_gcd(g, f.coeffs_in(w).values()) * c
        w = min(only_g)
        return _content_gcd(f, g.coeffs_in(w).values()) * c
    fn, gn = f.max_norm(), g.max_norm()
    B = 2 * min(fn, gn) + 29
    lf = abs(f.coeffs_in(v)[f.degree(v)].lc())
    lg = abs(g.coeffs_in(v)[g.degree(v)].lc())
    xi = max(min(B, 99 * isqrt(B)), 2 * min(fn // lf, gn // lg) + 4)
    for _ in range(HEU_GCD_TRIES):
        ff, gg = f.eval_var(v, xi), g.eval_var(v, xi)
        if ff.terms and gg.terms:
            h = _heugcd(ff, gg, depth + 1)
            if h is None:
                return None
            H = _interpolate(h, xi, v)
            if H.terms:
                H = H.primitive()
                if f.try_div(H) is not None and g.try_div(H) is not None:
                    return H * c
        xi = 73794 * xi * isqrt(isqrt(xi)) // 27011
    return None


def prem(a: List[Poly], b: List[Poly]) -> List[Poly]:
    """Pseudo-remainder of dense coefficient lists (low to high) over Z[...]."""
    da, db = len(a) - 1, len(b) - 1
    if da < db:
        return a
    r = list(a)
    lb = b[-1]
    e = da - db + 1
    while len(r) - 1 >= db and any(c.terms for c in r):
        dr = len(r) - 1
        lr = r[-1]
        shift = dr - db
        r = [c * lb for c in r]
        for k in range(db + 1):
            r[shift + k] = r[shift + k] - lr * b[k]
        while r and not r[-1].terms:
            r.pop()
        e -= 1
        if not r:
            break
    if e > 0 and r:
        f = lb ** e
        r = [c * f for c in r]
    return r


def _dense(p: Poly, v: int) -> List[Poly]:
    parts = p.coeffs_in(v)
    d = max(parts)
    zero = p.ring.zero
    return [parts.get(e, zero) for e in range(d + 1)]


def _undense(R: PolyRing, v: int, coeffs: List[Poly]) -> Poly:
    return from_coeffs_in(R, v, {e: c for e, c in enumerate(coeffs) if c.terms})


def prs_gcd(f: Poly, g: Poly) -> Poly:
    """gcd via recursive subresultant polynomial remainder sequences."""
    R = f.ring
    if f.is_zero:
        return _normalize_sign(g)
    if g.is_zero:
        return _normalize_sign(f)
    cf, cg = abs(f.content()), abs(g.content())
    c = igcd(cf, cg)
    if f.is_const or g.is_const:
        return R.const(c)
    fv, gv = set(f.vars_present()), set(g.vars_present())
    common = sorted(fv & gv)
    if not common:
        return R.const(c)
    if fv != gv:
        only = sorted((fv | gv) - (fv & gv))
        w = only[0]
        if w in fv:
            parts = list(f.coeffs_in(w).values())
            h = g
        else:
            parts = list(g.coeffs_in(w).values())
            h = f
        for p in parts:
            h = prs_gcd(h, p)
        return _normalize_sign(h)
    v = common[0]
    A = _dense(f, v)
    Bc = _dense(g, v)
    ca = _list_gcd(A)
    cb = _list_gcd(Bc)
    cont = prs_gcd(ca, cb)
    A = [x.exact_div(ca) for x in A]
    Bc = [x.exact_div(cb) for x in Bc]
    if len(A) < len(Bc):
        A, Bc = Bc, A
    S = _subresultant_last(A, Bc)
    pp = _list_gcd(S)
    S = [x.exact_div(pp) for x in S]
    G = _normalize_sign(_undense(R, v, S))
    return _normalize_sign(G * cont)


def _list_gcd(cs: List[Poly]) -> Poly:
    h = cs[0].ring.zero
    for x in cs:
        if x.terms:
            h = prs_gcd(h, x) if h.terms else _normalize_sign(x)
            if h.is_const and abs(h.const_value()) == 1:
                break
    return h


def _subresultant_last(A: List[Poly], B: List[Poly]) -> List[Poly]:
    """Last nonzero member of the subresultant PRS of A, B (deg A >= deg B)."""
    R = A[0].ring
    g = R.one
    h = R.one
    while True:
        d = (len(A) - 1) - (len(B) - 1)
        r = prem(A, B)
        if not r:
            return B
        if len(r) == 1:
            return r
        A, B = B, r
        denom = g * h ** d
        B = [x.exact_div(denom) for x in B]
        g = A[-1]
        if d == 0:
            pass
        elif d == 1:
            h = g
        else:
            h = (g ** d).exact_div(h ** (d - 1))


def sqrt_poly(p: Poly) -> Optional[Poly]:
    """Exact square root with positive leading coefficient, or None."""
    R = p.ring
    if p.is_zero:
        return p
    lm = p.lm()
    lc = p.terms[lm]
    if lc < 0:
        return None
    s0 = isqrt(lc)
    if s0 * s0 != lc:
        return None
    exps = R.unpack(lm)
    if any(e % 2 for e in exps):
        return None
    half = R.pack([e // 2 for e in exps])
    root = {half: s0}
    rem = _K.sub(p.terms, {2 * half: lc})
    guard = R.guard
    two_s0 = 2 * s0
    while rem:
        lr = max(rem)
        d = lr - half
        # each new root term must be a strictly smaller monomial
        if d < 0 or d & guard or d >= half:
            return None
        q, r = divmod(rem[lr], two_s0)
        if r:
            return None
        # new term t = q*m_d; rem -= 2*t*root + t^2
        cross = {k + d: 2 * q * c for k, c in root.items()}
        cross[2 * d] = cross.get(2 * d, 0) + q * q
        rem = _K.sub(rem, cross)
        root[d] = q
    return Poly(R, root)
