"""Linear differential polynomials in Y_1..Y_m (or a single Y) over F0.

A term is a pair ``(theta, j)``: theta is the exponent vector of a monomial in
the parametric derivations and ``j`` the variable index, with ``j = 0`` for
the single-variable marker.  Terms are ordered by total order, then
graded-lexicographically with D1 before D2, then by variable.
"""

from __future__ import annotations

from itertools import product
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from ..algebra.field import FunctionField, RatFunc
from ..algebra.linalg import rref

Theta = Tuple[int, ...]
Term = Tuple[Theta, int]


class ThetaMonomial(tuple):
    """Exponent vector of D1^e1 ... Dm^em."""

    def __new__(cls, exps: Iterable[int]):
        exps = tuple(int(e) for e in exps)
        if any(e < 0 for e in exps):
            raise ValueError("negative exponent")
        return super().__new__(cls, exps)

    @property
    def order(self) -> int:
        return sum(self)

    def key(self):
        return (sum(self), tuple(-e for e in self))

    def render(self) -> str:
        return " ".join(f"D{j}" if e == 1 else f"D{j}^{e}" for j, e in enumerate(self, 1) if e)


def term_key(t: Term):
    theta, j = t
    return (sum(theta), tuple(-e for e in theta), j)


def thetas(m: int, N: int) -> List[Theta]:
    """All theta with |theta| <= N, in term order."""
    out = [th for th in product(range(N + 1), repeat=m) if sum(th) <= N]
    return sorted(out, key=lambda th: (sum(th), tuple(-e for e in th)))


def terms_for(m: int, N: int, single: bool = False) -> List[Term]:
    if single:
        return [(th, 0) for th in thetas(m, N)]
    return sorted(((th, j) for th in thetas(m, N) for j in range(1, m + 1)), key=term_key)


class LinDiffPoly:
    __slots__ = ("field", "terms")

    def __init__(self, field: FunctionField, terms: Optional[Mapping[Term, RatFunc]] = None):
        self.field = field
        clean: Dict[Term, RatFunc] = {}
        for (th, j), c in (terms or {}).items():
            c = field.coerce(c)
            if c.has_x:
                raise ValueError("coefficients must be free of x")
            if not c.is_zero:
                clean[(tuple(th), j)] = c
        self.terms = clean

    @classmethod
    def var(cls, field: FunctionField, j: int, theta: Optional[Sequence[int]] = None) -> "LinDiffPoly":
        theta = tuple(theta) if theta is not None else (0,) * field.m
        return cls(field, {(theta, j): field.one})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def order(self) -> int:
        return max((sum(th) for th, _ in self.terms), default=-1)

    def sorted_terms(self) -> List[Tuple[Term, RatFunc]]:
        return sorted(self.terms.items(), key=lambda kv: term_key(kv[0]))

    def leading(self) -> Optional[Term]:
        return min(self.terms, key=term_key) if self.terms else None

    def normalized(self) -> "LinDiffPoly":
        lt = self.leading()
        if lt is None:
            return self
        return self.scale(self.terms[lt].inv())

    def __add__(self, o: "LinDiffPoly") -> "LinDiffPoly":
        t = dict(self.terms)
        for k, c in o.terms.items():
            t[k] = t[k] + c if k in t else c
        return LinDiffPoly(self.field, t)

    def __neg__(self) -> "LinDiffPoly":
        return LinDiffPoly(self.field, {k: -c for k, c in self.terms.items()})

    def __sub__(self, o: "LinDiffPoly") -> "LinDiffPoly":
        return self + (-o)

    def scale(self, c) -> "LinDiffPoly":
        c = self.field.coerce(c)
        return LinDiffPoly(self.field, {k: v * c for k, v in self.terms.items()})

    def derive(self, k: int) -> "LinDiffPoly":
        """D_k applied to the polynomial (Leibniz on the coefficients)."""
        out: Dict[Term, RatFunc] = {}
        for (th, j), c in self.terms.items():
            dc = c.dt(k)
            if not dc.is_zero:
                out[(th, j)] = out.get((th, j), self.field.zero) + dc
            th2 = list(th)
            th2[k - 1] += 1
            key = (tuple(th2), j)
            out[key] = out.get(key, self.field.zero) + c
        return LinDiffPoly(self.field, out)

    def vector(self, cols: Sequence[Term]) -> List[RatFunc]:
        z = self.field.zero
        return [self.terms.get(t, z) for t in cols]

    @classmethod
    def from_vector(cls, field: FunctionField, cols: Sequence[Term], v: Sequence[RatFunc]) -> "LinDiffPoly":
        return cls(field, {t: c for t, c in zip(cols, v) if not c.is_zero})

    def __eq__(self, o) -> bool:
        return isinstance(o, LinDiffPoly) and self.terms == o.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        return f"LinDiffPoly({self})"

    def __str__(self) -> str:
        return render_lindiff(self)

    def render_applied(self, symbol: str) -> str:
        """The polynomial evaluated at Y_j = Dj(symbol)/symbol (or Y = symbol)."""
        def atom(th, j):
            inner = symbol if j == 0 else f"D{j}({symbol})/{symbol}"
            outer = " ".join(f"d{k}" if e == 1 else f"d{k}^{e}" for k, e in enumerate(th, 1) if e)
            return f"{outer}({inner})" if outer else inner
        return _render_sum(self, atom)


def _render_sum(p: LinDiffPoly, atom) -> str:
    if p.is_zero:
        return "0"
    parts = []
    for (th, j), c in p.sorted_terms():
        a = atom(th, j)
        s = str(c)
        neg = s.startswith("-") and (len(c.num.terms) == 1)
        if neg:
            s = str(-c)
        if s == "1":
            body = a
        else:
            if len(c.num.terms) > 1 and not s.startswith("("):
                s = f"({s})"
            body = f"{s}*{a}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


def render_lindiff(p: LinDiffPoly) -> str:
    def atom(th, j):
        y = "Y" if j == 0 else f"Y{j}"
        prefix = ThetaMonomial(th).render()
        return f"{prefix} {y}" if prefix else y
    return _render_sum(p, atom)


Values = Union[Mapping[int, RatFunc], Sequence[RatFunc]]


def apply_lindiff(p: LinDiffPoly, values: Values) -> RatFunc:
    """sum c * theta(values[j]); a sequence supplies Y_1..Y_m, a mapping any index."""
    if not isinstance(values, Mapping):
        values = {j: v for j, v in enumerate(values, 1)}
    fld = p.field
    acc = fld.zero
    cache: Dict[Term, RatFunc] = {}
    for (th, j), c in p.sorted_terms():
        if j not in values:
            raise KeyError(f"missing value for {'Y' if j == 0 else f'Y{j}'}")
        acc = acc + c * theta_apply(values[j], th, cache, j)
    return acc


def theta_apply(v: RatFunc, th: Theta, cache: Optional[Dict[Term, RatFunc]] = None, tag: int = 0) -> RatFunc:
    """theta(v), memoised in ``cache`` under ``(theta, tag)``."""
    if cache is None:
        cache = {}
    key = (tuple(th), tag)
    if key in cache:
        return cache[key]
    k = next((i for i, e in enumerate(th) if e), None)
    if k is None:
        out = v
    else:
        parent = list(th)
        parent[k] -= 1
        out = theta_apply(v, tuple(parent), cache, tag).dt(k + 1)
    cache[key] = out
    return out


def family_values(values: Values, cols: Sequence[Term]) -> List[RatFunc]:
    if not isinstance(values, Mapping):
        values = {j: v for j, v in enumerate(values, 1)}
    cache: Dict[Term, RatFunc] = {}
    return [theta_apply(values[j], th, cache, j) for th, j in cols]


# ---------------------------------------------------------------------------
# echelon forms of lists of polynomials and pairs
# ---------------------------------------------------------------------------

def canonicalize_polys(polys: Sequence[LinDiffPoly]) -> List[LinDiffPoly]:
    polys = [p for p in polys if not p.is_zero]
    if not polys:
        return []
    fld = polys[0].field
    cols = sorted({t for p in polys for t in p.terms}, key=term_key)
    R, _ = rref([p.vector(cols) for p in polys], len(cols), fld.zero)
    return [LinDiffPoly.from_vector(fld, cols, r) for r in R]


Pair = Tuple[LinDiffPoly, LinDiffPoly]


def pair_columns(pairs: Sequence[Pair]) -> Tuple[List[Term], List[Term]]:
    pc = sorted({t for p, _ in pairs for t in p.terms}, key=term_key)
    qc = sorted({t for _, q in pairs for t in q.terms}, key=term_key)
    return pc, qc


def canonicalize_basis(pairs: Sequence[Pair]) -> List[Pair]:
    """Reduced echelon form of pairs, p-columns first."""
    pairs = [(p, q) for p, q in pairs if not (p.is_zero and q.is_zero)]
    if not pairs:
        return []
    fld = pairs[0][0].field
    pc, qc = pair_columns(pairs)
    n = len(pc)
    rows = [p.vector(pc) + q.vector(qc) for p, q in pairs]
    R, _ = rref(rows, n + len(qc), fld.zero)
    return [(LinDiffPoly.from_vector(fld, pc, r[:n]), LinDiffPoly.from_vector(fld, qc, r[n:])) for r in R]
