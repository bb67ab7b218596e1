"""Subgroups of Gm and Ga described by linear differential polynomials.

The group attached to Dx(y) = w y is read off from w: it is finite of order l
when l*w is a logarithmic derivative, and otherwise it is cut out by the
polynomials P with P(D1 w, ..., Dm w) exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Tuple

from .. import assumptions
from ..algebra.field import FunctionField, RatFunc
from ..algebra.linalg import in_row_space, rref
from ..calculus.exactness import exactness_relation_space, is_exact
from ..calculus.lattice import log_derivative_lattice
from .lindiff import LinDiffPoly, Term, apply_lindiff, family_values, term_key, terms_for

DEFAULT_MAX_THETA_ORDER = 3
DEFAULT_FINITE_ORDER_BOUND = 64


@dataclass
class Relation:
    poly: LinDiffPoly
    witness: RatFunc


@dataclass
class MultGroupDesc:
    kind: str  # "finite" | "infinite"
    order: Optional[int] = None
    witness: Optional[RatFunc] = None
    relations: List[Relation] = dc_field(default_factory=list)
    # every relation up to the truncation order, in reduced echelon form
    space: List[LinDiffPoly] = dc_field(default_factory=list)
    dims: List[int] = dc_field(default_factory=list)
    truncation: Optional[int] = None
    field: Optional[FunctionField] = None

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    def within_pm1(self) -> bool:
        return self.is_finite and self.order in (1, 2)

    def same_relations(self, other: "MultGroupDesc") -> bool:
        if self.kind != other.kind:
            return False
        if self.is_finite:
            return self.order == other.order
        return [str(p) for p in self.space] == [str(p) for p in other.space]


@dataclass
class AddGroupDesc:
    kind: str  # "zero" | "full" | "relations" | "unresolved"
    relations: List[LinDiffPoly] = dc_field(default_factory=list)
    facts: List[str] = dc_field(default_factory=list)


def _rows_by_order(field: FunctionField, cols: List[Term], vecs) -> List[LinDiffPoly]:
    """Echelon basis with the highest-order columns first, so each row has a definite order."""
    rcols = list(reversed(cols))
    R, _ = rref([[v[cols.index(c)] for c in rcols] for v in vecs], len(rcols), field.zero)
    return [LinDiffPoly.from_vector(field, rcols, r) for r in R]


def _derived_closure(g: LinDiffPoly, N: int) -> List[LinDiffPoly]:
    out = [g]
    frontier = [g]
    m = g.field.m
    while frontier:
        nxt = []
        for p in frontier:
            if p.order() >= N:
                continue
            for k in range(1, m + 1):
                d = p.derive(k)
                if not d.is_zero:
                    nxt.append(d)
        out.extend(nxt)
        frontier = nxt
    return out


def minimal_generators(space: List[LinDiffPoly], cols: List[Term], N: int) -> List[LinDiffPoly]:
    """Elements of ``space`` not implied by derivatives of earlier ones, lowest order first."""
    if not space:
        return []
    fld = space[0].field
    gens: List[LinDiffPoly] = []
    closure: List[List[RatFunc]] = []
    for p in sorted(space, key=lambda p: (p.order(), term_key(p.leading()))):
        v = p.vector(cols)
        if closure and in_row_space(v, closure, len(cols), fld.zero):
            continue
        g = p.normalized()
        gens.append(g)
        closure.extend(d.vector(cols) for d in _derived_closure(g, N))
        closure = rref(closure, len(cols), fld.zero)[0]
    return gens


def relation_space(values: List[RatFunc], m: int, N: int) -> Tuple[List[Term], List[LinDiffPoly], List[int]]:
    """All P of order <= N with P(values) exact: (columns, echelon basis, dimension per order)."""
    fld = values[0].field
    cols = terms_for(m, N)
    fam = family_values(values, cols)
    ers = exactness_relation_space(fam)
    space = _rows_by_order(fld, cols, ers.basis) if ers.basis else []
    dims = [sum(1 for p in space if p.order() <= k) for k in range(N + 1)]
    return cols, space, dims


def compute_mult_group(w: RatFunc, max_theta_order: int = DEFAULT_MAX_THETA_ORDER,
                       finite_order_bound: int = DEFAULT_FINITE_ORDER_BOUND) -> MultGroupDesc:
    fld = w.field
    lat = log_derivative_lattice([w])
    if lat.generators:
        ell = abs(lat.generators[0][0])
        if ell > finite_order_bound:
            assumptions.note(f"finite order {ell} exceeds finite_order_bound {finite_order_bound}")
        f = lat.witnesses[0]
        if lat.generators[0][0] < 0:
            f = f.inv()
        return MultGroupDesc("finite", order=ell, witness=f, field=fld)
    m = fld.m
    N = max_theta_order
    if m == 0:
        return MultGroupDesc("infinite", truncation=N, field=fld, dims=[0] * (N + 1))
    dw = [w.dt(j) for j in range(1, m + 1)]
    cols, space, dims = relation_space(dw, m, N)
    gens = minimal_generators(space, cols, N)
    rels = []
    for g in gens:
        f = is_exact(apply_lindiff(g, dw))
        if f is None:
            raise AssertionError(f"relation {g} failed verification")
        rels.append(Relation(g, f))
    return MultGroupDesc("infinite", relations=rels, space=space, dims=dims, truncation=N, field=fld)


def is_pi_constant(d: MultGroupDesc) -> bool:
    if d.is_finite:
        return True
    fld = d.field
    m = fld.m
    if m == 0:
        return True
    if not d.space:
        return False
    cols = sorted({t for p in d.space for t in p.terms} | set(terms_for(m, 0)), key=term_key)
    basis = [p.vector(cols) for p in d.space]
    return all(in_row_space(LinDiffPoly.var(fld, j).vector(cols), basis, len(cols), fld.zero)
               for j in range(1, m + 1))
