"""Linear differential operators in the main derivation, sum c_i * Dx^i."""

from __future__ import annotations

from math import comb
from typing import List, Sequence

from .field import FunctionField, RatFunc


class DiffOperator:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: FunctionField, coeffs: Sequence):
        c = [field.coerce(v) for v in coeffs]
        while c and c[-1].is_zero:
            c.pop()
        self.field = field
        self.coeffs = tuple(c)

    @classmethod
    def identity(cls, field: FunctionField) -> "DiffOperator":
        return cls(field, [field.one])

    @classmethod
    def dx(cls, field: FunctionField) -> "DiffOperator":
        return cls(field, [field.zero, field.one])

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> RatFunc:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def __eq__(self, other) -> bool:
        return isinstance(other, DiffOperator) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, o: "DiffOperator") -> "DiffOperator":
        n = max(len(self.coeffs), len(o.coeffs))
        return DiffOperator(self.field, [self.coeff(i) + o.coeff(i) for i in range(n)])

    def __neg__(self) -> "DiffOperator":
        return DiffOperator(self.field, [-c for c in self.coeffs])

    def __sub__(self, o: "DiffOperator") -> "DiffOperator":
        return self + (-o)

    def __mul__(self, o: "DiffOperator") -> "DiffOperator":
        return op_compose(self, o)

    def __repr__(self) -> str:
        return "DiffOperator([" + ", ".join(str(c) for c in self.coeffs) + "])"


def op_compose(L1: DiffOperator, L2: DiffOperator) -> DiffOperator:
    """Coefficients of L1 o L2, via Leibniz: Dx^i b = sum_k C(i,k) b^(k) Dx^(i-k)."""
    fld = L1.field
    if L1.is_zero or L2.is_zero:
        return DiffOperator(fld, [])
    out: List[RatFunc] = [fld.zero] * (L1.order + L2.order + 1)
    top = L1.order
    # derivatives of L2's coefficients up to order top
    ders = []
    for b in L2.coeffs:
        row = [b]
        for _ in range(top):
            row.append(row[-1].dx())
        ders.append(row)
    for i, a in enumerate(L1.coeffs):
        if a.is_zero:
            continue
        for j, row in enumerate(ders):
            for k in range(i + 1):
                bk = row[k]
                if bk.is_zero:
                    continue
                out[i - k + j] = out[i - k + j] + a * bk * comb(i, k)
    return DiffOperator(fld, out)


def op_apply(L: DiffOperator, f: RatFunc) -> RatFunc:
    acc = L.field.zero
    d = f
    for i, c in enumerate(L.coeffs):
        if i:
            d = d.dx()
        if not c.is_zero:
            acc = acc + c * d
    return acc
